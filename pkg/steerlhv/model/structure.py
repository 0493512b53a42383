"""
Combinatorial skeleton of an incomplete model.

The real-state space is cut into atoms: cells lying in the support of one
chosen subset of members from every ensemble. States with (numerically)
orthogonal quantum states have disjoint supports, so no atom may hold two
such states. Every LP variable is the mass of some distribution on one atom.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum

from .constants import MAX_ORTH_EPS
from .exceptions import InvalidParameterError
from .geometry import PureState, overlap
from .log import LogComponent, get_logger
from .scenario import AssemblyOptions, ConstraintSet, Scenario

logger = get_logger(LogComponent.STRUCTURE)


@dataclass(frozen=True, order=True)
class StateRef:
    """A scenario member: ensemble index, member index and display label."""

    ensemble: int
    member: int
    label: str = field(default="", compare=False)


@dataclass(frozen=True, order=True)
class SupportAtom:
    """One sorted, nonempty tuple of member indices per ensemble."""

    pattern: tuple[tuple[int, ...], ...]

    def contains(self, ref: StateRef) -> bool:
        return ref.member in self.pattern[ref.ensemble]

    def refs(self) -> Iterator[tuple[int, int]]:
        for k, members in enumerate(self.pattern):
            for i in members:
                yield k, i


class ResponseStatus(Enum):
    FORCED_ONE = "forced_one"
    FORCED_ZERO = "forced_zero"
    FREE = "free"


class VariableKind(Enum):
    BASE_MASS = "base_mass"
    STATE_MASS = "state_mass"
    RESPONSE_MASS = "response_mass"


@dataclass(frozen=True)
class Variable:
    """
    A region mass.

    BASE_MASS is nu_j, STATE_MASS is the mass of ``state`` on atom j and
    RESPONSE_MASS is the response-weighted mass of ``state`` on atom j for
    the outcome ``outcome``. ``atom`` is zero-based; names are one-based.
    """

    kind: VariableKind
    atom: int
    state: StateRef | None = None
    outcome: StateRef | None = None

    @property
    def name(self) -> str:
        j = self.atom + 1
        if self.kind is VariableKind.BASE_MASS:
            return f"nu{j}"
        assert self.state is not None
        if self.kind is VariableKind.STATE_MASS:
            return f"{self.state.label}{j}"
        assert self.outcome is not None
        return f"{self.state.label}{j}^({self.outcome.label})"


@dataclass(frozen=True)
class VariableIndex:
    entries: tuple[Variable, ...]
    positions: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        positions = {v.name: i for i, v in enumerate(self.entries)}
        if len(positions) != len(self.entries):
            raise ValueError("Variable names must be unique")
        object.__setattr__(self, "positions", positions)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Variable]:
        return iter(self.entries)

    def __contains__(self, name: object) -> bool:
        return name in self.positions

    def position(self, name: str) -> int:
        return self.positions[name]

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.entries]


def state_refs(scenario: Scenario) -> list[StateRef]:
    """All members in ensemble order."""
    return [StateRef(k, i, m.label) for k, ens in enumerate(scenario.ensembles) for i, m in enumerate(ens.members)]


def state_of(scenario: Scenario, ref: StateRef) -> PureState:
    return scenario.ensembles[ref.ensemble].members[ref.member].state


def _nonempty_subsets(size: int) -> list[tuple[int, ...]]:
    return [combo for r in range(1, size + 1) for combo in itertools.combinations(range(size), r)]


def enumerate_atoms(scenario: Scenario, orth_eps: float | None = None) -> list[SupportAtom]:
    """
    Every per-ensemble choice of nonempty member subsets with no orthogonal
    pair among the chosen states, in lexicographic order of patterns.
    """
    eps = scenario.options.orth_eps if orth_eps is None else orth_eps
    if not (0.0 < eps <= MAX_ORTH_EPS):
        raise InvalidParameterError("orth_eps", eps, f"in (0, {MAX_ORTH_EPS:g}]")
    states = {(k, i): m.state for k, ens in enumerate(scenario.ensembles) for i, m in enumerate(ens.members)}
    keys = sorted(states)
    orthogonal = {
        (a, b) for a, b in itertools.combinations(keys, 2) if overlap(states[a], states[b]) < eps
    }

    atoms = []
    for pattern in itertools.product(*(_nonempty_subsets(len(ens)) for ens in scenario.ensembles)):
        chosen = sorted((k, i) for k, members in enumerate(pattern) for i in members)
        if any(pair in orthogonal for pair in itertools.combinations(chosen, 2)):
            continue
        atoms.append(SupportAtom(pattern))
    atoms.sort()
    logger.debug(f"Enumerated {len(atoms)} atoms over {len(scenario.ensembles)} ensembles")
    return atoms


def response_status(
    atom: SupportAtom,
    prep: StateRef,
    outcome: StateRef,
    scenario: Scenario,
    orth_eps: float | None = None,
) -> ResponseStatus:
    """
    Outcome certainty for real states in ``atom``.

    FORCED_ONE when the outcome state's support contains the atom,
    FORCED_ZERO when the atom lies in the support of a state orthogonal to
    the outcome, FREE otherwise. ``prep`` must be in the atom's pattern.
    """
    if not atom.contains(prep):
        raise ValueError(f"{prep.label or prep} is not in atom pattern {atom.pattern}")
    if atom.contains(outcome):
        return ResponseStatus.FORCED_ONE
    eps = scenario.options.orth_eps if orth_eps is None else orth_eps
    target = state_of(scenario, outcome)
    for k, i in atom.refs():
        if overlap(scenario.ensembles[k].members[i].state, target) < eps:
            return ResponseStatus.FORCED_ZERO
    return ResponseStatus.FREE


def born_pairs(scenario: Scenario, options: AssemblyOptions | None = None) -> list[tuple[StateRef, StateRef]]:
    """
    (preparation, outcome) pairs that receive a Born row.

    Cross-ensemble pairs always; ALL_PAIRS adds distinct, non-orthogonal
    pairs from the same ensemble.
    """
    options = options or scenario.options
    refs = state_refs(scenario)
    pairs = []
    for prep in refs:
        for outcome in refs:
            if outcome.ensemble != prep.ensemble:
                pairs.append((prep, outcome))
            elif (
                options.constraint_set is ConstraintSet.ALL_PAIRS
                and outcome.member != prep.member
                and overlap(state_of(scenario, prep), state_of(scenario, outcome)) >= options.orth_eps
            ):
                pairs.append((prep, outcome))
    return pairs


def index_variables(
    scenario: Scenario,
    atoms: list[SupportAtom],
    options: AssemblyOptions | None = None,
) -> VariableIndex:
    """
    Base masses first, then state masses grouped by state, then response
    masses grouped by (preparation, outcome). Response masses exist only in
    deficiency mode and only on FREE atoms.
    """
    options = options or scenario.options
    entries: list[Variable] = [Variable(VariableKind.BASE_MASS, j) for j in range(len(atoms))]
    for ref in state_refs(scenario):
        entries.extend(Variable(VariableKind.STATE_MASS, j, ref) for j, atom in enumerate(atoms) if atom.contains(ref))
    if options.deficiency:
        for prep, outcome in born_pairs(scenario, options):
            for j, atom in enumerate(atoms):
                if atom.contains(prep) and response_status(atom, prep, outcome, scenario, options.orth_eps) is ResponseStatus.FREE:
                    entries.append(Variable(VariableKind.RESPONSE_MASS, j, prep, outcome))
    return VariableIndex(tuple(entries))


__all__ = [
    "ResponseStatus",
    "StateRef",
    "SupportAtom",
    "Variable",
    "VariableIndex",
    "VariableKind",
    "born_pairs",
    "enumerate_atoms",
    "index_variables",
    "response_status",
    "state_of",
    "state_refs",
]
