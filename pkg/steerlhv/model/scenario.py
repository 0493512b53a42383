"""Steering scenarios: ensembles of one reduced state plus assembly options."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .constants import AVERAGE_MATCH_TOL, DEFAULT_ORTH_EPS, MAX_ORTH_EPS
from .exceptions import InconsistentEnsemblesError, InvalidParameterError, InvalidStateError
from .geometry import EnsembleMember, MixedState, WeightedEnsemble, ensemble_average


class MixtureMode(Enum):
    """Whether mixture equalities tie the state masses to the base measure."""

    FULL = "full"
    SUPPORT_ONLY = "support_only"


class ConstraintSet(Enum):
    """Which (preparation, outcome) pairs receive a Born row."""

    STRICT = "paper_strict"
    ALL_PAIRS = "all_pairs"


@dataclass(frozen=True)
class AssemblyOptions:
    deficiency: bool = False
    mixture_mode: MixtureMode = MixtureMode.FULL
    constraint_set: ConstraintSet = ConstraintSet.STRICT
    werner_w: float = 1.0
    orth_eps: float = DEFAULT_ORTH_EPS

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "mixture_mode", MixtureMode(self.mixture_mode))
        except ValueError as e:
            raise InvalidParameterError("mixture_mode", self.mixture_mode, "'full' or 'support_only'", original_error=e) from e
        try:
            object.__setattr__(self, "constraint_set", ConstraintSet(self.constraint_set))
        except ValueError as e:
            raise InvalidParameterError("constraint_set", self.constraint_set, "'paper_strict' or 'all_pairs'", original_error=e) from e
        if not isinstance(self.deficiency, bool):
            raise InvalidParameterError("deficiency", self.deficiency, "a boolean")
        try:
            w = float(self.werner_w)
        except (TypeError, ValueError) as e:
            raise InvalidParameterError("werner_w", self.werner_w, "a number in [0, 1]", original_error=e) from e
        if not (0.0 <= w <= 1.0):
            raise InvalidParameterError("werner_w", self.werner_w, "in [0, 1]")
        object.__setattr__(self, "werner_w", w)
        if not (0.0 < self.orth_eps <= MAX_ORTH_EPS):
            raise InvalidParameterError("orth_eps", self.orth_eps, f"in (0, {MAX_ORTH_EPS:g}]")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> AssemblyOptions:
        unknown = set(data) - {"deficiency", "mixture_mode", "constraint_set", "werner_w", "orth_eps"}
        if unknown:
            raise InvalidParameterError("options", sorted(unknown), "known option names")
        return cls(**data)

    def to_dict(self) -> dict[str, Any]:
        return {
            "deficiency": self.deficiency,
            "mixture_mode": self.mixture_mode.value,
            "constraint_set": self.constraint_set.value,
            "werner_w": self.werner_w,
        }

    @property
    def is_werner(self) -> bool:
        return self.werner_w < 1.0


@dataclass(frozen=True)
class ScenarioOrigin:
    """Which canned builder produced a scenario, and with what parameters."""

    builder: str
    params: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Scenario:
    """
    Several ensembles decomposing one reduced state of B.

    Members without a label get ``s{ensemble}{letter}`` (``s1a``, ``s1b``, ...);
    labels are unique across the scenario.
    """

    ensembles: tuple[WeightedEnsemble, ...]
    options: AssemblyOptions = field(default_factory=AssemblyOptions)
    origin: ScenarioOrigin | None = None

    def __post_init__(self) -> None:
        ensembles = tuple(self.ensembles)
        if not ensembles:
            raise InvalidStateError("Scenario needs at least one ensemble")
        labelled = []
        for k, ens in enumerate(ensembles):
            members = tuple(
                EnsembleMember(m.probability, m.state, m.label or f"s{k + 1}{chr(ord('a') + i)}")
                for i, m in enumerate(ens.members)
            )
            labelled.append(WeightedEnsemble(members))
        object.__setattr__(self, "ensembles", tuple(labelled))

        labels = [m.label for ens in self.ensembles for m in ens.members]
        duplicates = sorted({lbl for lbl in labels if labels.count(lbl) > 1})
        if duplicates:
            raise InvalidStateError(f"State labels must be unique, duplicated: {', '.join(duplicates)}")

        averages = [ensemble_average(ens) for ens in self.ensembles]
        for first, second in itertools.combinations(range(len(averages)), 2):
            deviation = averages[first].max_deviation(averages[second])
            if deviation > AVERAGE_MATCH_TOL:
                raise InconsistentEnsemblesError(first, second, deviation)

    @property
    def reduced_state(self) -> MixedState:
        return ensemble_average(self.ensembles[0])

    def with_options(self, **changes: Any) -> Scenario:
        """Copy with some assembly options replaced."""
        current = self.options.to_dict() | {"orth_eps": self.options.orth_eps}
        return Scenario(self.ensembles, AssemblyOptions(**(current | changes)), self.origin)

    def to_dict(self) -> dict[str, Any]:
        return {
            "ensembles": [
                [{"p": m.probability, "state": m.state.to_dict(), "label": m.label} for m in ens.members]
                for ens in self.ensembles
            ],
            "options": self.options.to_dict(),
        }


__all__ = [
    "AssemblyOptions",
    "ConstraintSet",
    "MixtureMode",
    "Scenario",
    "ScenarioOrigin",
]
