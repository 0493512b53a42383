"""
Low-dimensional hand-derived systems for the canned scenarios.

These are the short systems one derives by hand: a single preparation
side for the eigen-ensemble scenarios, and region masses z_r, Z_r over the
four x/y regions for three orthogonal ensembles. The projection of any
feasible point of the full system satisfies them, so an infeasible marginal
system proves the full one infeasible.
"""

from __future__ import annotations

from .assembly import ConstraintSystem, Row, assemble
from .exceptions import UnsupportedScenarioError
from .geometry import overlap
from .log import LogComponent, get_logger
from .scenario import Scenario
from .structure import StateRef, SupportAtom, Variable, VariableIndex, VariableKind

logger = get_logger(LogComponent.ASSEMBLY)

SIDE_BUILDERS = {"nonorthogonal_pair": ((0, 1),), "gpr": ((0, 0), (0, 1))}
"""Builders whose marginal system is the rows of some preparations: (ensemble, member) pairs."""

REGION_BUILDERS = frozenset({"three_orthogonal", "bisecting"})


def _builder(scenario: Scenario) -> str:
    if scenario.origin is None:
        raise UnsupportedScenarioError("Marginal systems exist only for canned scenarios")
    if scenario.options.is_werner:
        raise UnsupportedScenarioError(f"No marginal system for Werner weight w={scenario.options.werner_w:g}")
    return scenario.origin.builder


def _side_system(full: ConstraintSystem, preps: set[str]) -> ConstraintSystem:
    rows = [row for row in full.rows if row.prep in preps]
    used = sorted({i for row in rows for i, _ in row.coeffs})
    remap = {old: new for new, old in enumerate(used)}
    variables = VariableIndex(tuple(full.variables.entries[i] for i in used))
    remapped = tuple(
        Row(row.label, tuple((remap[i], c) for i, c in row.coeffs), row.rhs, row.sense, row.prep) for row in rows
    )
    return ConstraintSystem(variables, remapped, full.atoms)


def _region_system(scenario: Scenario) -> ConstraintSystem:
    if len(scenario.ensembles) != 3 or any(len(ens) != 2 for ens in scenario.ensembles):
        raise UnsupportedScenarioError("Region system needs three two-member ensembles")
    first, second, third = scenario.ensembles
    regions = [(a, b) for a in range(2) for b in range(2)]
    refs = [StateRef(2, c, third.members[c].label) for c in range(2)]
    entries = tuple(Variable(VariableKind.STATE_MASS, r, ref) for ref in refs for r in range(len(regions)))
    index = VariableIndex(entries)
    pos = index.positions

    def var(ref: StateRef, r: int) -> int:
        return pos[Variable(VariableKind.STATE_MASS, r, ref).name]

    rows: list[Row] = []
    for ref in refs:
        state = third.members[ref.member].state
        for k, ens in ((0, first), (1, second)):
            for i, outcome in enumerate(ens.members):
                coeffs = tuple((var(ref, r), 1.0) for r, region in enumerate(regions) if region[k] == i)
                rows.append(Row(f"born[{ref.label}→{outcome.label}]", coeffs, overlap(state, outcome.state), prep=ref.label))
    low, high = refs
    for r, (a, b) in enumerate(regions):
        pinned = overlap(first.members[a].state, second.members[b].state)
        rows.append(Row(f"mix[{low.label}|{high.label}@region{r + 1}]", ((var(low, r), 1.0), (var(high, r), 1.0)), pinned))
    atoms = tuple(SupportAtom(((a,), (b,))) for a, b in regions)
    return ConstraintSystem(index, tuple(rows), atoms)


def marginal_system(scenario: Scenario) -> ConstraintSystem:
    """
    The hand-derived system for a canned scenario.

    two_orthogonal: the full system. nonorthogonal_pair: the X-side rows.
    gpr: the x-side and X-side rows. three_orthogonal: region masses with
    eight Born rows and z_r + Z_r = 2 nu_r, nu_r pinned by the x/y overlaps.

    Raises:
        UnsupportedScenarioError: custom scenarios and Werner weights below 1.
    """
    builder = _builder(scenario)
    if builder == "two_orthogonal":
        return assemble(scenario)
    if builder in SIDE_BUILDERS:
        preps = {scenario.ensembles[k].members[i].label for k, i in SIDE_BUILDERS[builder]}
        system = _side_system(assemble(scenario), preps)
        logger.debug(f"Marginal system for {builder}: {system.shape[0]} rows on {sorted(preps)}")
        return system
    if builder in REGION_BUILDERS:
        return _region_system(scenario)
    raise UnsupportedScenarioError(f"No marginal system for builder '{builder}'")


def marginal_projection(scenario: Scenario) -> dict[str, list[str]]:
    """Marginal variable name -> the full-system variable names it sums."""
    builder = _builder(scenario)
    marginal = marginal_system(scenario)
    if builder not in REGION_BUILDERS:
        return {name: [name] for name in marginal.variables.names}
    full = assemble(scenario)
    atom_number = {atom.pattern: j for j, atom in enumerate(full.atoms)}
    projection = {}
    for variable in marginal.variables:
        assert variable.state is not None
        a, b = marginal.atoms[variable.atom].pattern
        j = atom_number[(a, b, (variable.state.member,))]
        projection[variable.name] = [Variable(VariableKind.STATE_MASS, j, variable.state).name]
    return projection


def project_point(scenario: Scenario, values: dict[str, float]) -> dict[str, float]:
    """Sum a full-system assignment onto the marginal variables."""
    return {name: sum(values.get(part, 0.0) for part in parts) for name, parts in marginal_projection(scenario).items()}


__all__ = ["marginal_projection", "marginal_system", "project_point"]
