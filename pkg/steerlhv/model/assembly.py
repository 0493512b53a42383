"""
Translate a scenario into a linear feasibility system.

Rows, in emission order:

- ``norm[x]``: the masses of state x over its atoms sum to one;
- ``mix[Ek@atomj]``: nu_j equals the ensemble-weighted state masses on atom j
  (full mixture mode), or a single ``norm[nu]`` row (support-only mode);
- ``born[x→a]``: the mass of x on atoms where outcome a is certain, plus
  response masses on free atoms, equals |<a|x>|^2;
- ``resp[x6^(a)]``: a response mass never exceeds the state mass it weights.

Every variable is a nonnegative region mass. For a Werner weight w < 1 each
Born row becomes w * (pure-state row) + (1 - w) * (nu mass where the outcome
is certain) = w |<a|x>|^2 + (1 - w) <a|rho_B|a>.
"""

from __future__ import annotations

import json
from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from .geometry import overlap
from .log import LogComponent, get_logger
from .scenario import AssemblyOptions, ConstraintSet, MixtureMode, Scenario, ScenarioOrigin
from .structure import (
    ResponseStatus,
    StateRef,
    SupportAtom,
    Variable,
    VariableIndex,
    VariableKind,
    born_pairs,
    enumerate_atoms,
    index_variables,
    response_status,
    state_of,
    state_refs,
)

logger = get_logger(LogComponent.ASSEMBLY)


class RowSense(Enum):
    EQ = "eq"
    LE = "le"


@dataclass(frozen=True)
class Row:
    """
    One labeled linear row over variable positions.

    ``prep`` is the label of the preparation state the row constrains, empty
    for rows about the base measure.
    """

    label: str
    coeffs: tuple[tuple[int, float], ...]
    rhs: float
    sense: RowSense = RowSense.EQ
    prep: str = ""

    def value(self, x: np.ndarray) -> float:
        return float(sum(c * x[i] for i, c in self.coeffs))

    def violation(self, x: np.ndarray) -> float:
        lhs = self.value(x)
        if self.sense is RowSense.EQ:
            return abs(lhs - self.rhs)
        return max(0.0, lhs - self.rhs)


@dataclass(frozen=True)
class ConstraintSystem:
    """Rows over nonnegative masses, with the atom table they were built on."""

    variables: VariableIndex
    rows: tuple[Row, ...]
    atoms: tuple[SupportAtom, ...] = ()

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.variables))

    def dense(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(A, b, is_le) with one row of A per system row."""
        m, n = self.shape
        a = np.zeros((m, n))
        for r, row in enumerate(self.rows):
            for i, c in row.coeffs:
                a[r, i] += c
        b = np.array([row.rhs for row in self.rows], dtype=float)
        is_le = np.array([row.sense is RowSense.LE for row in self.rows], dtype=bool)
        return a, b, is_le

    def point(self, values: Mapping[str, float]) -> np.ndarray:
        """A full variable vector from a name->value mapping; missing names are zero."""
        x = np.zeros(len(self.variables))
        for name, value in values.items():
            x[self.variables.position(name)] = value
        return x

    def row(self, label: str) -> Row:
        for row in self.rows:
            if row.label == label:
                return row
        raise KeyError(label)

    def labels(self) -> list[str]:
        return [row.label for row in self.rows]

    def to_dict(self) -> dict[str, Any]:
        names = self.variables.names
        return {
            "vars": names,
            "rows": [
                {
                    "label": row.label,
                    "coeffs": {names[i]: c for i, c in row.coeffs},
                    "rhs": row.rhs,
                    "sense": row.sense.value,
                }
                for row in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


def atom_table(scenario: Scenario, atoms: tuple[SupportAtom, ...] | list[SupportAtom]) -> list[dict[str, Any]]:
    """Human-readable atom listing: atom number and member labels per ensemble."""
    return [
        {
            "atom": j + 1,
            "pattern": [[scenario.ensembles[k].members[i].label for i in members] for k, members in enumerate(atom.pattern)],
        }
        for j, atom in enumerate(atoms)
    ]


def _terms(accumulator: dict[int, float]) -> tuple[tuple[int, float], ...]:
    return tuple((i, c) for i, c in sorted(accumulator.items()) if c != 0.0)


def assemble(scenario: Scenario) -> ConstraintSystem:
    """
    Build the feasibility system for ``scenario`` under its options.

    Ensemble consistency is checked when the Scenario is constructed, which
    raises InconsistentEnsemblesError.
    """
    options = scenario.options
    atoms = enumerate_atoms(scenario, options.orth_eps)
    index = index_variables(scenario, atoms, options)
    pos = index.positions
    refs = state_refs(scenario)
    ref_at = {(ref.ensemble, ref.member): ref for ref in refs}

    def mass(ref: StateRef, j: int) -> int:
        return pos[Variable(VariableKind.STATE_MASS, j, ref).name]

    rows: list[Row] = []
    for ref in refs:
        coeffs = tuple((mass(ref, j), 1.0) for j, atom in enumerate(atoms) if atom.contains(ref))
        rows.append(Row(f"norm[{ref.label}]", coeffs, 1.0, prep=ref.label))

    if options.mixture_mode is MixtureMode.FULL:
        for k, ens in enumerate(scenario.ensembles):
            for j, atom in enumerate(atoms):
                acc: dict[int, float] = defaultdict(float)
                acc[pos[f"nu{j + 1}"]] += 1.0
                for i in atom.pattern[k]:
                    p = ens.members[i].probability
                    if p > 0.0:
                        acc[mass(ref_at[(k, i)], j)] -= p
                rows.append(Row(f"mix[E{k + 1}@atom{j + 1}]", _terms(acc), 0.0))
    else:
        rows.append(Row("norm[nu]", tuple((pos[f"nu{j + 1}"], 1.0) for j in range(len(atoms))), 1.0))

    w = options.werner_w
    rho = scenario.reduced_state
    response_rows: list[Row] = []
    for prep, outcome in born_pairs(scenario, options):
        acc = defaultdict(float)
        for j, atom in enumerate(atoms):
            if options.is_werner and atom.contains(outcome):
                acc[pos[f"nu{j + 1}"]] += 1.0 - w
            if not atom.contains(prep):
                continue
            status = response_status(atom, prep, outcome, scenario, options.orth_eps)
            if status is ResponseStatus.FORCED_ONE:
                acc[mass(prep, j)] += w
            elif status is ResponseStatus.FREE and options.deficiency:
                var = Variable(VariableKind.RESPONSE_MASS, j, prep, outcome)
                acc[pos[var.name]] += w
                response_rows.append(Row(f"resp[{var.name}]", ((pos[var.name], 1.0), (mass(prep, j), -1.0)), 0.0, RowSense.LE, prep=prep.label))

        ov = overlap(state_of(scenario, prep), state_of(scenario, outcome))
        rhs = w * ov + (1.0 - w) * rho.expectation(state_of(scenario, outcome)) if options.is_werner else ov
        terms = _terms(acc)
        if not terms and abs(rhs) < options.orth_eps:
            continue
        rows.append(Row(f"born[{prep.label}→{outcome.label}]", terms, rhs, prep=prep.label))

    rows.extend(response_rows)
    system = ConstraintSystem(index, tuple(rows), tuple(atoms))
    logger.debug(f"Assembled {system.shape[0]} rows over {system.shape[1]} variables ({len(atoms)} atoms, {options.to_dict()})")
    return system


__all__ = [
    "AssemblyOptions",
    "ConstraintSet",
    "ConstraintSystem",
    "MixtureMode",
    "Row",
    "RowSense",
    "Scenario",
    "ScenarioOrigin",
    "assemble",
    "atom_table",
]
