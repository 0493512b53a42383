"""Exact rational re-solve of a constraint system with ``fractions.Fraction``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from steerlhv.model.assembly import ConstraintSystem, RowSense
from steerlhv.model.constants import EXACT_MAX_DENOMINATOR, MAX_PIVOTS
from steerlhv.model.log import LogComponent, get_logger

from .feasibility import FeasibilityStatus
from .tableau import PhaseOneTableau

logger = get_logger(LogComponent.LP)


def rationalize(value: float | int | Fraction, max_denominator: int = EXACT_MAX_DENOMINATOR) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(value).limit_denominator(max_denominator)


def rational_dense(system: ConstraintSystem, max_denominator: int = EXACT_MAX_DENOMINATOR) -> tuple[np.ndarray, list[Fraction], list[bool]]:
    """(A, b, is_le) with Fraction entries."""
    m, n = system.shape
    a = np.full((m, n), Fraction(0), dtype=object)
    for r, row in enumerate(system.rows):
        for i, c in row.coeffs:
            a[r, i] = a[r, i] + rationalize(c, max_denominator)
    b = [rationalize(row.rhs, max_denominator) for row in system.rows]
    is_le = [row.sense is RowSense.LE for row in system.rows]
    return a, b, is_le


@dataclass(frozen=True)
class ExactResult:
    """Exact verdict with a rational witness or a rational Farkas certificate."""

    status: FeasibilityStatus
    witness: tuple[Fraction, ...] | None
    certificate: tuple[Fraction, ...] | None
    pivots: int

    @property
    def feasible(self) -> bool:
        return self.status is FeasibilityStatus.FEASIBLE

    def check(self, a: np.ndarray, b: list[Fraction], is_le: list[bool]) -> bool:
        """Re-verify the evidence exactly against the rational system."""
        m, n = a.shape
        if self.feasible:
            assert self.witness is not None
            x = self.witness
            if any(v < 0 for v in x):
                return False
            for r in range(m):
                lhs = sum((a[r, j] * x[j] for j in range(n)), Fraction(0))
                if (lhs > b[r]) if is_le[r] else (lhs != b[r]):
                    return False
            return True
        assert self.certificate is not None
        y = self.certificate
        if any(is_le[r] and y[r] < 0 for r in range(m)):
            return False
        if any(sum((a[r, j] * y[r] for r in range(m)), Fraction(0)) < 0 for j in range(n)):
            return False
        return sum((b[r] * y[r] for r in range(m)), Fraction(0)) < 0

    def to_dict(self) -> dict[str, Any]:
        evidence = self.witness if self.feasible else self.certificate
        return {
            "status": self.status.value,
            "pivots": self.pivots,
            "witness" if self.feasible else "certificate": [str(v) for v in evidence or ()],
        }


def solve_exact(system: ConstraintSystem, max_denominator: int = EXACT_MAX_DENOMINATOR, *, max_pivots: int = MAX_PIVOTS) -> ExactResult:
    """Run the phase-1 simplex in exact rational arithmetic."""
    a, b, is_le = rational_dense(system, max_denominator)
    return solve_exact_dense(a, b, is_le, max_pivots=max_pivots)


def solve_exact_dense(a: np.ndarray, b: list[Fraction], is_le: list[bool], *, max_pivots: int = MAX_PIVOTS) -> ExactResult:
    m, n = a.shape
    if m == 0:
        return ExactResult(FeasibilityStatus.FEASIBLE, tuple(Fraction(0) for _ in range(n)), None, 0)
    tableau = PhaseOneTableau(a, np.array(b, dtype=object), np.array(is_le, dtype=bool), tol=0, one=Fraction(1))
    pivots = tableau.run(max_pivots)
    if tableau.objective == 0:
        logger.debug(f"Exact solve: feasible after {pivots} pivots")
        return ExactResult(FeasibilityStatus.FEASIBLE, tuple(tableau.primal()), None, pivots)
    logger.debug(f"Exact solve: infeasible after {pivots} pivots (phase-1 optimum {tableau.objective})")
    return ExactResult(FeasibilityStatus.INFEASIBLE, None, tuple(tableau.farkas()), pivots)


__all__ = ["ExactResult", "rational_dense", "rationalize", "solve_exact", "solve_exact_dense"]
