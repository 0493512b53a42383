"""
Dense phase-1 simplex tableau with Bland's smallest-index rule.

The same code runs on float arrays (with a zero tolerance) and on object
arrays of ``fractions.Fraction`` (tolerance 0, exact).

Layout for rows ``A x (= or <=) b, x >= 0`` after flipping rows with b < 0::

    [ D A | D S | I | D b ]     one row per constraint
    [  r  |  r  | r | -f  ]     reduced phase-1 costs, f = sum of artificials

S holds one slack column per ``<=`` row and D is the diagonal of row signs.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from steerlhv.model.exceptions import SolverError


class PhaseOneTableau:
    """
    Phase-1 tableau for ``min sum(a)`` s.t. ``D(A x + S s) + a = D b``.

    Args:
        a: Constraint matrix (m x n), float or Fraction entries.
        b: Right-hand side (m,).
        is_le: Boolean mask of ``<=`` rows.
        tol: Entries and reduced costs within ``tol`` of zero count as zero.
        one: Unit of the arithmetic (``1.0`` or ``Fraction(1)``).
    """

    def __init__(self, a: np.ndarray, b: np.ndarray, is_le: np.ndarray, tol: float = 0.0, one: Any = 1.0) -> None:
        m, n = a.shape
        self.m = m
        self.n = n
        self.tol = tol
        self.one = one
        self.le_rows = [i for i in range(m) if is_le[i]]
        self.signs = [(-1 if b[i] < 0 else 1) for i in range(m)]
        s = len(self.le_rows)
        self.n_slack = s
        self.art_start = n + s
        width = n + s + m + 1
        zero = one - one
        self.zero = zero
        dtype = float if isinstance(one, float) else object

        t = np.full((m + 1, width), zero, dtype=dtype)
        for i in range(m):
            d = self.signs[i]
            for j in range(n):
                t[i, j] = d * a[i, j]
            t[i, -1] = d * b[i]
            t[i, self.art_start + i] = one
        for col, i in enumerate(self.le_rows):
            t[i, n + col] = self.signs[i] * one
        for j in range(width):
            if self.art_start <= j < self.art_start + m:
                continue
            t[m, j] = -sum((t[i, j] for i in range(m)), zero)
        self.t = t
        self.basis = [self.art_start + i for i in range(m)]
        self.pivots = 0

    def _entering(self) -> int | None:
        costs = self.t[self.m, :-1]
        for j in range(costs.shape[0]):
            if costs[j] < -self.tol:
                return j
        return None

    def _leaving(self, col: int) -> int | None:
        best: int | None = None
        best_ratio: Any = None
        for i in range(self.m):
            entry = self.t[i, col]
            if entry <= self.tol:
                continue
            ratio = self.t[i, -1] / entry
            if best is None or ratio < best_ratio - self.tol:
                best, best_ratio = i, ratio
            elif ratio <= best_ratio + self.tol and self.basis[i] < self.basis[best]:
                best, best_ratio = i, min(ratio, best_ratio)
        return best

    def _pivot(self, row: int, col: int) -> None:
        t = self.t
        t[row, :] = t[row, :] / t[row, col]
        for i in range(self.m + 1):
            if i != row and t[i, col] != 0:
                t[i, :] = t[i, :] - t[i, col] * t[row, :]
        self.basis[row] = col
        self.pivots += 1

    def run(self, max_pivots: int) -> int:
        """Pivot to phase-1 optimality; returns the number of pivots taken."""
        while True:
            col = self._entering()
            if col is None:
                return self.pivots
            row = self._leaving(col)
            if row is None:
                raise SolverError(f"Phase-1 objective unbounded at column {col}; tableau is corrupt")
            self._pivot(row, col)
            if self.pivots >= max_pivots:
                raise SolverError(f"Simplex did not terminate within {max_pivots} pivots")

    @property
    def objective(self) -> Any:
        """Sum of artificial variables at the current basis."""
        return -self.t[self.m, -1]

    def primal(self) -> list[Any]:
        """Values of the original variables at the current basis."""
        x = [self.zero] * self.n
        for i, col in enumerate(self.basis):
            if col < self.n:
                x[col] = self.t[i, -1]
        return x

    def farkas(self) -> list[Any]:
        """
        Row multipliers y with A^T y >= 0, y >= 0 on ``<=`` rows and
        b.y = -objective, read from the artificial reduced costs.
        """
        return [-self.signs[i] * (self.one - self.t[self.m, self.art_start + i]) for i in range(self.m)]


__all__ = ["PhaseOneTableau"]
