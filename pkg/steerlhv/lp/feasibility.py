"""
Feasibility decisions with independently checkable evidence.

``solve_feasibility`` never returns a bare verdict: a feasible report carries
a witness that satisfies every row and bound, an infeasible one carries a
Farkas certificate y with A^T y >= 0, y >= 0 on ``<=`` rows and b.y < 0, so
no nonnegative x can satisfy the system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
from scipy.linalg import null_space

from steerlhv.model.assembly import ConstraintSystem
from steerlhv.model.constants import (
    CERTIFICATE_MARGIN_TOL,
    CERTIFICATE_SIGN_TOL,
    MAX_PIVOTS,
    PIVOT_TOL,
    RESIDUAL_TOL,
)
from steerlhv.model.exceptions import NumericallyAmbiguousError, SolverError
from steerlhv.model.log import LogComponent, get_logger

from .tableau import PhaseOneTableau

logger = get_logger(LogComponent.LP)

PIN_TOL = 1e-9
"""Null-space components below this leave a variable determined by the equalities."""


class FeasibilityStatus(Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class FeasibilityReport:
    """
    Verdict plus evidence. The constructor refuses reports whose evidence
    does not meet the residual or margin tolerance.
    """

    status: FeasibilityStatus
    witness: np.ndarray | None
    certificate: np.ndarray | None
    max_residual: float
    certificate_margin: float
    pivots: int
    variable_names: tuple[str, ...] = field(default=(), repr=False)
    row_labels: tuple[str, ...] = field(default=(), repr=False)

    def __post_init__(self) -> None:
        if self.status is FeasibilityStatus.FEASIBLE:
            if self.witness is None or self.max_residual > RESIDUAL_TOL:
                raise SolverError(f"Feasible report needs a witness with residual <= {RESIDUAL_TOL:g}, got {self.max_residual!r}")
        elif self.certificate is None or self.certificate_margin < CERTIFICATE_MARGIN_TOL:
            raise SolverError(f"Infeasible report needs a certificate with margin >= {CERTIFICATE_MARGIN_TOL:g}, got {self.certificate_margin!r}")

    @property
    def feasible(self) -> bool:
        return self.status is FeasibilityStatus.FEASIBLE

    def witness_values(self) -> dict[str, float]:
        if self.witness is None:
            return {}
        return {name: float(v) for name, v in zip(self.variable_names, self.witness, strict=True)}

    def certificate_rows(self, threshold: float = 1e-12) -> list[dict[str, Any]]:
        """Rows with a non-negligible multiplier, in row order."""
        if self.certificate is None:
            return []
        return [
            {"row": label, "multiplier": float(y)}
            for label, y in zip(self.row_labels, self.certificate, strict=True)
            if abs(y) > threshold
        ]

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "status": self.status.value,
            "max_residual": self.max_residual,
            "certificate_margin": self.certificate_margin,
            "pivots": self.pivots,
        }
        if self.status is FeasibilityStatus.FEASIBLE:
            data["witness"] = self.witness_values()
        else:
            data["certificate"] = self.certificate_rows()
        return data


@dataclass(frozen=True)
class EqualityPins:
    """Least-squares solution of the equality rows and the variables they fix."""

    solution: dict[str, float]
    pinned: dict[str, float]


def verify_witness(system: ConstraintSystem, witness: np.ndarray) -> float:
    """Largest row or bound violation of ``witness``, computed from the rows directly."""
    x = np.asarray(witness, dtype=float)
    worst = max(0.0, float(-x.min())) if x.size else 0.0
    for row in system.rows:
        worst = max(worst, row.violation(x))
    return worst


def verify_certificate(system: ConstraintSystem, certificate: np.ndarray) -> float:
    """
    Contradiction margin of a Farkas certificate, or 0 if it is not one.

    y is scaled to max|y| = 1; it must be nonnegative on ``<=`` rows and give
    A^T y >= 0 (within the sign tolerance). The margin is then -b.y.
    """
    y = np.asarray(certificate, dtype=float)
    if y.shape != (len(system.rows),):
        raise SolverError(f"Certificate has {y.size} entries for {len(system.rows)} rows")
    scale = float(np.max(np.abs(y))) if y.size else 0.0
    if scale == 0.0:
        return 0.0
    y = y / scale
    a, b, is_le = system.dense()
    if np.any(y[is_le] < -CERTIFICATE_SIGN_TOL):
        return 0.0
    if a.size and np.any(a.T @ y < -CERTIFICATE_SIGN_TOL):
        return 0.0
    return max(0.0, float(-(b @ y)))


def solve_feasibility(system: ConstraintSystem, *, max_pivots: int = MAX_PIVOTS) -> FeasibilityReport:
    """
    Decide ``system`` with a phase-1 simplex (Bland's rule).

    Raises:
        NumericallyAmbiguousError: neither the witness residual nor the
            certificate margin reaches its tolerance.
        SolverError: the pivot cap was hit.
    """
    m, n = system.shape
    names = tuple(system.variables.names)
    labels = tuple(system.labels())
    if m == 0:
        return FeasibilityReport(FeasibilityStatus.FEASIBLE, np.zeros(n), None, 0.0, 0.0, 0, names, labels)

    a, b, is_le = system.dense()
    tableau = PhaseOneTableau(a, b, is_le, tol=PIVOT_TOL)
    pivots = tableau.run(max_pivots)

    witness = np.clip(np.array(tableau.primal(), dtype=float), 0.0, None)
    residual = verify_witness(system, witness)
    if residual <= RESIDUAL_TOL:
        logger.debug(f"Feasible after {pivots} pivots, residual {residual:.2e}")
        return FeasibilityReport(FeasibilityStatus.FEASIBLE, witness, None, residual, 0.0, pivots, names, labels)

    y = np.array(tableau.farkas(), dtype=float)
    margin = verify_certificate(system, y)
    if margin > 0.0:
        y = y / np.max(np.abs(y))
    if margin >= CERTIFICATE_MARGIN_TOL:
        logger.debug(f"Infeasible after {pivots} pivots, margin {margin:.3e}")
        return FeasibilityReport(FeasibilityStatus.INFEASIBLE, None, y, residual, margin, pivots, names, labels)

    logger.warning(f"Ambiguous system ({m} rows, {n} vars): residual {residual:.3e}, margin {margin:.3e}")
    raise NumericallyAmbiguousError(residual, margin)


def equality_pins(system: ConstraintSystem) -> EqualityPins:
    """
    Solve the equality rows in the least-squares sense and report variables
    whose value they determine uniquely (zero rows in a null-space basis).
    """
    a, b, is_le = system.dense()
    names = system.variables.names
    eq = ~is_le
    a_eq, b_eq = a[eq], b[eq]
    if a_eq.shape[0] == 0:
        return EqualityPins({name: 0.0 for name in names}, {})
    solution, *_ = np.linalg.lstsq(a_eq, b_eq, rcond=None)
    kernel = null_space(a_eq)
    pinned = {}
    for i, name in enumerate(names):
        if kernel.shape[1] == 0 or float(np.max(np.abs(kernel[i]))) < PIN_TOL:
            pinned[name] = float(solution[i])
    return EqualityPins({name: float(v) for name, v in zip(names, solution, strict=True)}, pinned)


__all__ = [
    "EqualityPins",
    "FeasibilityReport",
    "FeasibilityStatus",
    "equality_pins",
    "solve_feasibility",
    "verify_certificate",
    "verify_witness",
]
