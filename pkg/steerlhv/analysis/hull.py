"""Membership of overlap triples in the tetrahedron conv{(1,0,0), (0,1,0), (0,0,1), (1,1,1)}."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from steerlhv.model.constants import DEFAULT_HULL_MARGIN
from steerlhv.model.exceptions import InvalidParameterError
from steerlhv.model.geometry import OverlapTriple

VERTICES = ((1.0, 1.0, 1.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
"""Tetrahedron vertices in the order of the barycentric weights."""


class HullVerdict(Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class HullMembership:
    verdict: HullVerdict
    weights: tuple[float, float, float, float]

    @property
    def min_weight(self) -> float:
        return min(self.weights)


def barycentric_weights(t: OverlapTriple) -> tuple[float, float, float, float]:
    """Unique affine weights on VERTICES: (lam, alpha-lam, beta-lam, gamma-lam), lam=(alpha+beta+gamma-1)/2."""
    alpha, beta, gamma = t.as_tuple()
    lam = (alpha + beta + gamma - 1.0) / 2.0
    return (lam, alpha - lam, beta - lam, gamma - lam)


def hull_membership(t: OverlapTriple, margin: float = DEFAULT_HULL_MARGIN) -> HullMembership:
    """OUTSIDE below -margin, BOUNDARY within the margin band (margin > 0), INSIDE otherwise."""
    if margin < 0.0:
        raise InvalidParameterError("margin", margin, "nonnegative")
    weights = barycentric_weights(t)
    low = min(weights)
    if low < -margin:
        verdict = HullVerdict.OUTSIDE
    elif margin > 0.0 and low <= margin:
        verdict = HullVerdict.BOUNDARY
    else:
        verdict = HullVerdict.INSIDE
    return HullMembership(verdict, weights)


__all__ = ["VERTICES", "HullMembership", "HullVerdict", "barycentric_weights", "hull_membership"]
