"""Nonlocality sweep over the Schmidt weight of entangled pure states."""

from __future__ import annotations

from collections.abc import Iterable
from typing import NamedTuple

from steerlhv.model.builders import bisecting_triple, gpr, three_orthogonal
from steerlhv.model.exceptions import InvalidParameterError
from steerlhv.model.log import LogComponent, get_logger

from .scan import lp_status

logger = get_logger(LogComponent.ANALYSIS)

MAXIMALLY_ENTANGLED_Q = 0.5
FALLBACK_ALPHA = 0.25
"""Overlap of the bisecting three-ensemble construction used where the two-ensemble one is feasible."""


class GprPoint(NamedTuple):
    q: float
    status: str
    construction: str


def gpr_sweep(q_values: Iterable[float], fallback: bool = False) -> list[GprPoint]:
    """
    Run the two-ensemble construction for every Schmidt weight ``q``.

    At q = 1/2 the members a, b are orthogonal and the construction is
    feasible; with ``fallback`` that point is decided by the bisecting
    three-ensemble construction instead.
    """
    points = []
    for q in q_values:
        if not (0.0 < q < 1.0):
            raise InvalidParameterError("q", q, "in (0, 1)")
        status, _ = lp_status(gpr(q))
        construction = "gpr"
        if fallback and status == "feasible" and abs(q - MAXIMALLY_ENTANGLED_Q) < 1e-12:
            status, _ = lp_status(three_orthogonal(bisecting_triple(FALLBACK_ALPHA)))
            construction = "bisecting"
        logger.debug(f"q={q:g}: {status} ({construction})")
        points.append(GprPoint(float(q), status, construction))
    return points


__all__ = ["GprPoint", "gpr_sweep"]
