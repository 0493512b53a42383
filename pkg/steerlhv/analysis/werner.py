"""
Werner-weight threshold search.

For every basis configuration of a family the feasibility of the noisy
system is probed on a coarse grid of weights, then bisected between the
last feasible and the first infeasible weight. The reported threshold is
the smallest infeasible upper bracket over all configurations.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from steerlhv.model.builders import werner
from steerlhv.model.constants import MIN_WERNER_TOL, REFERENCE_WERNER_THRESHOLDS, WERNER_COARSE_GRID
from steerlhv.model.exceptions import InvalidParameterError, MonotonicityViolationError, NoiseInfeasibleError, NoViolationFoundError
from steerlhv.model.log import LogComponent, get_logger

from .families import WernerConfig, WernerFamilies, load_families
from .scan import AMBIGUOUS, lp_status

logger = get_logger(LogComponent.ANALYSIS)

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
DIVERGENCE_TOL = 1e-2
"""Computed thresholds further than this from the reference are flagged."""

Trace = list[tuple[float, str]]


@dataclass(frozen=True)
class Bracket:
    """Last feasible weight ``lo`` and first infeasible weight ``hi`` seen for one configuration."""

    lo: float
    hi: float | None
    pruned: bool = False


@dataclass
class WernerResult:
    k: int
    threshold: float
    config: WernerConfig
    tol: float
    traces: dict[str, Trace] = field(default_factory=dict, repr=False)
    brackets: dict[str, Bracket] = field(default_factory=dict, repr=False)

    @property
    def reference_value(self) -> float:
        return REFERENCE_WERNER_THRESHOLDS[self.k]

    @property
    def formulation_divergent(self) -> bool:
        return abs(self.threshold - self.reference_value) > DIVERGENCE_TOL

    def to_dict(self) -> dict[str, Any]:
        return {
            "ensembles": self.k,
            "threshold": self.threshold,
            "config": self.config.to_dict(),
            "tol": self.tol,
            "reference_value": self.reference_value,
            "formulation_divergent": self.formulation_divergent,
            "configurations": len(self.traces),
            "violating": sorted(name for name, b in self.brackets.items() if b.hi is not None),
        }


def probe(config: WernerConfig, w: float) -> str:
    """Feasibility status of the Werner system for one configuration and weight."""
    status, _ = lp_status(werner(w, config.bases))
    return status


def check_monotone(config: WernerConfig, trace: Trace) -> None:
    """Raise if a decided-feasible weight lies above a decided-infeasible one; ambiguous probes are ignored."""
    decided = sorted((w, s) for w, s in trace if s != AMBIGUOUS)
    first_infeasible = next((w for w, s in decided if s == INFEASIBLE), None)
    if first_infeasible is None:
        return
    if any(s == FEASIBLE and w > first_infeasible for w, s in decided):
        raise MonotonicityViolationError(config.name, sorted(trace))


def _search(
    config: WernerConfig,
    tol: float,
    best: float | None,
    on_probe: Callable[[WernerConfig, float, str], None] | None,
) -> tuple[Trace, Bracket]:
    trace: Trace = []

    def run(w: float) -> str:
        status = probe(config, w)
        trace.append((w, status))
        if on_probe:
            on_probe(config, w, status)
        return status

    statuses = [run(w) for w in WERNER_COARSE_GRID]
    if statuses[0] != FEASIBLE:
        raise NoiseInfeasibleError(config.name, statuses[0])
    check_monotone(config, trace)
    # ambiguous counts as infeasible for bracketing
    hits = [i for i, s in enumerate(statuses) if s != FEASIBLE]
    if not hits or statuses[-1] == FEASIBLE:
        return trace, Bracket(lo=WERNER_COARSE_GRID[-1], hi=None)
    i = hits[0]
    lo, hi = WERNER_COARSE_GRID[i - 1], WERNER_COARSE_GRID[i]
    while hi - lo > tol:
        if best is not None and lo >= best:
            check_monotone(config, trace)
            return trace, Bracket(lo, hi, pruned=True)
        mid = (lo + hi) / 2.0
        if run(mid) == FEASIBLE:
            lo = mid
        else:
            hi = mid
    check_monotone(config, trace)
    return trace, Bracket(lo, hi)


def werner_threshold(
    k: int,
    families: WernerFamilies | None = None,
    tol: float = 1e-3,
    on_probe: Callable[[WernerConfig, float, str], None] | None = None,
) -> WernerResult:
    """
    Smallest Werner weight at which some configuration of ``k`` ensembles
    admits no local-hidden-variable description, within ``tol``.

    Raises:
        InvalidParameterError: ``k`` not 3 or 4, or ``tol`` outside [1e-4, 1).
        MonotonicityViolationError: a configuration became feasible again above an infeasible weight.
        NoiseInfeasibleError: a configuration is not feasible at w = 0.
        NoViolationFoundError: no configuration is infeasible at w = 1.
    """
    if k not in REFERENCE_WERNER_THRESHOLDS:
        raise InvalidParameterError("ensembles", k, "3 or 4")
    if not (MIN_WERNER_TOL <= tol < 1.0):
        raise InvalidParameterError("tol", tol, f"in [{MIN_WERNER_TOL:g}, 1)")
    families = families or load_families()
    configs = families.configs(k)
    logger.info(f"Werner search over {len(configs)} configurations of {k} ensembles, tol {tol:g}")

    traces: dict[str, Trace] = {}
    brackets: dict[str, Bracket] = {}
    best: tuple[float, WernerConfig] | None = None
    for config in configs:
        trace, bracket = _search(config, tol, best[0] if best else None, on_probe)
        traces[config.name] = trace
        brackets[config.name] = bracket
        if bracket.hi is not None and not bracket.pruned and (best is None or bracket.hi < best[0]):
            best = (bracket.hi, config)
            logger.debug(f"New best threshold {bracket.hi:.6f} from {config.name}")

    if best is None:
        raise NoViolationFoundError(len(configs))
    result = WernerResult(k=k, threshold=best[0], config=best[1], tol=tol, traces=traces, brackets=brackets)
    if result.formulation_divergent:
        logger.warning(f"Computed threshold {result.threshold:.4f} for {k} ensembles differs from the reference {result.reference_value:.4f}")
    logger.info(f"Werner threshold for {k} ensembles: {result.threshold:.6f} ({result.config.name})")
    return result


__all__ = ["Bracket", "WernerResult", "check_monotone", "probe", "werner_threshold"]
