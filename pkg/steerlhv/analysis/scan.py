"""
Grid scan comparing LP feasibility of three orthogonal ensembles with
tetrahedron membership of their overlap triple.

A point is a mismatch when (LP infeasible) differs from (hull OUTSIDE).
Points inside the hull margin band and numerically ambiguous solves are
skipped and counted, never reported as mismatches.
"""

from __future__ import annotations

import csv
import itertools
import time
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from scipy.spatial.transform import Rotation

from steerlhv.lp import solve_feasibility
from steerlhv.model.assembly import assemble
from steerlhv.model.builders import three_orthogonal
from steerlhv.model.constants import DEFAULT_HULL_MARGIN, MAX_SCAN_STEP, MIN_SCAN_STEP
from steerlhv.model.exceptions import InvalidParameterError, NumericallyAmbiguousError
from steerlhv.model.geometry import OverlapTriple, PureState, WeightedEnsemble, realizable
from steerlhv.model.log import LogComponent, get_logger
from steerlhv.model.scenario import Scenario

from .hull import HullVerdict, hull_membership

logger = get_logger(LogComponent.ANALYSIS)

CSV_COLUMNS = ("alpha", "beta", "gamma", "realizable", "hull", "lp_status", "margin")

NOT_RUN = "not_run"
AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class ScanRecord:
    alpha: float
    beta: float
    gamma: float
    realizable: bool
    hull: str
    lp_status: str
    margin: float | None = None

    @property
    def triple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)

    @property
    def is_mismatch(self) -> bool:
        if self.lp_status not in ("feasible", "infeasible"):
            return False
        return (self.lp_status == "infeasible") != (self.hull == HullVerdict.OUTSIDE.value)


@dataclass(frozen=True)
class Mismatch:
    triple: tuple[float, float, float]
    lp_status: str
    hull_status: str


@dataclass
class ScanReport:
    grid_step: float
    margin: float
    points_tested: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    skipped_boundary: int = 0
    skipped_ambiguous: int = 0
    skipped_unrealizable: int = 0
    runtime: float = 0.0
    records: list[ScanRecord] = field(default_factory=list, repr=False)

    def add(self, record: ScanRecord) -> None:
        self.records.append(record)
        if not record.realizable:
            self.skipped_unrealizable += 1
        elif record.hull == HullVerdict.BOUNDARY.value:
            self.skipped_boundary += 1
        elif record.lp_status == AMBIGUOUS:
            self.skipped_ambiguous += 1
        else:
            self.points_tested += 1
            if record.is_mismatch:
                self.mismatches.append(Mismatch(record.triple, record.lp_status, record.hull))

    def to_dict(self, include_runtime: bool = True) -> dict[str, Any]:
        data = {
            "grid_step": self.grid_step,
            "margin": self.margin,
            "points_tested": self.points_tested,
            "mismatches": [asdict(m) | {"triple": list(m.triple)} for m in self.mismatches],
            "skipped_boundary": self.skipped_boundary,
            "skipped_ambiguous": self.skipped_ambiguous,
            "skipped_unrealizable": self.skipped_unrealizable,
        }
        if include_runtime:
            data["runtime"] = self.runtime
        return data

    def write_csv(self, path: str | Path) -> None:
        with Path(path).open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(CSV_COLUMNS)
            for r in self.records:
                writer.writerow([r.alpha, r.beta, r.gamma, int(r.realizable), r.hull, r.lp_status, "" if r.margin is None else r.margin])


def grid_values(step: float) -> list[float]:
    """k * step for every k with 0 < k * step < 1."""
    if not step > 0.0:
        raise InvalidParameterError("step", step, "positive")
    values = []
    k = 1
    while k * step < 1.0 - 1e-12:
        values.append(round(k * step, 12))
        k += 1
    return values


def grid_triples(step: float) -> Iterator[tuple[float, float, float]]:
    values = grid_values(step)
    return itertools.product(values, values, values)


def rotate_scenario(scenario: Scenario, rotation: Rotation) -> Scenario:
    """Apply one Bloch-sphere rotation to every state of the scenario."""
    ensembles = tuple(
        WeightedEnsemble.of(
            [(m.probability, PureState.from_bloch(rotation.apply(m.state.bloch))) for m in ens.members],
            labels=[m.label for m in ens.members],
        )
        for ens in scenario.ensembles
    )
    return Scenario(ensembles, scenario.options, scenario.origin)


def lp_status(scenario: Scenario) -> tuple[str, float | None]:
    """('feasible' | 'infeasible' | 'ambiguous', certificate margin or None)."""
    try:
        report = solve_feasibility(assemble(scenario))
    except NumericallyAmbiguousError:
        return AMBIGUOUS, None
    return report.status.value, (report.certificate_margin if not report.feasible else None)


def evaluate_point(triple: tuple[float, float, float], margin: float = DEFAULT_HULL_MARGIN, rotation: Rotation | None = None) -> ScanRecord:
    """Classify one grid triple; the LP runs only for realizable, non-boundary points."""
    t = OverlapTriple(*triple)
    hull = hull_membership(t, margin)
    if not realizable(t):
        return ScanRecord(*triple, realizable=False, hull=hull.verdict.value, lp_status=NOT_RUN)
    if hull.verdict is HullVerdict.BOUNDARY:
        return ScanRecord(*triple, realizable=True, hull=hull.verdict.value, lp_status=NOT_RUN)
    scenario = three_orthogonal(t)
    if rotation is not None:
        scenario = rotate_scenario(scenario, rotation)
    status, cert_margin = lp_status(scenario)
    return ScanRecord(*triple, realizable=True, hull=hull.verdict.value, lp_status=status, margin=cert_margin)


def _evaluate(args: tuple[tuple[float, float, float], float]) -> ScanRecord:
    return evaluate_point(*args)


def conjecture_scan(
    step: float,
    margin: float = DEFAULT_HULL_MARGIN,
    jobs: int = 1,
    on_record: Callable[[ScanRecord], None] | None = None,
) -> ScanReport:
    """
    Scan the grid k*step in (0, 1)^3 in lexicographic order.

    Args:
        step: Grid spacing in [0.01, 0.25].
        margin: Hull boundary exclusion band (>= 1e-6).
        jobs: Worker processes; results are aggregated in grid order.
        on_record: Called with each record in grid order.
    """
    if not (MIN_SCAN_STEP <= step <= MAX_SCAN_STEP):
        raise InvalidParameterError("step", step, f"in [{MIN_SCAN_STEP}, {MAX_SCAN_STEP}]")
    if margin < DEFAULT_HULL_MARGIN:
        raise InvalidParameterError("margin", margin, f">= {DEFAULT_HULL_MARGIN:g}")
    if jobs < 1:
        raise InvalidParameterError("jobs", jobs, ">= 1")

    report = ScanReport(grid_step=step, margin=margin)
    tasks = [(triple, margin) for triple in grid_triples(step)]
    logger.info(f"Conjecture scan: {len(tasks)} grid points, step {step}, margin {margin:g}, {jobs} job(s)")
    start = time.perf_counter()
    if jobs == 1:
        results: Iterator[ScanRecord] = map(_evaluate, tasks)
        for record in results:
            report.add(record)
            if on_record:
                on_record(record)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for record in pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (jobs * 16))):
                report.add(record)
                if on_record:
                    on_record(record)
    report.runtime = time.perf_counter() - start

    for m in report.mismatches:
        logger.warning(f"Mismatch at {m.triple}: LP {m.lp_status}, hull {m.hull_status}")
    logger.info(
        f"Scan finished in {report.runtime:.1f}s: {report.points_tested} tested, {len(report.mismatches)} mismatches, "
        f"{report.skipped_boundary} boundary, {report.skipped_ambiguous} ambiguous"
    )
    return report


__all__ = [
    "CSV_COLUMNS",
    "Mismatch",
    "ScanRecord",
    "ScanReport",
    "conjecture_scan",
    "evaluate_point",
    "grid_triples",
    "grid_values",
    "lp_status",
    "rotate_scenario",
]
