"""Experiments built on the feasibility systems: hull scan, Werner thresholds, Schmidt-weight sweep."""

from .families import WernerConfig, WernerFamilies, load_families
from .gpr import GprPoint, gpr_sweep
from .hull import HullMembership, HullVerdict, barycentric_weights, hull_membership
from .scan import ScanRecord, ScanReport, conjecture_scan, evaluate_point, rotate_scenario
from .werner import WernerResult, probe, werner_threshold

__all__ = [
    "GprPoint",
    "HullMembership",
    "HullVerdict",
    "ScanRecord",
    "ScanReport",
    "WernerConfig",
    "WernerFamilies",
    "WernerResult",
    "barycentric_weights",
    "conjecture_scan",
    "evaluate_point",
    "gpr_sweep",
    "hull_membership",
    "load_families",
    "probe",
    "rotate_scenario",
    "werner_threshold",
]
