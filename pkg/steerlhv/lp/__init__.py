"""Feasibility engine: phase-1 simplex, witness and certificate checks, exact mode."""

from .exact import ExactResult, solve_exact
from .feasibility import (
    EqualityPins,
    FeasibilityReport,
    FeasibilityStatus,
    equality_pins,
    solve_feasibility,
    verify_certificate,
    verify_witness,
)

__all__ = [
    "EqualityPins",
    "ExactResult",
    "FeasibilityReport",
    "FeasibilityStatus",
    "equality_pins",
    "solve_exact",
    "solve_feasibility",
    "verify_certificate",
    "verify_witness",
]
