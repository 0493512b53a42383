"""
Exception hierarchy for steerlhv.

Every error carries a machine-readable ``code`` and a ``severity`` so the CLI
can map failures to exit codes and structured log events.
"""

from __future__ import annotations

from typing import Any, Literal

Severity = Literal["warning", "error", "critical"]


class SteerlhvError(Exception):
    """
    Base exception for all steerlhv errors.

    Attributes:
        message: Human-readable description
        code: Machine-readable error code
        severity: warning, error, or critical
        original_error: Underlying exception if any
    """

    def __init__(
        self,
        message: str,
        code: str = "UNKNOWN",
        severity: Severity = "error",
        original_error: Exception | None = None,
    ) -> None:
        self.message = message
        self.code = code
        self.severity = severity
        self.original_error = original_error
        super().__init__(message)

    def __str__(self) -> str:
        if self.original_error:
            return f"{self.message} (caused by: {self.original_error})"
        return self.message


# Input validation
class InvalidStateError(SteerlhvError, ValueError):
    """A state, ensemble or measurement violates its invariants."""

    def __init__(self, message: str, **kwargs: Any) -> None:
        kwargs.setdefault("code", "INVALID_STATE")
        super().__init__(message, **kwargs)


class InvalidParameterError(SteerlhvError, ValueError):
    """A builder or analysis parameter is outside its domain."""

    def __init__(self, name: str, value: Any, expected: str, **kwargs: Any) -> None:
        self.name = name
        self.value = value
        kwargs.setdefault("code", "INVALID_PARAMETER")
        super().__init__(f"Parameter {name}={value!r} must be {expected}", **kwargs)


# Geometry
class AntipodalInputError(SteerlhvError):
    """Bisector requested for antipodal (orthogonal) states."""

    def __init__(self, message: str | None = None, **kwargs: Any) -> None:
        kwargs.setdefault("code", "ANTIPODAL_INPUT")
        super().__init__(message or "Bisector is undefined for antipodal Bloch vectors", **kwargs)


class NotRealizableError(SteerlhvError):
    """No three qubit states have the requested pairwise overlaps."""

    def __init__(self, triple: tuple[float, float, float], gram_det: float, **kwargs: Any) -> None:
        self.triple = triple
        self.gram_det = gram_det
        kwargs.setdefault("code", "NOT_REALIZABLE")
        super().__init__(f"Overlap triple {triple} is not realizable (Gram determinant {gram_det:.3e})", **kwargs)


# Steering
class NotSteerableError(SteerlhvError):
    """The ensemble does not average to the reduced state."""

    def __init__(self, deviation: float, message: str | None = None, **kwargs: Any) -> None:
        self.deviation = deviation
        kwargs.setdefault("code", "NOT_STEERABLE")
        msg = message or f"Ensemble average differs from the reduced state by {deviation:.3e}"
        super().__init__(msg, **kwargs)


class RankDeficientError(SteerlhvError):
    """An ensemble member lies outside the support of the reduced state."""

    def __init__(self, member: int, residual: float, **kwargs: Any) -> None:
        self.member = member
        self.residual = residual
        kwargs.setdefault("code", "RANK_DEFICIENT")
        super().__init__(f"Member {member} lies outside the support of rho_B (residual {residual:.3e})", **kwargs)


# Assembly
class InconsistentEnsemblesError(SteerlhvError):
    """Ensembles of one scenario decompose different density matrices."""

    def __init__(self, first: int, second: int, deviation: float, **kwargs: Any) -> None:
        self.first = first
        self.second = second
        self.deviation = deviation
        kwargs.setdefault("code", "INCONSISTENT_ENSEMBLES")
        super().__init__(f"Ensembles E{first + 1} and E{second + 1} have different averages (max deviation {deviation:.3e})", **kwargs)


class UnsupportedScenarioError(SteerlhvError):
    """No hand-derived marginal system exists for this scenario."""

    def __init__(self, message: str, **kwargs: Any) -> None:
        kwargs.setdefault("code", "UNSUPPORTED_SCENARIO")
        super().__init__(message, **kwargs)


# Solver
class SolverError(SteerlhvError):
    """Base for LP engine failures."""

    def __init__(self, message: str, **kwargs: Any) -> None:
        kwargs.setdefault("code", "SOLVER_ERROR")
        super().__init__(message, **kwargs)


class NumericallyAmbiguousError(SolverError):
    """Neither witness nor certificate reached its tolerance."""

    def __init__(self, residual: float, margin: float, **kwargs: Any) -> None:
        self.residual = residual
        self.margin = margin
        kwargs.setdefault("code", "NUMERICALLY_AMBIGUOUS")
        kwargs.setdefault("severity", "warning")
        super().__init__(f"Numerically ambiguous system: witness residual {residual:.3e}, certificate margin {margin:.3e}", **kwargs)


# Analysis
class NoViolationFoundError(SteerlhvError):
    """Every searched configuration is feasible at w = 1."""

    def __init__(self, configurations: int, **kwargs: Any) -> None:
        self.configurations = configurations
        kwargs.setdefault("code", "NO_VIOLATION_FOUND")
        super().__init__(f"None of {configurations} configurations is infeasible at w=1", **kwargs)


class MonotonicityViolationError(SteerlhvError):
    """A configuration was feasible at a weight above an infeasible one."""

    def __init__(self, config_name: str, trace: list[tuple[float, str]], **kwargs: Any) -> None:
        self.config_name = config_name
        self.trace = trace
        kwargs.setdefault("code", "MONOTONICITY_VIOLATION")
        kwargs.setdefault("severity", "critical")
        rendered = ", ".join(f"w={w:g}:{status}" for w, status in trace)
        super().__init__(f"Non-monotone feasibility for {config_name}: {rendered}", **kwargs)


class NoiseInfeasibleError(SteerlhvError):
    """A configuration is not feasible at w = 0, where the system is pure noise."""

    def __init__(self, config_name: str, status: str, **kwargs: Any) -> None:
        self.config_name = config_name
        self.status = status
        kwargs.setdefault("code", "NOISE_INFEASIBLE")
        kwargs.setdefault("severity", "critical")
        super().__init__(f"{config_name} is {status} at w=0; the pure-noise system must be feasible", **kwargs)


# Input files
class ScenarioFileError(SteerlhvError):
    """A scenario, state or family file is malformed."""

    def __init__(self, field: str, message: str, **kwargs: Any) -> None:
        self.field = field
        kwargs.setdefault("code", "MALFORMED_INPUT")
        super().__init__(f"{field}: {message}", **kwargs)


__all__ = [
    "AntipodalInputError",
    "InconsistentEnsemblesError",
    "InvalidParameterError",
    "InvalidStateError",
    "MonotonicityViolationError",
    "NoViolationFoundError",
    "NoiseInfeasibleError",
    "NotRealizableError",
    "NotSteerableError",
    "NumericallyAmbiguousError",
    "RankDeficientError",
    "ScenarioFileError",
    "Severity",
    "SolverError",
    "SteerlhvError",
    "UnsupportedScenarioError",
]
