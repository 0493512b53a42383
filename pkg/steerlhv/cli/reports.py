"""JSON report documents written to stdout by the CLI commands."""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from steerlhv.cli.constants import JSON_INDENT
from steerlhv.lp.exact import ExactResult
from steerlhv.lp.feasibility import FeasibilityReport, verify_witness
from steerlhv.model.assembly import ConstraintSystem, atom_table
from steerlhv.model.exceptions import SteerlhvError
from steerlhv.model.geometry import MixedState, WeightedEnsemble
from steerlhv.model.scenario import Scenario
from steerlhv.model.steering import BipartitePureState, Measurement, SteeredEnsemble


def dumps(document: dict[str, Any]) -> str:
    """Deterministic rendering: fixed key order and indentation."""
    return json.dumps(document, indent=JSON_INDENT, sort_keys=True, ensure_ascii=False)


def _origin(scenario: Scenario) -> dict[str, Any] | None:
    if scenario.origin is None:
        return None
    return {"builder": scenario.origin.builder, "params": scenario.origin.params}


def check_report(
    scenario: Scenario,
    system: ConstraintSystem,
    report: FeasibilityReport | None,
    exact: ExactResult | None = None,
) -> dict[str, Any]:
    """Verdict, evidence, residuals and the atom table for one scenario."""
    document: dict[str, Any] = {
        "scenario": _origin(scenario),
        "options": scenario.options.to_dict(),
        "atoms": atom_table(scenario, system.atoms),
        "shape": list(system.shape),
    }
    if report is not None:
        document |= report.to_dict()
    if exact is not None:
        document["exact"] = exact.to_dict()
        if report is None:
            document["status"] = exact.status.value
            if exact.feasible:
                witness = np.array([float(v) for v in exact.witness or ()])
                document["max_residual"] = verify_witness(system, witness)
    return document


def error_report(error: SteerlhvError) -> dict[str, Any]:
    return {"status": "error", "code": error.code, "severity": error.severity, "message": error.message}


def _matrix(m: np.ndarray) -> list[list[list[float]]]:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(m)]


def steer_report(psi: BipartitePureState, target: WeightedEnsemble, measurement: Measurement, steered: SteeredEnsemble) -> dict[str, Any]:
    """Measurement elements as [re, im] matrices plus the verification residuals."""
    prob_dev = max(abs(m.probability - t.probability) for m, t in zip(steered.members, target.members, strict=True))
    state_dev = max(
        (m.state.max_deviation(MixedState(bloch=t.state.bloch)) for m, t in zip(steered.members, target.members, strict=True) if m.state is not None),
        default=0.0,
    )
    return {
        "status": "steerable",
        "dim_a": psi.dim_a,
        "elements": [_matrix(m) for m in measurement.elements],
        "probabilities": [m.probability for m in steered.members],
        "residuals": {
            "completeness": measurement.completeness_residual(psi),
            "min_eigenvalue": measurement.min_eigenvalue(),
            "probability": prob_dev,
            "state": state_dev,
        },
    }


__all__ = ["check_report", "dumps", "error_report", "steer_report"]
