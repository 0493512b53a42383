"""
Reading scenario, bipartite-state and ensemble files.

Scenario file::

    {"ensembles": [[{"p": 0.5, "state": {"bloch": [0, 0, 1]}}, ...], ...],
     "options": {"deficiency": false, "mixture_mode": "full",
                 "constraint_set": "paper_strict", "werner_w": 1.0}}

or ``{"builder": name, "params": {...}, "options": {...}}``. Every problem is
reported as a :class:`ScenarioFileError` naming the line or field.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any

import numpy as np

from steerlhv.model.builders import build
from steerlhv.model.exceptions import ScenarioFileError, SteerlhvError
from steerlhv.model.geometry import EnsembleMember, PureState, WeightedEnsemble
from steerlhv.model.scenario import AssemblyOptions, Scenario
from steerlhv.model.steering import BipartitePureState


def load_json(path: str) -> Any:
    """Parse a JSON file, or stdin for ``-``."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioFileError(path, f"cannot read file: {e.strerror}", original_error=e) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioFileError(f"{path} line {e.lineno} column {e.colno}", e.msg, original_error=e) from e


def _mapping(value: Any, field: str) -> dict[str, Any]:
    if not isinstance(value, dict):
        raise ScenarioFileError(field, f"expected an object, got {type(value).__name__}")
    return value


def _list(value: Any, field: str) -> list[Any]:
    if not isinstance(value, list):
        raise ScenarioFileError(field, f"expected a list, got {type(value).__name__}")
    return value


def parse_state(data: Any, field: str) -> PureState:
    try:
        return PureState.from_dict(_mapping(data, field))
    except ScenarioFileError:
        raise
    except (SteerlhvError, TypeError, ValueError) as e:
        raise ScenarioFileError(field, str(e), original_error=e) from e


def parse_ensemble(data: Any, field: str = "ensemble") -> WeightedEnsemble:
    """A list of ``{"p": ..., "state": {...}, "label": ...}`` members."""
    members = []
    for i, item in enumerate(_list(data, field)):
        where = f"{field}[{i}]"
        item = _mapping(item, where)
        if "p" not in item or "state" not in item:
            raise ScenarioFileError(where, "member needs 'p' and 'state'")
        p = item["p"]
        if isinstance(p, bool) or not isinstance(p, int | float):
            raise ScenarioFileError(f"{where}.p", f"expected a number, got {p!r}")
        label = item.get("label", "")
        if not isinstance(label, str):
            raise ScenarioFileError(f"{where}.label", "expected a string")
        members.append(EnsembleMember(float(p), parse_state(item["state"], f"{where}.state"), label))
    try:
        return WeightedEnsemble(tuple(members))
    except SteerlhvError as e:
        raise ScenarioFileError(field, str(e), original_error=e) from e


def parse_options(data: Any, overrides: dict[str, Any] | None = None) -> dict[str, Any]:
    """Validated option mapping: file options with command-line ``overrides`` on top."""
    options = dict(_mapping(data, "options")) if data is not None else {}
    options.update(overrides or {})
    try:
        AssemblyOptions.from_dict(options)
    except (SteerlhvError, TypeError, ValueError) as e:
        raise ScenarioFileError("options", str(e), original_error=e) from e
    return options


def parse_scenario(data: Any, overrides: dict[str, Any] | None = None) -> Scenario:
    data = _mapping(data, "<root>")
    unknown = sorted(set(data) - {"ensembles", "options", "builder", "params"})
    if unknown:
        raise ScenarioFileError("<root>", f"unknown keys: {', '.join(unknown)}")
    options = parse_options(data.get("options"), overrides)
    if "builder" in data:
        params = _mapping(data.get("params", {}), "params")
        try:
            return build(data["builder"], params, **options)
        except (SteerlhvError, TypeError, ValueError) as e:
            raise ScenarioFileError("builder", str(e), original_error=e) from e
    if "ensembles" not in data:
        raise ScenarioFileError("<root>", "scenario needs 'ensembles' or 'builder'")
    ensembles = tuple(parse_ensemble(ens, f"ensembles[{k}]") for k, ens in enumerate(_list(data["ensembles"], "ensembles")))
    try:
        return Scenario(ensembles, AssemblyOptions(**options))
    except SteerlhvError as e:
        raise ScenarioFileError("ensembles", str(e), original_error=e) from e


def _complex(value: Any, field: str) -> complex:
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, int | float) for v in value):
        return complex(value[0], value[1])
    if isinstance(value, int | float) and not isinstance(value, bool):
        return complex(value)
    raise ScenarioFileError(field, f"expected a number or [re, im], got {value!r}")


def parse_bipartite_state(data: Any) -> BipartitePureState:
    """``{"state": "singlet"}``, ``{"schmidt": q}`` or ``{"coeffs": [[c00, c01], [c10, c11], ...]}``."""
    data = _mapping(data, "<root>")
    try:
        if data.get("state") == "singlet":
            return BipartitePureState.singlet()
        if "schmidt" in data:
            q = data["schmidt"]
            if isinstance(q, bool) or not isinstance(q, int | float) or not (0.0 <= q <= 1.0):
                raise ScenarioFileError("schmidt", f"expected a weight in [0, 1], got {q!r}")
            return BipartitePureState.schmidt(float(q))
        if "coeffs" in data:
            rows = _list(data["coeffs"], "coeffs")
            coeffs = np.array(
                [[_complex(c, f"coeffs[{j}][{k}]") for k, c in enumerate(_list(row, f"coeffs[{j}]"))] for j, row in enumerate(rows)],
                dtype=complex,
            )
            return BipartitePureState(coeffs)
    except ScenarioFileError:
        raise
    except (SteerlhvError, ValueError) as e:
        raise ScenarioFileError("coeffs", str(e), original_error=e) from e
    raise ScenarioFileError("<root>", "state needs 'state': 'singlet', 'schmidt' or 'coeffs'")


def parse_ensemble_file(data: Any) -> WeightedEnsemble:
    """A bare member list or ``{"ensemble": [...]}``."""
    if isinstance(data, dict):
        if "ensemble" not in data:
            raise ScenarioFileError("<root>", "expected key 'ensemble'")
        return parse_ensemble(data["ensemble"])
    return parse_ensemble(data)


__all__ = ["load_json", "parse_bipartite_state", "parse_ensemble", "parse_ensemble_file", "parse_options", "parse_scenario", "parse_state"]
