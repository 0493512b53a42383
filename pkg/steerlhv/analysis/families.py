"""Versioned basis-configuration families for the Werner threshold search."""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from steerlhv.model.builders import DISTINCT_BASIS_TOL, bisecting_triple
from steerlhv.model.constants import MIN_SCAN_STEP
from steerlhv.model.exceptions import ScenarioFileError
from steerlhv.model.geometry import OverlapTriple, realizable, states_from_triple
from steerlhv.model.log import LogComponent, get_logger

from .scan import grid_values

logger = get_logger(LogComponent.ANALYSIS)

DEFAULT_FAMILIES_FILE = "werner_families.yaml"
SUPPORTED_VERSIONS = frozenset({1})
REQUIRED_KEYS = {
    "": ("version", "three", "four"),
    "three": ("triple_grid_step", "bisecting_alphas"),
    "four": ("planar_spreads", "tetrahedral_polar_angles", "random"),
    "four.random": ("count", "seed"),
}
"""Required keys per section; "" is the document root."""

Direction = tuple[float, float, float]


@dataclass(frozen=True)
class WernerConfig:
    """A named list of measurement directions."""

    name: str
    bases: tuple[Direction, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "bases": [list(b) for b in self.bases]}


@dataclass(frozen=True)
class WernerFamilies:
    version: int
    three: dict[str, Any]
    four: dict[str, Any]
    source: str = ""

    def configs(self, k: int) -> list[WernerConfig]:
        if k == 3:
            return three_ensemble_configs(self.three)
        if k == 4:
            return four_ensemble_configs(self.four)
        raise ValueError(f"No family for {k} ensembles")


def _section(data: dict[str, Any], path: str) -> dict[str, Any]:
    node: Any = data
    for part in filter(None, path.split(".")):
        node = node.get(part) if isinstance(node, dict) else None
    if not isinstance(node, dict):
        raise ScenarioFileError(path or "<root>", "must be a mapping")
    return node


def _number(value: Any, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, int | float) or not math.isfinite(value):
        raise ScenarioFileError(field, f"expected a finite number, got {value!r}")
    return float(value)


def _numbers(value: Any, field: str) -> list[float]:
    if not isinstance(value, list):
        raise ScenarioFileError(field, f"expected a list of numbers, got {type(value).__name__}")
    return [_number(v, f"{field}[{i}]") for i, v in enumerate(value)]


def _check_values(data: dict[str, Any]) -> None:
    step = _number(data["three"]["triple_grid_step"], "three.triple_grid_step")
    if not MIN_SCAN_STEP <= step < 1.0:
        raise ScenarioFileError("three.triple_grid_step", f"must lie in [{MIN_SCAN_STEP}, 1), got {step!r}")
    for i, alpha in enumerate(_numbers(data["three"]["bisecting_alphas"], "three.bisecting_alphas")):
        if not 0.0 < alpha < 1.0:
            raise ScenarioFileError(f"three.bisecting_alphas[{i}]", f"must lie in (0, 1), got {alpha!r}")
    _numbers(data["four"]["planar_spreads"], "four.planar_spreads")
    _numbers(data["four"]["tetrahedral_polar_angles"], "four.tetrahedral_polar_angles")
    random = data["four"]["random"]
    for key in ("count", "seed"):
        value = random[key]
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise ScenarioFileError(f"four.random.{key}", f"expected a nonnegative integer, got {value!r}")


def validate_families(data: Any, source: str = "") -> WernerFamilies:
    if not isinstance(data, dict):
        raise ScenarioFileError("<root>", "families file must be a mapping")
    for path, keys in REQUIRED_KEYS.items():
        section = _section(data, path)
        missing = [k for k in keys if k not in section]
        if missing:
            raise ScenarioFileError(path or "<root>", f"missing required keys: {', '.join(missing)}")
    if data["version"] not in SUPPORTED_VERSIONS:
        raise ScenarioFileError("version", f"unsupported families version {data['version']!r}")
    _check_values(data)
    return WernerFamilies(data["version"], data["three"], data["four"], source)


def load_families(path: str | Path | None = None) -> WernerFamilies:
    """Load the packaged families file, or ``path`` if given."""
    if path is None:
        text = resources.files("steerlhv.analysis").joinpath(DEFAULT_FAMILIES_FILE).read_text(encoding="utf-8")
        source = DEFAULT_FAMILIES_FILE
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ScenarioFileError(str(path), f"cannot read families file: {e.strerror}", original_error=e) from e
        source = str(path)
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ScenarioFileError(source, f"invalid YAML: {e}", original_error=e) from e
    families = validate_families(data, source)
    logger.debug(f"Loaded Werner families v{families.version} from {source}")
    return families


def _direction(vector: Any) -> Direction:
    n = np.asarray(vector, dtype=float)
    norm = np.linalg.norm(n)
    if not norm > 0.0:
        raise ScenarioFileError("bases", f"direction {n.tolist()} has zero length")
    n = n / norm
    return (float(n[0]), float(n[1]), float(n[2]))


def _distinct(bases: list[Direction]) -> bool:
    return all(abs(float(np.dot(bases[i], bases[j]))) <= 1.0 - DISTINCT_BASIS_TOL for i in range(len(bases)) for j in range(i))


def _triple_config(name: str, t: OverlapTriple) -> WernerConfig:
    return WernerConfig(name, tuple(_direction(s.bloch) for s in states_from_triple(t)))


def three_ensemble_configs(section: dict[str, Any]) -> list[WernerConfig]:
    """Bisecting configurations first, then the realizable triple grid."""
    configs = [_triple_config(f"bisecting(alpha={a:g})", bisecting_triple(a)) for a in section["bisecting_alphas"]]
    values = grid_values(float(section["triple_grid_step"]))
    for alpha in values:
        for beta in values:
            for gamma in values:
                t = OverlapTriple(alpha, beta, gamma)
                if realizable(t):
                    configs.append(_triple_config(f"triple({alpha:g},{beta:g},{gamma:g})", t))
    return configs


def four_ensemble_configs(section: dict[str, Any]) -> list[WernerConfig]:
    """Planar fans, tetrahedral cones, then seeded random directions."""
    configs = []
    for spread in section["planar_spreads"]:
        bases = [_direction((math.sin(k * spread * math.pi / 4), 0.0, math.cos(k * spread * math.pi / 4))) for k in range(4)]
        if _distinct(bases):
            configs.append(WernerConfig(f"planar(spread={spread:g})", tuple(bases)))
    for polar in section["tetrahedral_polar_angles"]:
        s, c = math.sin(polar), math.cos(polar)
        bases = [_direction((s * math.cos(math.pi / 4 + k * math.pi / 2), s * math.sin(math.pi / 4 + k * math.pi / 2), c)) for k in range(4)]
        if _distinct(bases):
            configs.append(WernerConfig(f"tetrahedral(polar={polar:.4f})", tuple(bases)))
    rng = np.random.default_rng(int(section["random"]["seed"]))
    made = 0
    while made < int(section["random"]["count"]):
        bases = [_direction(v) for v in rng.normal(size=(4, 3))]
        if _distinct(bases):
            configs.append(WernerConfig(f"random({made})", tuple(bases)))
            made += 1
    return configs


__all__ = [
    "REQUIRED_KEYS",
    "WernerConfig",
    "WernerFamilies",
    "four_ensemble_configs",
    "load_families",
    "three_ensemble_configs",
    "validate_families",
]
