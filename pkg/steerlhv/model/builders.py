"""
Canned steering scenarios.

All builders return a validated :class:`Scenario` whose ``origin`` records
the builder name and parameters; ``**options`` are passed on to
:class:`AssemblyOptions`. Angles are radians.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from typing import Any

import numpy as np

from .exceptions import InvalidParameterError, NotRealizableError
from .geometry import OverlapTriple, PureState, WeightedEnsemble, gram_determinant, realizable, states_from_triple
from .log import LogComponent, get_logger
from .scenario import AssemblyOptions, Scenario, ScenarioOrigin

logger = get_logger(LogComponent.BUILDERS)

BASIS_LABELS = (("x", "X"), ("y", "Y"), ("z", "Z"), ("u", "U"))
"""Member labels for the first, second, third and fourth orthogonal ensemble."""

DISTINCT_BASIS_TOL = 1e-9
"""Directions with |n1 . n2| above 1 - tol are the same measurement basis."""


def _open_unit(name: str, value: float) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as e:
        raise InvalidParameterError(name, value, "a number in the open interval (0, 1)", original_error=e) from e
    if not (0.0 < value < 1.0):
        raise InvalidParameterError(name, value, "in the open interval (0, 1)")
    return value


def _orthogonal(state: PureState, labels: tuple[str, str], weights: tuple[float, float] = (0.5, 0.5)) -> WeightedEnsemble:
    return WeightedEnsemble.of([(weights[0], state), (weights[1], state.antipode())], labels=labels)


def _scenario(ensembles: Sequence[WeightedEnsemble], name: str, params: dict[str, Any], options: dict[str, Any]) -> Scenario:
    scenario = Scenario(tuple(ensembles), AssemblyOptions(**options), ScenarioOrigin(name, params))
    logger.debug(f"Built {name}({params}) with {len(ensembles)} ensembles")
    return scenario


def two_orthogonal(alpha: float, **options: Any) -> Scenario:
    """{x, X} and {y, Y} with |<x|y>|^2 = alpha, all weights 1/2."""
    alpha = _open_unit("alpha", alpha)
    c = 2.0 * alpha - 1.0
    x = PureState(bloch=(0.0, 0.0, 1.0))
    y = PureState.from_bloch((math.sqrt(max(0.0, 1.0 - c * c)), 0.0, c))
    return _scenario([_orthogonal(x, ("x", "X")), _orthogonal(y, ("y", "Y"))], "two_orthogonal", {"alpha": alpha}, options)


def nonorthogonal_pair(theta: float, **options: Any) -> Scenario:
    """
    The eigen-ensemble {((1+cos t)/2, x), ((1-cos t)/2, X)} against the
    equal mixture of a, b = cos(t/2)|x> +- sin(t/2)|X>.
    """
    theta = float(theta)
    if not (0.0 < theta < math.pi / 2):
        raise InvalidParameterError("theta", theta, "in the open interval (0, pi/2)")
    c = math.cos(theta)
    x = PureState(bloch=(0.0, 0.0, 1.0))
    eigen = _orthogonal(x, ("x", "X"), ((1.0 + c) / 2.0, (1.0 - c) / 2.0))
    half = theta / 2.0
    a = PureState.from_amplitudes(math.cos(half), math.sin(half))
    b = PureState.from_amplitudes(math.cos(half), -math.sin(half))
    pair = WeightedEnsemble.of([(0.5, a), (0.5, b)], labels=("a", "b"))
    return _scenario([eigen, pair], "nonorthogonal_pair", {"theta": theta}, options)


def three_orthogonal(triple: OverlapTriple, **options: Any) -> Scenario:
    """Three equal-weight orthogonal ensembles built on states_from_triple."""
    for name, value in zip(("alpha", "beta", "gamma"), triple.as_tuple(), strict=True):
        _open_unit(name, value)
    if not realizable(triple):
        raise NotRealizableError(triple.as_tuple(), gram_determinant(triple))
    x, y, z = states_from_triple(triple)
    params = dict(zip(("alpha", "beta", "gamma"), triple.as_tuple(), strict=True))
    ensembles = [_orthogonal(s, labels) for s, labels in zip((x, y, z), BASIS_LABELS, strict=False)]
    return _scenario(ensembles, "three_orthogonal", params, options)


def bisecting_triple(alpha: float) -> OverlapTriple:
    """(alpha, (1+sqrt(alpha))/2, (1+sqrt(alpha))/2): z bisects x and y."""
    alpha = _open_unit("alpha", alpha)
    beta = (1.0 + math.sqrt(alpha)) / 2.0
    return OverlapTriple(alpha, beta, beta)


def gpr(q: float, **options: Any) -> Scenario:
    """
    rho_B = diag(q, 1-q) as its eigen-ensemble {(q,|0>), (1-q,|1>)} and as the
    equal mixture of a, b = sqrt(q)|0> +- sqrt(1-q)|1>.
    """
    q = _open_unit("q", q)
    zero = PureState(bloch=(0.0, 0.0, 1.0))
    eigen = _orthogonal(zero, ("x", "X"), (q, 1.0 - q))
    a = PureState.from_amplitudes(math.sqrt(q), math.sqrt(1.0 - q))
    b = PureState.from_amplitudes(math.sqrt(q), -math.sqrt(1.0 - q))
    pair = WeightedEnsemble.of([(0.5, a), (0.5, b)], labels=("a", "b"))
    return _scenario([eigen, pair], "gpr", {"q": q}, options)


def werner(w: float, bases: Sequence[Sequence[float]], **options: Any) -> Scenario:
    """
    Equal-weight orthogonal ensembles along 2-4 measurement directions, with
    Werner weight ``w``. Antipodal directions are the same basis.
    """
    if not (2 <= len(bases) <= 4):
        raise InvalidParameterError("bases", len(bases), "between 2 and 4 directions")
    directions = []
    for k, vector in enumerate(bases):
        n = np.asarray(vector, dtype=float)
        if n.shape != (3,) or not np.all(np.isfinite(n)) or np.linalg.norm(n) == 0.0:
            raise InvalidParameterError(f"bases[{k}]", list(vector), "a nonzero 3-vector")
        directions.append(n / np.linalg.norm(n))
    for i in range(len(directions)):
        for j in range(i):
            if abs(float(directions[i] @ directions[j])) > 1.0 - DISTINCT_BASIS_TOL:
                raise InvalidParameterError("bases", [list(map(float, d)) for d in directions], f"pairwise distinct (directions {j} and {i} coincide)")
    ensembles = [_orthogonal(PureState.from_bloch(n), labels) for n, labels in zip(directions, BASIS_LABELS, strict=False)]
    params = {"w": float(w), "bases": [[float(v) for v in n] for n in directions]}
    return _scenario(ensembles, "werner", params, {**options, "werner_w": w})


def _bisecting(alpha: float, **options: Any) -> Scenario:
    return three_orthogonal(bisecting_triple(alpha), **options)


def _three_orthogonal(alpha: float, beta: float, gamma: float, **options: Any) -> Scenario:
    return three_orthogonal(OverlapTriple(alpha, beta, gamma), **options)


BUILDERS: dict[str, tuple[Callable[..., Scenario], tuple[str, ...]]] = {
    "two_orthogonal": (two_orthogonal, ("alpha",)),
    "nonorthogonal_pair": (nonorthogonal_pair, ("theta",)),
    "three_orthogonal": (_three_orthogonal, ("alpha", "beta", "gamma")),
    "bisecting": (_bisecting, ("alpha",)),
    "gpr": (gpr, ("q",)),
    "werner": (werner, ("w", "bases")),
}
"""Builder name -> (constructor, required parameter names)."""


def build(name: str, params: dict[str, Any], **options: Any) -> Scenario:
    """Construct a canned scenario by registry name."""
    if name not in BUILDERS:
        raise InvalidParameterError("builder", name, f"one of {', '.join(sorted(BUILDERS))}")
    factory, required = BUILDERS[name]
    missing = [p for p in required if p not in params]
    if missing:
        raise InvalidParameterError("params", sorted(params), f"provide {', '.join(missing)} for {name}")
    extra = sorted(set(params) - set(required))
    if extra:
        raise InvalidParameterError("params", extra, f"only {', '.join(required)} for {name}")
    return factory(**params, **options)


__all__ = [
    "BUILDERS",
    "bisecting_triple",
    "build",
    "gpr",
    "nonorthogonal_pair",
    "three_orthogonal",
    "two_orthogonal",
    "werner",
]
