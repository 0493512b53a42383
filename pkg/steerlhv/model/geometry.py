"""
Qubit state geometry: pure and mixed states on the Bloch ball, weighted
ensembles, overlaps, the bisector construction and overlap-triple
realizability.

Capabilities:
- Pure states carry a unit Bloch vector and, optionally, amplitudes in the
  canonical gauge (first nonzero amplitude real and nonnegative).
- ``overlap`` is |<s1|s2>|^2 computed from Bloch vectors.
- ``bisector`` builds (|x> + |y>)/norm after fixing <x|y> >= 0.
- ``states_from_triple`` inverts the pairwise-overlap map by Cholesky-style
  completion of the Bloch Gram matrix.

All types are frozen and safe to share between threads and processes.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from .constants import (
    AMPLITUDE_MATCH_TOL,
    ANTIPODAL_TOL,
    DEGENERATE_AXIS_TOL,
    GRAM_DET_TOL,
    PROBABILITY_SUM_TOL,
    UNIT_NORM_TOL,
)
from .exceptions import AntipodalInputError, InvalidStateError, NotRealizableError

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

Vector3 = tuple[float, float, float]


def _as_vector3(values: Iterable[float]) -> Vector3:
    vec = tuple(float(v) for v in values)
    if len(vec) != 3 or not all(math.isfinite(v) for v in vec):
        raise InvalidStateError(f"Bloch vector must be three finite reals, got {vec!r}")
    return vec  # type: ignore[return-value]


def _canonical_gauge(a0: complex, a1: complex) -> tuple[complex, complex]:
    """Normalize and remove the global phase so the first nonzero amplitude is real >= 0."""
    norm = math.sqrt(abs(a0) ** 2 + abs(a1) ** 2)
    if norm == 0.0:
        raise InvalidStateError("Amplitude pair must not be zero")
    a0, a1 = a0 / norm, a1 / norm
    lead = a0 if abs(a0) > 0.0 else a1
    phase = lead.conjugate() / abs(lead)
    a0, a1 = a0 * phase, a1 * phase
    if abs(a0) > 0.0:
        a0 = complex(abs(a0), 0.0)
    else:
        a0, a1 = 0j, complex(abs(a1), 0.0)
    return complex(a0), complex(a1)


def _bloch_from_amplitudes(a0: complex, a1: complex) -> Vector3:
    cross = a0.conjugate() * a1
    return (2.0 * cross.real, 2.0 * cross.imag, abs(a0) ** 2 - abs(a1) ** 2)


def _amplitudes_from_bloch(bloch: Vector3) -> tuple[complex, complex]:
    nx, ny, nz = bloch
    a0 = math.sqrt(max(0.0, (1.0 + nz) / 2.0))
    if a0 == 0.0:
        return 0j, 1 + 0j
    return _canonical_gauge(complex(a0), complex(nx, ny) / (2.0 * a0))


@dataclass(frozen=True)
class PureState:
    """
    A qubit pure state.

    Attributes:
        bloch: Unit Bloch vector (<sigma_x>, <sigma_y>, <sigma_z>).
        amplitudes: Optional amplitude pair in the canonical gauge.
    """

    bloch: Vector3
    amplitudes: tuple[complex, complex] | None = None

    def __post_init__(self) -> None:
        bloch = _as_vector3(self.bloch)
        object.__setattr__(self, "bloch", bloch)
        norm = math.sqrt(sum(v * v for v in bloch))
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise InvalidStateError(f"Pure-state Bloch vector must have unit length, got |bloch|={norm!r}")
        if self.amplitudes is not None:
            a0, a1 = (complex(a) for a in self.amplitudes)
            object.__setattr__(self, "amplitudes", (a0, a1))
            implied = _bloch_from_amplitudes(a0, a1)
            mismatch = max(abs(p - q) for p, q in zip(implied, bloch, strict=True))
            if mismatch > AMPLITUDE_MATCH_TOL:
                raise InvalidStateError(f"Amplitudes disagree with Bloch vector by {mismatch:.3e}")

    @classmethod
    def from_bloch(cls, vector: Iterable[float]) -> PureState:
        """Build a state from any nonzero 3-vector, rescaled to unit length."""
        vec = np.asarray(_as_vector3(vector), dtype=float)
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            raise InvalidStateError("Bloch direction must be nonzero")
        return cls(bloch=tuple(float(v) for v in vec / norm))  # type: ignore[arg-type]

    @classmethod
    def from_amplitudes(cls, a0: complex, a1: complex) -> PureState:
        """Build a state from an (unnormalized) amplitude pair."""
        c0, c1 = _canonical_gauge(complex(a0), complex(a1))
        bloch = _bloch_from_amplitudes(c0, c1)
        norm = math.sqrt(sum(v * v for v in bloch))
        return cls(bloch=tuple(v / norm for v in bloch), amplitudes=(c0, c1))  # type: ignore[arg-type]

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> PureState:
        """Parse ``{"bloch": [nx, ny, nz]}`` or ``{"amp": [[re, im], [re, im]]}``."""
        if "bloch" in data:
            return cls.from_bloch(data["bloch"])
        if "amp" in data:
            amp = data["amp"]
            if len(amp) != 2 or any(len(pair) != 2 for pair in amp):
                raise InvalidStateError("'amp' must be a pair of [re, im] pairs")
            return cls.from_amplitudes(complex(amp[0][0], amp[0][1]), complex(amp[1][0], amp[1][1]))
        raise InvalidStateError("State must define 'bloch' or 'amp'")

    def to_dict(self) -> dict[str, Any]:
        if self.amplitudes is not None:
            return {"amp": [[a.real, a.imag] for a in self.amplitudes]}
        return {"bloch": list(self.bloch)}

    def ket(self) -> np.ndarray:
        """Amplitudes in the canonical gauge as a length-2 complex array."""
        if self.amplitudes is not None:
            return np.array(self.amplitudes, dtype=complex)
        return np.array(_amplitudes_from_bloch(self.bloch), dtype=complex)

    def projector(self) -> np.ndarray:
        ket = self.ket()
        return np.outer(ket, ket.conj())

    def antipode(self) -> PureState:
        """The orthogonal state (antipodal Bloch vector)."""
        if self.amplitudes is not None:
            a0, a1 = self.amplitudes
            return PureState.from_amplitudes(-a1.conjugate(), a0.conjugate())
        return PureState(bloch=tuple(-v for v in self.bloch))  # type: ignore[arg-type]


@dataclass(frozen=True)
class MixedState:
    """A qubit density matrix stored as its Bloch vector (|bloch| <= 1)."""

    bloch: Vector3

    def __post_init__(self) -> None:
        bloch = _as_vector3(self.bloch)
        object.__setattr__(self, "bloch", bloch)
        norm = math.sqrt(sum(v * v for v in bloch))
        if norm > 1.0 + UNIT_NORM_TOL:
            raise InvalidStateError(f"Mixed-state Bloch vector must lie in the unit ball, got |bloch|={norm!r}")

    @classmethod
    def from_matrix(cls, rho: np.ndarray) -> MixedState:
        """Read the Bloch vector off a 2x2 density matrix."""
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (2, 2):
            raise InvalidStateError(f"Density matrix must be 2x2, got shape {rho.shape}")
        return cls(bloch=(2.0 * rho[0, 1].real, -2.0 * rho[0, 1].imag, (rho[0, 0] - rho[1, 1]).real))

    @classmethod
    def maximally_mixed(cls) -> MixedState:
        return cls(bloch=(0.0, 0.0, 0.0))

    def matrix(self) -> np.ndarray:
        nx, ny, nz = self.bloch
        return 0.5 * (IDENTITY + nx * PAULI_X + ny * PAULI_Y + nz * PAULI_Z)

    @property
    def radius(self) -> float:
        return math.sqrt(sum(v * v for v in self.bloch))

    def eigenvalues(self) -> tuple[float, float]:
        r = self.radius
        return ((1.0 - r) / 2.0, (1.0 + r) / 2.0)

    def expectation(self, state: PureState) -> float:
        """<phi|rho|phi> for a pure state phi."""
        return (1.0 + float(np.dot(self.bloch, state.bloch))) / 2.0

    def max_deviation(self, other: MixedState) -> float:
        """Largest entrywise difference between the two density matrices."""
        return float(np.max(np.abs(self.matrix() - other.matrix())))


@dataclass(frozen=True)
class EnsembleMember:
    """One weighted member of an ensemble."""

    probability: float
    state: PureState
    label: str = ""


@dataclass(frozen=True)
class WeightedEnsemble:
    """A probability-weighted list of pure states."""

    members: tuple[EnsembleMember, ...]

    def __post_init__(self) -> None:
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise InvalidStateError("Ensemble needs at least one member")
        for i, member in enumerate(members):
            if not (0.0 <= member.probability <= 1.0):
                raise InvalidStateError(f"Member {i} probability {member.probability!r} outside [0, 1]")
        total = math.fsum(m.probability for m in members)
        if abs(total - 1.0) > PROBABILITY_SUM_TOL:
            raise InvalidStateError(f"Ensemble probabilities sum to {total!r}, expected 1")

    @classmethod
    def of(
        cls,
        pairs: Sequence[tuple[float, PureState]],
        labels: Sequence[str] | None = None,
    ) -> WeightedEnsemble:
        """Build from (probability, state) pairs with optional labels."""
        labels = list(labels) if labels is not None else [""] * len(pairs)
        if len(labels) != len(pairs):
            raise InvalidStateError("Number of labels must match number of members")
        return cls(tuple(EnsembleMember(float(p), s, lbl) for (p, s), lbl in zip(pairs, labels, strict=True)))

    def __len__(self) -> int:
        return len(self.members)

    @property
    def probabilities(self) -> tuple[float, ...]:
        return tuple(m.probability for m in self.members)

    @property
    def states(self) -> tuple[PureState, ...]:
        return tuple(m.state for m in self.members)


@dataclass(frozen=True)
class OverlapTriple:
    """Pairwise overlaps alpha=|<x|y>|^2, beta=|<x|z>|^2, gamma=|<y|z>|^2."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            value = float(getattr(self, name))
            if not (0.0 <= value <= 1.0):
                raise InvalidStateError(f"Overlap {name}={value!r} outside [0, 1]")
            object.__setattr__(self, name, value)

    def as_tuple(self) -> Vector3:
        return (self.alpha, self.beta, self.gamma)

    @classmethod
    def from_states(cls, x: PureState, y: PureState, z: PureState) -> OverlapTriple:
        return cls(overlap(x, y), overlap(x, z), overlap(y, z))


def overlap(s1: PureState, s2: PureState) -> float:
    """|<s1|s2>|^2 = (1 + bloch1 . bloch2) / 2, clipped to [0, 1]."""
    dot = math.fsum(a * b for a, b in zip(s1.bloch, s2.bloch, strict=True))
    return min(1.0, max(0.0, (1.0 + dot) / 2.0))


def ensemble_average(e: WeightedEnsemble) -> MixedState:
    """The density matrix sum_i p_i |phi_i><phi_i| as a MixedState."""
    components = [math.fsum(m.probability * m.state.bloch[axis] for m in e.members) for axis in range(3)]
    return MixedState(bloch=tuple(components))  # type: ignore[arg-type]


def bisector(x: PureState, y: PureState, *, allow_antipodal: bool = False) -> PureState:
    """
    The state bisecting x and y: (|x> + |y>) renormalized, with y rephased
    so that <x|y> is real and nonnegative.

    Args:
        x: First state.
        y: Second state.
        allow_antipodal: For orthogonal inputs, sum the canonical-gauge
            amplitudes as given instead of raising.

    Returns:
        The bisecting pure state; its overlap with x and y is (1 + sqrt(alpha)) / 2.

    Raises:
        AntipodalInputError: x and y are orthogonal and allow_antipodal is False.
    """
    kx, ky = x.ket(), y.ket()
    inner = complex(np.vdot(kx, ky))
    if abs(inner) < ANTIPODAL_TOL:
        if not allow_antipodal:
            raise AntipodalInputError()
    else:
        ky = ky * (inner.conjugate() / abs(inner))
    total = kx + ky
    return PureState.from_amplitudes(complex(total[0]), complex(total[1]))


def gram_determinant(t: OverlapTriple) -> float:
    """Determinant of the Bloch Gram matrix with off-diagonals 2*overlap - 1."""
    a, b, c = (2.0 * v - 1.0 for v in t.as_tuple())
    return 1.0 + 2.0 * a * b * c - a * a - b * b - c * c


def realizable(t: OverlapTriple) -> bool:
    """Whether three qubit pure states with these pairwise overlaps exist."""
    return gram_determinant(t) >= -GRAM_DET_TOL


def states_from_triple(t: OverlapTriple) -> tuple[PureState, PureState, PureState]:
    """
    Three pure states (x, y, z) with overlap(x,y)=alpha, overlap(x,z)=beta,
    overlap(y,z)=gamma.

    x sits on +z of the Bloch sphere, y in the xz-plane, and z is completed
    from the two remaining Gram entries.

    Raises:
        NotRealizableError: the Gram matrix is not positive semidefinite.
    """
    det = gram_determinant(t)
    if det < -GRAM_DET_TOL:
        raise NotRealizableError(t.as_tuple(), det)
    c12, c13, c23 = (2.0 * v - 1.0 for v in t.as_tuple())
    s12 = math.sqrt(max(0.0, 1.0 - c12 * c12))
    v1 = (0.0, 0.0, 1.0)
    v2 = (s12, 0.0, c12)
    if s12 > DEGENERATE_AXIS_TOL:
        v3x = (c23 - c12 * c13) / s12
    else:
        # v2 = +-v1; the completion only needs the angle to v1.
        v3x = math.sqrt(max(0.0, 1.0 - c13 * c13))
    v3y = math.sqrt(max(0.0, 1.0 - v3x * v3x - c13 * c13))
    return (
        PureState(bloch=v1),
        PureState.from_bloch(v2),
        PureState.from_bloch((v3x, v3y, c13)),
    )


__all__ = [
    "IDENTITY",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "EnsembleMember",
    "MixedState",
    "OverlapTriple",
    "PureState",
    "WeightedEnsemble",
    "bisector",
    "ensemble_average",
    "gram_determinant",
    "overlap",
    "realizable",
    "states_from_triple",
]
