"""
Steering of a qubit B through measurements on an entangled partner A.

A measurement on A can collapse B to the ensemble {p_i, |phi_i>} if and only
if rho_B = sum_i p_i |phi_i><phi_i|. This module checks that criterion,
builds the measurement explicitly from the Schmidt decomposition of the
joint state (the HJW construction) and simulates the steered ensemble so a
construction can be verified end to end.

Conventions: |psi> = sum_jk C[j, k] |j>_A |k>_B, so rho_B = C^T conj(C)
and the unnormalized state of B after element M is C^T M^T conj(C).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import (
    AVERAGE_MATCH_TOL,
    PSD_TOL,
    SCHMIDT_CUTOFF,
    SUPPORT_TOL,
    UNIT_NORM_TOL,
)
from .exceptions import (
    InvalidStateError,
    NotSteerableError,
    RankDeficientError,
)
from .geometry import MixedState, PureState, WeightedEnsemble, ensemble_average
from .log import LogComponent, get_logger

logger = get_logger(LogComponent.STEERING)


@dataclass(frozen=True, eq=False)
class BipartitePureState:
    """A pure state of A (dimension d_A >= 2) and a qubit B, as its d_A x 2 coefficient matrix."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.ndim != 2 or coeffs.shape[1] != 2 or coeffs.shape[0] < 2:
            raise InvalidStateError(f"Coefficient matrix must be d_A x 2 with d_A >= 2, got shape {coeffs.shape}")
        norm = float(np.linalg.norm(coeffs))
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise InvalidStateError(f"Bipartite state must have unit norm, got {norm!r}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def dim_a(self) -> int:
        return int(self.coeffs.shape[0])

    @classmethod
    def singlet(cls) -> BipartitePureState:
        """(|01> - |10>) / sqrt(2)."""
        r = 2**-0.5
        return cls(np.array([[0.0, r], [-r, 0.0]], dtype=complex))

    @classmethod
    def schmidt(cls, q: float) -> BipartitePureState:
        """sqrt(q)|00> + sqrt(1-q)|11>."""
        return cls(np.array([[np.sqrt(q), 0.0], [0.0, np.sqrt(1.0 - q)]], dtype=complex))

    @classmethod
    def product(cls, a_ket: np.ndarray, b_state: PureState) -> BipartitePureState:
        a = np.asarray(a_ket, dtype=complex)
        a = a / np.linalg.norm(a)
        return cls(np.outer(a, b_state.ket()))

    def reduced_a(self) -> np.ndarray:
        """rho_A = C C^dagger."""
        return self.coeffs @ self.coeffs.conj().T


@dataclass(frozen=True, eq=False)
class Measurement:
    """A POVM on system A: a list of PSD d_A x d_A elements."""

    elements: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        elements = tuple(np.array(m, dtype=complex) for m in self.elements)
        if not elements:
            raise InvalidStateError("Measurement needs at least one element")
        dim = elements[0].shape[0]
        for i, m in enumerate(elements):
            if m.shape != (dim, dim):
                raise InvalidStateError(f"Element {i} has shape {m.shape}, expected ({dim}, {dim})")
            hermitian = 0.5 * (m + m.conj().T)
            min_eig = float(np.linalg.eigvalsh(hermitian).min())
            if min_eig < -PSD_TOL:
                raise InvalidStateError(f"Element {i} is not PSD (min eigenvalue {min_eig:.3e})")
            m.setflags(write=False)
        object.__setattr__(self, "elements", elements)

    def __len__(self) -> int:
        return len(self.elements)

    def completeness_residual(self, psi: BipartitePureState) -> float:
        """Max entrywise deviation of sum(M_i) from the identity on supp(rho_A)."""
        u, s, _ = np.linalg.svd(psi.coeffs, full_matrices=False)
        u = u[:, s > SCHMIDT_CUTOFF]
        proj = u @ u.conj().T
        total = sum(self.elements)
        return float(np.max(np.abs(proj @ total @ proj - proj)))

    def min_eigenvalue(self) -> float:
        return float(min(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min() for m in self.elements))


@dataclass(frozen=True)
class SteeredMember:
    """One outcome of a measurement on A: its probability and B's normalized state (None if p = 0)."""

    probability: float
    state: MixedState | None


@dataclass(frozen=True)
class SteeredEnsemble:
    """Outcome probabilities and conditional states of B."""

    members: tuple[SteeredMember, ...]

    def average(self) -> MixedState:
        bloch = np.zeros(3)
        for member in self.members:
            if member.state is not None:
                bloch += member.probability * np.asarray(member.state.bloch)
        norm = float(np.linalg.norm(bloch))
        if norm > 1.0:
            bloch /= norm
        return MixedState(bloch=tuple(float(v) for v in bloch))  # type: ignore[arg-type]

    def to_weighted_ensemble(self, purity_tol: float = 1e-8) -> WeightedEnsemble:
        """Convert to a pure-state ensemble; zero-probability outcomes are dropped."""
        pairs = []
        for i, member in enumerate(self.members):
            if member.state is None:
                continue
            if abs(member.state.radius - 1.0) > purity_tol:
                raise InvalidStateError(f"Steered member {i} is mixed (|bloch|={member.state.radius:.6f})")
            pairs.append((member.probability, PureState.from_bloch(member.state.bloch)))
        total = sum(p for p, _ in pairs)
        return WeightedEnsemble.of([(p / total, s) for p, s in pairs])


def _conditional(psi: BipartitePureState, element: np.ndarray) -> np.ndarray:
    """Tr_A[(M x I)|psi><psi|] = C^T M^T conj(C)."""
    c = psi.coeffs
    return c.T @ element.T @ c.conj()


def reduced_state(psi: BipartitePureState) -> MixedState:
    """rho_B = Tr_A |psi><psi|."""
    c = psi.coeffs
    return MixedState.from_matrix(c.T @ c.conj())


def average_deviation(psi: BipartitePureState, e: WeightedEnsemble) -> float:
    """Entrywise distance between the ensemble average and rho_B."""
    return reduced_state(psi).max_deviation(ensemble_average(e))


def steering_possible(psi: BipartitePureState, e: WeightedEnsemble) -> bool:
    """Whether some measurement on A steers B to the ensemble e."""
    return average_deviation(psi, e) <= AVERAGE_MATCH_TOL


def construct_steering_measurement(psi: BipartitePureState, e: WeightedEnsemble) -> Measurement:
    """
    Build the measurement on A that steers B to ``e``.

    With C = U S V^dagger (Schmidt form), element i is
    U S^-1 V^dagger conj(tau_i) V S^-1 U^dagger where tau_i = p_i |phi_i><phi_i|.
    The projector onto the kernel of rho_A is added to the first element so
    the elements sum to the identity on all of A.

    Args:
        psi: The shared bipartite pure state.
        e: Target ensemble for B.

    Returns:
        One PSD element per ensemble member.

    Raises:
        NotSteerableError: the ensemble does not average to rho_B.
        RankDeficientError: a member with p_i > 0 lies outside supp(rho_B).
    """
    deviation = average_deviation(psi, e)
    if deviation > AVERAGE_MATCH_TOL:
        raise NotSteerableError(deviation)

    u, s, vh = np.linalg.svd(psi.coeffs, full_matrices=False)
    keep = s > SCHMIDT_CUTOFF
    u, s, vh = u[:, keep], s[keep], vh[keep, :]
    support_b = vh.T @ vh.conj()
    s_inv = np.diag(1.0 / s)

    elements: list[np.ndarray] = []
    for i, member in enumerate(e.members):
        ket = member.state.ket()
        if member.probability > 0.0:
            residual = float(np.linalg.norm(ket - support_b @ ket))
            if residual > SUPPORT_TOL:
                raise RankDeficientError(i, residual)
        tau = member.probability * np.outer(ket, ket.conj())
        kt = s_inv @ vh @ tau.conj() @ vh.conj().T @ s_inv
        elements.append(u @ kt @ u.conj().T)

    kernel = np.eye(psi.dim_a, dtype=complex) - u @ u.conj().T
    elements[0] = elements[0] + kernel
    elements = [0.5 * (m + m.conj().T) for m in elements]

    measurement = Measurement(tuple(elements))
    worst = max(
        float(np.max(np.abs(_conditional(psi, m) - member.probability * member.state.projector())))
        for m, member in zip(measurement.elements, e.members, strict=True)
    )
    logger.debug(f"Constructed {len(measurement)}-element measurement on d_A={psi.dim_a}, postcondition residual {worst:.2e}")
    return measurement


def _clipped_state(rho: np.ndarray) -> MixedState:
    """Density matrix to Bloch vector, pulling rounding overshoot back onto the sphere."""
    bloch = np.array([2.0 * rho[0, 1].real, -2.0 * rho[0, 1].imag, (rho[0, 0] - rho[1, 1]).real])
    norm = float(np.linalg.norm(bloch))
    if norm > 1.0:
        bloch /= norm
    return MixedState(bloch=tuple(float(v) for v in bloch))  # type: ignore[arg-type]


def steered_ensemble(psi: BipartitePureState, m: Measurement) -> SteeredEnsemble:
    """Outcome probabilities and normalized conditional states of B."""
    members = []
    for element in m.elements:
        sigma = _conditional(psi, element)
        p = float(np.trace(sigma).real)
        state = _clipped_state(sigma / p) if p > SCHMIDT_CUTOFF else None
        members.append(SteeredMember(probability=p, state=state))
    return SteeredEnsemble(tuple(members))


def purify(rho: MixedState, d_a: int = 2) -> BipartitePureState:
    """A bipartite pure state whose reduced state on B is ``rho``."""
    if d_a < 2:
        raise InvalidStateError(f"d_A must be at least 2, got {d_a}")
    weights, vectors = np.linalg.eigh(rho.matrix())
    coeffs = np.zeros((d_a, 2), dtype=complex)
    for r in range(2):
        coeffs[r, :] = np.sqrt(max(float(weights[r]), 0.0)) * vectors[:, r]
    return BipartitePureState(coeffs / np.linalg.norm(coeffs))


def random_decomposition(rho: MixedState, size: int, rng: np.random.Generator) -> WeightedEnsemble:
    """
    A random ensemble of ``size`` pure states averaging to ``rho``.

    Any such ensemble is sum_r W[i, r] sqrt(lambda_r) |v_r> for an isometry W;
    W is drawn from the QR decomposition of a complex Gaussian matrix.
    """
    if size < 2:
        raise InvalidStateError(f"Decomposition size must be at least 2, got {size}")
    weights, vectors = np.linalg.eigh(rho.matrix())
    roots = np.sqrt(np.clip(weights, 0.0, None))
    gaussian = rng.normal(size=(size, 2)) + 1j * rng.normal(size=(size, 2))
    isometry, _ = np.linalg.qr(gaussian)
    pairs = []
    for i in range(size):
        unnormalized = vectors @ (isometry[i, :] * roots)
        p = float(np.vdot(unnormalized, unnormalized).real)
        pairs.append((p, PureState.from_amplitudes(complex(unnormalized[0]), complex(unnormalized[1]))))
    total = sum(p for p, _ in pairs)
    return WeightedEnsemble.of([(p / total, s) for p, s in pairs])


__all__ = [
    "BipartitePureState",
    "Measurement",
    "SteeredEnsemble",
    "SteeredMember",
    "average_deviation",
    "construct_steering_measurement",
    "purify",
    "random_decomposition",
    "reduced_state",
    "steered_ensemble",
    "steering_possible",
]
