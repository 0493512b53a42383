"""Unit tests for the steering criterion and measurement construction."""

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from steerlhv.model.exceptions import InvalidStateError, NotSteerableError, RankDeficientError
from steerlhv.model.geometry import MixedState, PureState, WeightedEnsemble, ensemble_average
from steerlhv.model.steering import (
    BipartitePureState,
    Measurement,
    average_deviation,
    construct_steering_measurement,
    purify,
    random_decomposition,
    reduced_state,
    steered_ensemble,
    steering_possible,
)

ZERO = PureState(bloch=(0.0, 0.0, 1.0))
ONE = PureState(bloch=(0.0, 0.0, -1.0))
PLUS = PureState(bloch=(1.0, 0.0, 0.0))
MINUS = PureState(bloch=(-1.0, 0.0, 0.0))


def _random_mixed(rng: np.random.Generator) -> MixedState:
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    radius = rng.uniform(0.0, 0.9)
    return MixedState(bloch=tuple(float(v) for v in radius * direction))


def _postcondition(psi, ensemble, measurement):
    steered = steered_ensemble(psi, measurement)
    worst = 0.0
    for got, want in zip(steered.members, ensemble.members, strict=True):
        assert got.probability == pytest.approx(want.probability, abs=1e-9)
        if want.probability > 1e-6:
            worst = max(worst, float(np.max(np.abs(got.state.matrix() - want.state.projector()))))
    return worst


class TestBipartitePureState:
    def test_singlet_reduces_to_maximally_mixed(self):
        assert reduced_state(BipartitePureState.singlet()).radius == pytest.approx(0.0, abs=1e-15)

    def test_schmidt_reduced_state(self):
        rho = reduced_state(BipartitePureState.schmidt(0.8))
        assert rho.bloch == pytest.approx((0.0, 0.0, 0.6))

    def test_rejects_unnormalized(self):
        with pytest.raises(InvalidStateError):
            BipartitePureState(np.array([[1.0, 0.0], [1.0, 0.0]]))

    def test_rejects_wrong_shape(self):
        with pytest.raises(InvalidStateError):
            BipartitePureState(np.array([[1.0, 0.0, 0.0]]))

    def test_product_state(self):
        psi = BipartitePureState.product(np.array([1.0, 1.0]), PLUS)
        assert reduced_state(psi).bloch == pytest.approx((1.0, 0.0, 0.0))


class TestMeasurement:
    def test_rejects_non_psd(self):
        with pytest.raises(InvalidStateError):
            Measurement((np.diag([1.0, -0.5]),))

    def test_rejects_mixed_shapes(self):
        with pytest.raises(InvalidStateError):
            Measurement((np.eye(2), np.eye(3)))

    def test_completeness_of_projective(self):
        m = Measurement((np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))
        assert m.completeness_residual(BipartitePureState.singlet()) == pytest.approx(0.0, abs=1e-15)


class TestSteering:
    def test_singlet_to_z_basis(self):
        psi = BipartitePureState.singlet()
        e = WeightedEnsemble.of([(0.5, ZERO), (0.5, ONE)])
        m = construct_steering_measurement(psi, e)
        assert np.allclose(m.elements[0], np.diag([0.0, 1.0]), atol=1e-10)
        assert np.allclose(m.elements[1], np.diag([1.0, 0.0]), atol=1e-10)
        assert _postcondition(psi, e, m) < 1e-10

    def test_singlet_three_member_ensemble(self):
        psi = BipartitePureState.singlet()
        trine = [PureState.from_bloch((np.sin(t), 0.0, np.cos(t))) for t in (0.0, 2 * np.pi / 3, 4 * np.pi / 3)]
        e = WeightedEnsemble.of([(1 / 3, s) for s in trine])
        m = construct_steering_measurement(psi, e)
        assert len(m) == 3
        assert m.completeness_residual(psi) < 1e-10
        assert m.min_eigenvalue() > -1e-10
        assert _postcondition(psi, e, m) < 1e-9

    def test_random_pairs(self, rng):
        for _ in range(200):
            rho = _random_mixed(rng)
            d_a = int(rng.integers(2, 5))
            psi = purify(rho, d_a=d_a)
            e = random_decomposition(rho, int(rng.integers(2, 6)), rng)
            assert steering_possible(psi, e)
            m = construct_steering_measurement(psi, e)
            assert m.completeness_residual(psi) < 1e-8
            assert m.min_eigenvalue() > -1e-8
            assert _postcondition(psi, e, m) < 1e-7

    def test_biased_ensemble_not_steerable(self):
        psi = BipartitePureState.singlet()
        e = WeightedEnsemble.of([(0.7, ZERO), (0.3, ONE)])
        assert not steering_possible(psi, e)
        with pytest.raises(NotSteerableError) as info:
            construct_steering_measurement(psi, e)
        assert info.value.deviation == pytest.approx(0.2)

    def test_perturbed_ensembles_not_steerable(self, rng):
        psi = BipartitePureState.schmidt(0.7)
        rho = reduced_state(psi)
        for _ in range(200):
            e = random_decomposition(rho, 3, rng)
            heaviest = int(np.argmax(e.probabilities))
            bloch = np.asarray(e.members[heaviest].state.bloch)
            axis = np.cross(bloch, rng.normal(size=3))
            tilted = PureState.from_bloch(Rotation.from_rotvec(0.2 * axis / np.linalg.norm(axis)).apply(bloch))
            perturbed = WeightedEnsemble.of([(m.probability, tilted if i == heaviest else m.state) for i, m in enumerate(e.members)])
            with pytest.raises(NotSteerableError):
                construct_steering_measurement(psi, perturbed)

    def test_member_outside_support(self):
        psi = BipartitePureState.schmidt(1.0)
        e = WeightedEnsemble.of([(1.0 - 1e-11, ZERO), (1e-11, ONE)])
        with pytest.raises(RankDeficientError) as info:
            construct_steering_measurement(psi, e)
        assert info.value.member == 1

    def test_kernel_added_to_first_element(self):
        psi = BipartitePureState(np.array([[2**-0.5, 0.0], [0.0, 2**-0.5], [0.0, 0.0]]))
        e = WeightedEnsemble.of([(0.5, PLUS), (0.5, MINUS)])
        m = construct_steering_measurement(psi, e)
        total = sum(m.elements)
        assert np.allclose(total, np.eye(3), atol=1e-10)
        assert m.elements[0][2, 2].real == pytest.approx(1.0)

    def test_steered_average_matches_reduced_state(self):
        psi = BipartitePureState.schmidt(0.3)
        m = Measurement((np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))
        steered = steered_ensemble(psi, m)
        assert steered.average().bloch == pytest.approx(reduced_state(psi).bloch, abs=1e-12)

    def test_to_weighted_ensemble(self):
        psi = BipartitePureState.singlet()
        e = WeightedEnsemble.of([(0.5, PLUS), (0.5, MINUS)])
        recovered = steered_ensemble(psi, construct_steering_measurement(psi, e)).to_weighted_ensemble()
        assert recovered.probabilities == pytest.approx((0.5, 0.5))
        assert recovered.members[0].state.bloch == pytest.approx(PLUS.bloch, abs=1e-9)


class TestDecompositions:
    def test_purify_reproduces_state(self, rng):
        rho = _random_mixed(rng)
        assert reduced_state(purify(rho, d_a=3)).bloch == pytest.approx(rho.bloch, abs=1e-12)

    def test_purify_needs_two_levels(self):
        with pytest.raises(InvalidStateError):
            purify(MixedState.maximally_mixed(), d_a=1)

    def test_random_decomposition_averages(self, rng):
        rho = _random_mixed(rng)
        e = random_decomposition(rho, 4, rng)
        assert len(e) == 4
        assert ensemble_average(e).bloch == pytest.approx(rho.bloch, abs=1e-10)

    def test_random_decomposition_size(self, rng):
        with pytest.raises(InvalidStateError):
            random_decomposition(MixedState.maximally_mixed(), 1, rng)
