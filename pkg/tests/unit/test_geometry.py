"""Unit tests for qubit states, ensembles, overlaps and the bisector."""

import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from steerlhv.model.exceptions import AntipodalInputError, InvalidStateError, NotRealizableError
from steerlhv.model.geometry import (
    MixedState,
    OverlapTriple,
    PureState,
    WeightedEnsemble,
    bisector,
    ensemble_average,
    gram_determinant,
    overlap,
    realizable,
    states_from_triple,
)

ZERO = PureState(bloch=(0.0, 0.0, 1.0))
ONE = PureState(bloch=(0.0, 0.0, -1.0))
PLUS = PureState(bloch=(1.0, 0.0, 0.0))

unit_interval = st.floats(min_value=0.02, max_value=0.98, allow_nan=False)


class TestPureState:
    def test_rejects_non_unit_bloch(self):
        with pytest.raises(InvalidStateError):
            PureState(bloch=(0.0, 0.0, 0.5))

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidStateError):
            PureState(bloch=(math.nan, 0.0, 1.0))

    def test_from_bloch_rescales(self):
        s = PureState.from_bloch((0.0, 0.0, 3.0))
        assert s.bloch == (0.0, 0.0, 1.0)

    def test_from_bloch_zero_vector(self):
        with pytest.raises(InvalidStateError):
            PureState.from_bloch((0.0, 0.0, 0.0))

    def test_from_amplitudes_canonical_gauge(self):
        s = PureState.from_amplitudes(1j, 0.0)
        assert s.amplitudes == (1 + 0j, 0j)
        assert s.bloch == pytest.approx((0.0, 0.0, 1.0))

    def test_from_amplitudes_gauge_second_component(self):
        s = PureState.from_amplitudes(0.0, -1j)
        assert s.amplitudes == (0j, 1 + 0j)

    def test_amplitudes_must_match_bloch(self):
        with pytest.raises(InvalidStateError):
            PureState(bloch=(0.0, 0.0, 1.0), amplitudes=(0.0, 1.0))

    def test_antipode_is_orthogonal(self):
        s = PureState.from_amplitudes(0.6, 0.8j)
        assert overlap(s, s.antipode()) == pytest.approx(0.0, abs=1e-12)

    def test_from_dict_amp(self):
        s = PureState.from_dict({"amp": [[0.0, 0.0], [1.0, 0.0]]})
        assert s.bloch == pytest.approx((0.0, 0.0, -1.0))

    def test_from_dict_missing_keys(self):
        with pytest.raises(InvalidStateError):
            PureState.from_dict({"vector": [0, 0, 1]})


class TestMixedState:
    def test_matrix_roundtrip(self):
        rho = MixedState(bloch=(0.1, -0.2, 0.3))
        assert MixedState.from_matrix(rho.matrix()).bloch == pytest.approx((0.1, -0.2, 0.3))

    def test_outside_ball(self):
        with pytest.raises(InvalidStateError):
            MixedState(bloch=(1.0, 1.0, 0.0))

    def test_eigenvalues(self):
        assert MixedState(bloch=(0.0, 0.0, 0.4)).eigenvalues() == pytest.approx((0.3, 0.7))

    def test_expectation_of_maximally_mixed(self):
        assert MixedState.maximally_mixed().expectation(PLUS) == pytest.approx(0.5)


class TestWeightedEnsemble:
    def test_probabilities_must_sum_to_one(self):
        with pytest.raises(InvalidStateError):
            WeightedEnsemble.of([(0.5, ZERO), (0.4, ONE)])

    def test_negative_probability(self):
        with pytest.raises(InvalidStateError):
            WeightedEnsemble.of([(1.5, ZERO), (-0.5, ONE)])

    def test_label_count(self):
        with pytest.raises(InvalidStateError):
            WeightedEnsemble.of([(1.0, ZERO)], labels=("a", "b"))

    def test_equal_mixture_of_basis_is_maximally_mixed(self):
        e = WeightedEnsemble.of([(0.5, PLUS), (0.5, PLUS.antipode())])
        assert ensemble_average(e).radius == pytest.approx(0.0, abs=1e-15)

    def test_average_of_biased_mixture(self):
        e = WeightedEnsemble.of([(0.8, ZERO), (0.2, ONE)])
        assert ensemble_average(e).bloch == pytest.approx((0.0, 0.0, 0.6))


class TestOverlap:
    def test_orthogonal(self):
        assert overlap(ZERO, ONE) == 0.0

    def test_mutually_unbiased(self):
        assert overlap(ZERO, PLUS) == pytest.approx(0.5)

    def test_amplitude_formula(self):
        half = 0.4
        a = PureState.from_amplitudes(math.cos(half), math.sin(half))
        assert overlap(a, ONE) == pytest.approx(math.sin(half) ** 2)

    @given(st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)), st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)))
    def test_symmetric_and_bounded(self, u, v):
        assume(np.linalg.norm(u) > 1e-3 and np.linalg.norm(v) > 1e-3)
        s, t = PureState.from_bloch(u), PureState.from_bloch(v)
        assert overlap(s, t) == overlap(t, s)
        assert 0.0 <= overlap(s, t) <= 1.0
        kets = abs(np.vdot(s.ket(), t.ket())) ** 2
        assert overlap(s, t) == pytest.approx(kets, abs=1e-8)


class TestBisector:
    def test_orthogonal_inputs_raise(self):
        with pytest.raises(AntipodalInputError):
            bisector(ZERO, ONE)

    def test_orthogonal_inputs_allowed(self):
        z = bisector(ZERO, ONE, allow_antipodal=True)
        assert overlap(z, ZERO) == pytest.approx(0.5)
        assert overlap(z, ONE) == pytest.approx(0.5)

    def test_quarter_overlap(self):
        y = PureState.from_bloch((math.sqrt(1 - 0.25), 0.0, -0.5))
        assert overlap(ZERO, y) == pytest.approx(0.25)
        z = bisector(ZERO, y)
        assert overlap(z, ZERO) == pytest.approx(0.75)
        assert overlap(z, y) == pytest.approx(0.75)

    @given(unit_interval, st.floats(0.0, 2 * math.pi))
    def test_overlap_formula(self, alpha, phase):
        c = 2 * alpha - 1
        s = math.sqrt(1 - c * c)
        x = PureState.from_bloch((s * math.cos(phase), s * math.sin(phase), c))
        z = bisector(ZERO, x)
        expected = (1 + math.sqrt(alpha)) / 2
        assert overlap(z, ZERO) == pytest.approx(expected, abs=1e-10)
        assert overlap(z, x) == pytest.approx(expected, abs=1e-10)


class TestTriples:
    def test_pauli_triple_realizable(self, pauli_triple):
        assert realizable(pauli_triple)
        assert gram_determinant(pauli_triple) == pytest.approx(1.0)

    def test_inconsistent_triple(self):
        t = OverlapTriple(1.0, 0.0, 1.0)
        assert not realizable(t)
        with pytest.raises(NotRealizableError):
            states_from_triple(t)

    def test_component_range(self):
        with pytest.raises(InvalidStateError):
            OverlapTriple(1.2, 0.5, 0.5)

    def test_bisecting_triple_is_planar(self):
        beta = (1 + math.sqrt(0.5)) / 2
        assert gram_determinant(OverlapTriple(0.5, beta, beta)) == pytest.approx(0.0, abs=1e-12)

    @given(unit_interval, unit_interval, unit_interval)
    def test_states_reproduce_triple(self, alpha, beta, gamma):
        t = OverlapTriple(alpha, beta, gamma)
        assume(gram_determinant(t) > 1e-6)
        x, y, z = states_from_triple(t)
        assert OverlapTriple.from_states(x, y, z).as_tuple() == pytest.approx(t.as_tuple(), abs=1e-9)
