"""Unit tests for tetrahedron membership of overlap triples."""

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy.spatial import Delaunay

from steerlhv.analysis.hull import VERTICES, HullVerdict, barycentric_weights, hull_membership
from steerlhv.model.builders import bisecting_triple
from steerlhv.model.exceptions import InvalidParameterError
from steerlhv.model.geometry import OverlapTriple

component = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
TETRAHEDRON = Delaunay(np.array(VERTICES))


class TestBarycentric:
    def test_weights_reproduce_point(self):
        t = OverlapTriple(0.7, 0.6, 0.4)
        weights = barycentric_weights(t)
        assert sum(weights) == pytest.approx(1.0)
        assert np.asarray(weights) @ np.asarray(VERTICES) == pytest.approx(t.as_tuple())

    def test_vertices(self):
        for vertex in VERTICES:
            assert min(barycentric_weights(OverlapTriple(*vertex))) == pytest.approx(0.0)


class TestMembership:
    def test_pauli_triple_inside(self, pauli_triple):
        membership = hull_membership(pauli_triple)
        assert membership.verdict is HullVerdict.INSIDE
        assert membership.weights == pytest.approx((0.25, 0.25, 0.25, 0.25))

    def test_bisecting_triple_outside(self):
        assert hull_membership(bisecting_triple(0.25)).verdict is HullVerdict.OUTSIDE

    def test_boundary_band(self):
        t = OverlapTriple(0.25, 0.25, 0.5)
        assert hull_membership(t).verdict is HullVerdict.BOUNDARY
        assert hull_membership(t, margin=0.0).verdict is HullVerdict.INSIDE

    def test_negative_margin(self):
        with pytest.raises(InvalidParameterError):
            hull_membership(OverlapTriple(0.5, 0.5, 0.5), margin=-1e-3)

    @given(component, component, component)
    def test_agrees_with_delaunay(self, alpha, beta, gamma):
        t = OverlapTriple(alpha, beta, gamma)
        membership = hull_membership(t, margin=0.0)
        assume(abs(membership.min_weight) > 1e-9)
        inside = TETRAHEDRON.find_simplex(np.array([t.as_tuple()]))[0] >= 0
        assert (membership.verdict is HullVerdict.INSIDE) == inside
