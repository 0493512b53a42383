"""Unit tests for the hand-derived marginal systems."""

import math

import pytest

from steerlhv.lp import equality_pins, solve_feasibility, verify_witness
from steerlhv.model.assembly import RowSense, assemble
from steerlhv.model.builders import bisecting_triple, gpr, nonorthogonal_pair, three_orthogonal, two_orthogonal, werner
from steerlhv.model.exceptions import UnsupportedScenarioError
from steerlhv.model.geometry import PureState, WeightedEnsemble
from steerlhv.model.marginal import marginal_projection, marginal_system, project_point
from steerlhv.model.scenario import Scenario


def _named(system, label):
    names = system.variables.names
    return [(names[i], c) for i, c in system.row(label).coeffs]


class TestSideSystems:
    @pytest.mark.parametrize("theta", [0.3, math.pi / 3, 1.2])
    def test_nonorthogonal_pins_negative_mass(self, theta):
        system = marginal_system(nonorthogonal_pair(theta))
        assert system.labels() == ["norm[X]", "born[X→a]", "born[X→b]"]
        pins = equality_pins(system)
        assert pins.pinned["X5"] == pytest.approx(-math.cos(theta), abs=1e-9)
        assert not solve_feasibility(system).feasible

    def test_gpr_pins_negative_mass(self):
        pins = equality_pins(marginal_system(gpr(0.7)))
        assert pins.pinned["X5"] == pytest.approx(1 - 2 * 0.7, abs=1e-9)

    def test_gpr_x_side_below_half(self):
        pins = equality_pins(marginal_system(gpr(0.3)))
        assert pins.pinned["x2"] == pytest.approx(2 * 0.3 - 1, abs=1e-9)

    def test_two_orthogonal_is_full_system(self):
        system = marginal_system(two_orthogonal(0.25))
        assert system.shape == (20, 12)
        assert solve_feasibility(system).feasible


class TestRegionSystem:
    def test_bisecting_rows(self):
        system = marginal_system(three_orthogonal(bisecting_triple(0.25)))
        assert system.variables.names == ["z1", "z2", "z3", "z4", "Z1", "Z2", "Z3", "Z4"]
        assert system.shape == (12, 8)
        assert system.row("born[z→x]").rhs == pytest.approx(0.75)
        assert system.row("born[z→Y]").rhs == pytest.approx(0.25)
        assert system.row("mix[z|Z@region1]").rhs == pytest.approx(0.25)

    @pytest.mark.parametrize("alpha", [0.1, 0.25, 0.6])
    def test_bisecting_infeasible(self, alpha):
        report = solve_feasibility(marginal_system(three_orthogonal(bisecting_triple(alpha))))
        assert not report.feasible

    def test_forced_negative_mass(self):
        alpha = 0.25
        system = marginal_system(three_orthogonal(bisecting_triple(alpha)))
        assert {n for n, _ in _named(system, "born[z→x]")} == {"z1", "z2"}
        assert {n for n, _ in _named(system, "born[z→Y]")} == {"z2", "z4"}
        assert {n for n, _ in _named(system, "mix[z|Z@region1]")} == {"z1", "Z1"}
        for z4 in (0.0, 0.1, 0.2):
            z1 = system.row("born[z→x]").rhs - (system.row("born[z→Y]").rhs - z4)
            big_z1 = system.row("mix[z|Z@region1]").rhs - z1
            assert big_z1 == pytest.approx(alpha - math.sqrt(alpha) - z4)
            assert big_z1 < 0

    def test_projection_of_feasible_point(self, pauli_triple):
        scenario = three_orthogonal(pauli_triple)
        report = solve_feasibility(assemble(scenario))
        assert report.feasible
        marginal = marginal_system(scenario)
        projected = project_point(scenario, report.witness_values())
        assert verify_witness(marginal, marginal.point(projected)) <= 1e-9

    def test_projection_names(self, pauli_triple):
        projection = marginal_projection(three_orthogonal(pauli_triple))
        assert sorted(projection) == sorted(["z1", "z2", "z3", "z4", "Z1", "Z2", "Z3", "Z4"])
        assert all(len(parts) == 1 for parts in projection.values())


class TestUnsupported:
    def test_custom_scenario(self):
        zero, one = PureState(bloch=(0.0, 0.0, 1.0)), PureState(bloch=(0.0, 0.0, -1.0))
        plus, minus = PureState(bloch=(1.0, 0.0, 0.0)), PureState(bloch=(-1.0, 0.0, 0.0))
        scenario = Scenario((WeightedEnsemble.of([(0.5, zero), (0.5, one)]), WeightedEnsemble.of([(0.5, plus), (0.5, minus)])))
        with pytest.raises(UnsupportedScenarioError):
            marginal_system(scenario)

    def test_werner_weight(self):
        with pytest.raises(UnsupportedScenarioError):
            marginal_system(werner(0.5, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]))

    def test_werner_builder_at_unit_weight(self):
        with pytest.raises(UnsupportedScenarioError):
            marginal_system(werner(1.0, [(1, 0, 0), (0, 1, 0)]))


def _rows(system):
    names = system.variables.names
    return {row.label: ({names[i]: c for i, c in row.coeffs}, row.rhs, row.sense) for row in system.rows}


def _assert_rows(system, expected):
    rows = _rows(system)
    assert sorted(rows) == sorted(expected)
    for label, (coeffs, rhs) in expected.items():
        got_coeffs, got_rhs, sense = rows[label]
        assert sense is RowSense.EQ, label
        assert got_coeffs == pytest.approx(coeffs), label
        assert got_rhs == pytest.approx(rhs, abs=1e-12), label


class TestHandDerivedRows:
    def test_two_orthogonal(self):
        a = 0.25
        expected = {
            "norm[x]": ({"x1": 1, "x2": 1}, 1),
            "norm[X]": ({"X3": 1, "X4": 1}, 1),
            "norm[y]": ({"y1": 1, "y3": 1}, 1),
            "norm[Y]": ({"Y2": 1, "Y4": 1}, 1),
            "born[x→y]": ({"x1": 1}, a),
            "born[x→Y]": ({"x2": 1}, 1 - a),
            "born[X→y]": ({"X3": 1}, 1 - a),
            "born[X→Y]": ({"X4": 1}, a),
            "born[y→x]": ({"y1": 1}, a),
            "born[y→X]": ({"y3": 1}, 1 - a),
            "born[Y→x]": ({"Y2": 1}, 1 - a),
            "born[Y→X]": ({"Y4": 1}, a),
        }
        for j, (first, second) in enumerate([("x", "y"), ("x", "Y"), ("X", "y"), ("X", "Y")], start=1):
            expected[f"mix[E1@atom{j}]"] = ({f"nu{j}": 1, f"{first}{j}": -0.5}, 0)
            expected[f"mix[E2@atom{j}]"] = ({f"nu{j}": 1, f"{second}{j}": -0.5}, 0)
        _assert_rows(marginal_system(two_orthogonal(a)), expected)

    @pytest.mark.parametrize("theta", [0.3, math.pi / 3, 1.2])
    def test_nonorthogonal_pair(self, theta):
        half = math.sin(theta / 2) ** 2
        expected = {
            "norm[X]": ({"X4": 1, "X5": 1, "X6": 1}, 1),
            "born[X→a]": ({"X4": 1, "X5": 1}, half),
            "born[X→b]": ({"X5": 1, "X6": 1}, half),
        }
        _assert_rows(marginal_system(nonorthogonal_pair(theta)), expected)

    @pytest.mark.parametrize("alpha", [0.1, 0.25, 0.6])
    def test_bisecting(self, alpha):
        beta = (1 + math.sqrt(alpha)) / 2
        overlaps = {
            "z": {"x": beta, "X": 1 - beta, "y": beta, "Y": 1 - beta},
            "Z": {"x": 1 - beta, "X": beta, "y": 1 - beta, "Y": beta},
        }
        # regions 1..4 are (x, y), (x, Y), (X, y), (X, Y)
        regions_of = {"x": (1, 2), "X": (3, 4), "y": (1, 3), "Y": (2, 4)}
        expected = {}
        for prep, row in overlaps.items():
            for outcome, rhs in row.items():
                expected[f"born[{prep}→{outcome}]"] = ({f"{prep}{r}": 1 for r in regions_of[outcome]}, rhs)
        for r, rhs in enumerate([alpha, 1 - alpha, 1 - alpha, alpha], start=1):
            expected[f"mix[z|Z@region{r}]"] = ({f"z{r}": 1, f"Z{r}": 1}, rhs)
        _assert_rows(marginal_system(three_orthogonal(bisecting_triple(alpha))), expected)
