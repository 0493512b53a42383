"""Unit tests for scenarios, support atoms, response statuses and variable indexing."""

import math

import pytest

from steerlhv.model.builders import bisecting_triple, nonorthogonal_pair, three_orthogonal, two_orthogonal
from steerlhv.model.exceptions import InconsistentEnsemblesError, InvalidParameterError, InvalidStateError
from steerlhv.model.geometry import PureState, WeightedEnsemble
from steerlhv.model.scenario import AssemblyOptions, ConstraintSet, MixtureMode, Scenario
from steerlhv.model.structure import (
    ResponseStatus,
    StateRef,
    born_pairs,
    enumerate_atoms,
    index_variables,
    response_status,
    state_refs,
)

ZERO = PureState(bloch=(0.0, 0.0, 1.0))
ONE = PureState(bloch=(0.0, 0.0, -1.0))
PLUS = PureState(bloch=(1.0, 0.0, 0.0))
MINUS = PureState(bloch=(-1.0, 0.0, 0.0))


def _ref(scenario, label):
    return next(ref for ref in state_refs(scenario) if ref.label == label)


def _trine_against_z():
    angles = [2 * math.pi * k / 3 for k in range(3)]
    trine = WeightedEnsemble.of(
        [(1 / 3, PureState.from_bloch((math.sin(t), 0.0, math.cos(t)))) for t in angles], labels=("t1", "t2", "t3")
    )
    return Scenario((trine, WeightedEnsemble.of([(0.5, ZERO), (0.5, ONE)], labels=("z", "Z"))))


def _shuffled(scenario, rng):
    ensembles = []
    for ens in scenario.ensembles:
        order = rng.permutation(len(ens.members))
        ensembles.append(WeightedEnsemble(tuple(ens.members[i] for i in order)))
    return Scenario(tuple(ensembles), scenario.options)


def _atoms_by_label(scenario):
    return sorted(
        tuple(tuple(sorted(scenario.ensembles[k].members[i].label for i in part)) for k, part in enumerate(atom.pattern))
        for atom in enumerate_atoms(scenario)
    )


class TestAssemblyOptions:
    def test_defaults(self):
        options = AssemblyOptions()
        assert options.mixture_mode is MixtureMode.FULL
        assert options.constraint_set is ConstraintSet.STRICT
        assert not options.is_werner

    def test_string_values_are_coerced(self):
        options = AssemblyOptions(mixture_mode="support_only", constraint_set="all_pairs")
        assert options.mixture_mode is MixtureMode.SUPPORT_ONLY
        assert options.constraint_set is ConstraintSet.ALL_PAIRS

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"mixture_mode": "partial"},
            {"constraint_set": "some"},
            {"werner_w": 1.5},
            {"werner_w": -0.1},
            {"orth_eps": 1e-3},
            {"orth_eps": 0.0},
            {"deficiency": "yes"},
        ],
    )
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(InvalidParameterError):
            AssemblyOptions(**kwargs)

    def test_from_dict_rejects_unknown(self):
        with pytest.raises(InvalidParameterError):
            AssemblyOptions.from_dict({"deficency": True})

    def test_to_dict(self):
        assert AssemblyOptions(werner_w=0.5).to_dict() == {
            "deficiency": False,
            "mixture_mode": "full",
            "constraint_set": "paper_strict",
            "werner_w": 0.5,
        }


class TestScenario:
    def test_default_labels(self):
        scenario = Scenario((WeightedEnsemble.of([(0.5, ZERO), (0.5, ONE)]), WeightedEnsemble.of([(0.5, PLUS), (0.5, MINUS)])))
        assert [m.label for ens in scenario.ensembles for m in ens.members] == ["s1a", "s1b", "s2a", "s2b"]

    def test_duplicate_labels(self):
        e = WeightedEnsemble.of([(0.5, ZERO), (0.5, ONE)], labels=("x", "X"))
        with pytest.raises(InvalidStateError):
            Scenario((e, e))

    def test_inconsistent_ensembles(self):
        balanced = WeightedEnsemble.of([(0.5, ZERO), (0.5, ONE)])
        biased = WeightedEnsemble.of([(0.6, PLUS), (0.4, MINUS)])
        with pytest.raises(InconsistentEnsemblesError) as info:
            Scenario((balanced, biased))
        assert info.value.deviation == pytest.approx(0.1)

    def test_with_options_keeps_origin(self):
        scenario = two_orthogonal(0.3)
        changed = scenario.with_options(deficiency=True)
        assert changed.options.deficiency
        assert changed.origin == scenario.origin

    def test_reduced_state(self):
        assert two_orthogonal(0.3).reduced_state.radius == pytest.approx(0.0, abs=1e-15)


class TestAtoms:
    def test_two_orthogonal_atoms(self):
        atoms = enumerate_atoms(two_orthogonal(0.25))
        assert [a.pattern for a in atoms] == [((0,), (0,)), ((0,), (1,)), ((1,), (0,)), ((1,), (1,))]

    def test_nonorthogonal_pair_atoms(self):
        atoms = enumerate_atoms(nonorthogonal_pair(1.0))
        assert len(atoms) == 6
        assert atoms[1].pattern == ((0,), (0, 1))

    def test_three_orthogonal_atoms(self, pauli_triple):
        assert len(enumerate_atoms(three_orthogonal(pauli_triple))) == 8

    def test_orthogonal_across_ensembles_never_share(self):
        scenario = Scenario((WeightedEnsemble.of([(0.5, ZERO), (0.5, ONE)]), WeightedEnsemble.of([(0.5, ONE), (0.5, ZERO)], labels=("u", "U"))))
        patterns = [a.pattern for a in enumerate_atoms(scenario)]
        assert patterns == [((0,), (1,)), ((1,), (0,))]

    @pytest.mark.parametrize(
        "build",
        [
            lambda: two_orthogonal(0.3),
            lambda: nonorthogonal_pair(1.0),
            lambda: three_orthogonal(bisecting_triple(0.25)),
            _trine_against_z,
        ],
        ids=["two_orthogonal", "nonorthogonal_pair", "bisecting", "trine"],
    )
    def test_member_order_does_not_change_atoms(self, build, rng):
        scenario = build()
        expected = _atoms_by_label(scenario)
        for _ in range(10):
            shuffled = _shuffled(scenario, rng)
            patterns = [atom.pattern for atom in enumerate_atoms(shuffled)]
            assert patterns == sorted(patterns)
            assert _atoms_by_label(shuffled) == expected

    def test_trine_atoms(self):
        # t1 and z coincide, so t1 never shares an atom with Z
        labelled = _atoms_by_label(_trine_against_z())
        assert (("t1",), ("Z",)) not in labelled
        assert (("t1",), ("z",)) in labelled

    def test_orth_eps_range(self):
        with pytest.raises(InvalidParameterError):
            enumerate_atoms(two_orthogonal(0.5), orth_eps=0.1)


class TestResponseStatus:
    def test_forced_one_and_zero(self):
        scenario = two_orthogonal(0.25)
        atoms = enumerate_atoms(scenario)
        x, y = _ref(scenario, "x"), _ref(scenario, "y")
        assert response_status(atoms[0], x, y, scenario) is ResponseStatus.FORCED_ONE
        assert response_status(atoms[1], x, y, scenario) is ResponseStatus.FORCED_ZERO

    def test_free(self):
        scenario = nonorthogonal_pair(1.0)
        atoms = enumerate_atoms(scenario)
        big_x, a = _ref(scenario, "X"), _ref(scenario, "a")
        assert atoms[5].pattern == ((1,), (1,))
        assert response_status(atoms[5], big_x, a, scenario) is ResponseStatus.FREE

    def test_prep_must_be_in_atom(self):
        scenario = two_orthogonal(0.25)
        atoms = enumerate_atoms(scenario)
        with pytest.raises(ValueError):
            response_status(atoms[3], _ref(scenario, "x"), _ref(scenario, "y"), scenario)


class TestBornPairs:
    def test_strict_pairs_are_cross_ensemble(self):
        pairs = born_pairs(two_orthogonal(0.25))
        assert len(pairs) == 8
        assert all(p.ensemble != o.ensemble for p, o in pairs)

    def test_all_pairs_adds_nonorthogonal_same_ensemble(self):
        scenario = nonorthogonal_pair(1.0, constraint_set="all_pairs")
        labels = [(p.label, o.label) for p, o in born_pairs(scenario)]
        assert len(labels) == 10
        assert ("a", "b") in labels and ("b", "a") in labels
        assert ("x", "X") not in labels

    def test_all_pairs_skips_orthogonal_members(self):
        assert len(born_pairs(two_orthogonal(0.25, constraint_set="all_pairs"))) == 8


class TestVariables:
    def test_two_orthogonal_names(self):
        scenario = two_orthogonal(0.25)
        index = index_variables(scenario, enumerate_atoms(scenario))
        assert index.names == ["nu1", "nu2", "nu3", "nu4", "x1", "x2", "X3", "X4", "y1", "y3", "Y2", "Y4"]
        assert index.position("X3") == 6
        assert "X1" not in index

    def test_response_masses_only_with_deficiency(self):
        scenario = nonorthogonal_pair(1.0)
        plain = index_variables(scenario, enumerate_atoms(scenario))
        deficient = index_variables(scenario, enumerate_atoms(scenario), AssemblyOptions(deficiency=True))
        extra = [n for n in deficient.names if n not in plain.names]
        assert "X6^(a)" in extra
        assert "x3^(a)" in extra
        assert all("^(" in n for n in extra)

    def test_state_ref_ordering_ignores_label(self):
        assert StateRef(0, 1, "a") == StateRef(0, 1, "b")
        assert StateRef(0, 1) < StateRef(1, 0)
