"""
Qubit steering scenarios and their local-hidden-variable feasibility systems.

Geometry and steering describe the quantum side; structure and assembly turn a
scenario into a linear system over region masses; builders provide the canned
scenarios.
"""

from .assembly import ConstraintSystem, Row, RowSense, assemble, atom_table
from .builders import BUILDERS, bisecting_triple, build, gpr, nonorthogonal_pair, three_orthogonal, two_orthogonal, werner
from .exceptions import (
    AntipodalInputError,
    InconsistentEnsemblesError,
    InvalidParameterError,
    InvalidStateError,
    MonotonicityViolationError,
    NotRealizableError,
    NotSteerableError,
    NoViolationFoundError,
    NoiseInfeasibleError,
    NumericallyAmbiguousError,
    RankDeficientError,
    ScenarioFileError,
    SolverError,
    SteerlhvError,
    UnsupportedScenarioError,
)
from .geometry import (
    EnsembleMember,
    MixedState,
    OverlapTriple,
    PureState,
    WeightedEnsemble,
    bisector,
    ensemble_average,
    overlap,
    realizable,
    states_from_triple,
)
from .marginal import marginal_projection, marginal_system
from .scenario import AssemblyOptions, ConstraintSet, MixtureMode, Scenario, ScenarioOrigin
from .steering import (
    BipartitePureState,
    Measurement,
    construct_steering_measurement,
    purify,
    random_decomposition,
    reduced_state,
    steered_ensemble,
    steering_possible,
)
from .structure import ResponseStatus, StateRef, SupportAtom, VariableIndex, VariableKind, enumerate_atoms, index_variables, response_status

__all__ = [
    "BUILDERS",
    "AntipodalInputError",
    "AssemblyOptions",
    "BipartitePureState",
    "ConstraintSet",
    "ConstraintSystem",
    "EnsembleMember",
    "InconsistentEnsemblesError",
    "InvalidParameterError",
    "InvalidStateError",
    "Measurement",
    "MixedState",
    "MixtureMode",
    "MonotonicityViolationError",
    "NoViolationFoundError",
    "NoiseInfeasibleError",
    "NotRealizableError",
    "NotSteerableError",
    "NumericallyAmbiguousError",
    "OverlapTriple",
    "PureState",
    "RankDeficientError",
    "ResponseStatus",
    "Row",
    "RowSense",
    "Scenario",
    "ScenarioFileError",
    "ScenarioOrigin",
    "SolverError",
    "StateRef",
    "SteerlhvError",
    "SupportAtom",
    "UnsupportedScenarioError",
    "VariableIndex",
    "VariableKind",
    "WeightedEnsemble",
    "assemble",
    "atom_table",
    "bisecting_triple",
    "bisector",
    "build",
    "construct_steering_measurement",
    "ensemble_average",
    "enumerate_atoms",
    "gpr",
    "index_variables",
    "marginal_projection",
    "nonorthogonal_pair",
    "overlap",
    "marginal_system",
    "purify",
    "random_decomposition",
    "realizable",
    "reduced_state",
    "response_status",
    "states_from_triple",
    "steered_ensemble",
    "steering_possible",
    "three_orthogonal",
    "two_orthogonal",
    "werner",
]
