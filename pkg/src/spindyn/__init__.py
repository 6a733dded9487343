"""Spinor-form charged-particle dynamics.

The package integrates the pair of two-component spinors that carry a
classical particle's momentum and spin frame through an electromagnetic
field, reconstructs the four-vector observables, and verifies the
algebraic identities the formulation promises.  See the README for the
conventions (metric signature, spinor index rules, component maps).
"""

__version__ = "0.1.0"

from .checks import CheckResult, InvariantReport, frame_tolerance, run_invariant_suite
from .config import Scenario, load_scenario, shipped_names
from .dynamics import (
    IntegratorConfig,
    ParticleState,
    Tetrad,
    TrajectoryRecord,
    build_record,
    coefficient_matrix,
    evolve_fourvector_check,
    exact_step,
    integrate,
    mass,
    momentum,
    spinor_rhs,
    step,
    tetrad,
)
from .errors import (
    ConfigError,
    DegenerateFit,
    MasslessState,
    NonHermitian,
    NonReal,
    NotAtRest,
    NotTimelike,
    SpindynError,
)
from .fields import (
    EMField,
    FieldConfig,
    apply_bigF,
    bigF_from_phi,
    eb_from_tensor,
    field_from_potential,
    mixed_from_lowered,
    phi_from_EB,
    phi_from_generators,
    tensor_from_bigF,
)
from .kernels import BACKEND
from .oracle import ConstantBScenario, PrecessionFit, fit_precession, tensor_integrate
from .restframe import (
    NullSplit,
    RestFrameState,
    boost_to_rest,
    canonical_rest_state,
    check_phase_relation,
    null_split,
    pauli_form,
    polarization_check,
    rest_boost,
    rest_frame_s_components,
    spin_operator,
    spinors_from_momentum,
)
from .spinors import (
    EPSILON,
    METRIC,
    SQRT2,
    DualSpinor,
    FourVector,
    Sl2cGenerator,
    Spinor,
    basis_i,
    basis_o,
    contract,
    fourvector_of,
    generator_matrix,
    hermitian_of,
    lower,
    minkowski_dot,
    minkowski_norm,
    outer,
    raise_,
    sl2c_boost,
    sl2c_rotation,
    transform_fourvector,
    transform_spinor,
)

__all__ = [
    "BACKEND",
    "CheckResult",
    "ConfigError",
    "ConstantBScenario",
    "DegenerateFit",
    "DualSpinor",
    "EMField",
    "EPSILON",
    "FieldConfig",
    "FourVector",
    "IntegratorConfig",
    "InvariantReport",
    "MasslessState",
    "METRIC",
    "NonHermitian",
    "NonReal",
    "NotAtRest",
    "NotTimelike",
    "NullSplit",
    "ParticleState",
    "PrecessionFit",
    "RestFrameState",
    "Scenario",
    "Sl2cGenerator",
    "Spinor",
    "SpindynError",
    "SQRT2",
    "Tetrad",
    "TrajectoryRecord",
    "apply_bigF",
    "basis_i",
    "basis_o",
    "bigF_from_phi",
    "boost_to_rest",
    "build_record",
    "canonical_rest_state",
    "check_phase_relation",
    "coefficient_matrix",
    "contract",
    "eb_from_tensor",
    "evolve_fourvector_check",
    "exact_step",
    "field_from_potential",
    "fit_precession",
    "fourvector_of",
    "frame_tolerance",
    "generator_matrix",
    "hermitian_of",
    "integrate",
    "load_scenario",
    "lower",
    "mass",
    "minkowski_dot",
    "minkowski_norm",
    "mixed_from_lowered",
    "momentum",
    "null_split",
    "outer",
    "pauli_form",
    "phi_from_EB",
    "phi_from_generators",
    "polarization_check",
    "raise_",
    "rest_boost",
    "rest_frame_s_components",
    "run_invariant_suite",
    "shipped_names",
    "sl2c_boost",
    "sl2c_rotation",
    "spin_operator",
    "spinor_rhs",
    "spinors_from_momentum",
    "step",
    "tensor_from_bigF",
    "tensor_integrate",
    "tetrad",
    "transform_fourvector",
    "transform_spinor",
]
