"""Quantum correlations between an inertial and a uniformly accelerated observer.

A Bell state of two scalar-field modes is shared by Alice (inertial) and Rob
(uniformly accelerated).  Rob's mode is a two-mode squeezed state across the
Rindler wedges; tracing out the unobserved wedge leaves a mixed
qubit x Fock-mode state whose quantum discord, MID and logarithmic negativity
are computed here as functions of ``t = tanh r``.
"""
from .fock_core import (
    DEFAULT_EPSILON,
    NUMERICAL_FLOOR,
    AccelParam,
    ConvergenceError,
    DimensionError,
    FockOperator,
    JointState,
    NegativeEigenvalueError,
    NotHermitianError,
    NumericalError,
    OutOfRangeError,
    Spectrum,
    TruncationPolicy,
    UnruhDiscordError,
    accel_from_r,
    accel_from_ratio,
    accel_from_t,
    required_cutoff,
    tail_mass,
)
from .states import (
    MBlockKind,
    analytic_spectrum,
    build_rho_ar,
    m_block,
    oracle_rho_ar_via_purification,
    reduce_to_alice,
    reduce_to_rob,
)
from .entropy import (
    EntropyValue,
    entropy_of_operator,
    entropy_of_spectrum,
    joint_entropy_analytic,
    tridiagonal_eigenvalues,
)
from .discord import (
    ConditionalEnsemble,
    DiscordResult,
    MeasurementDirection,
    MinimizerConfig,
    conditional_ensemble,
    conditional_entropy,
    discord_at_theta,
    mutual_information,
    quantum_discord,
)
from .mid import MIDResult, dephase, h_dephased_closed_form, mid_measure
from .negativity import log_negativity, partial_transpose

__version__ = "0.1.0"
