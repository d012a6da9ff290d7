"""Coherent states of a charged particle in an ideal Penning trap."""

from .expm import expm
from .fock import (
    CapacityError,
    FockSystem,
    build_fock,
    docs_vector,
    eigenrelation_residual,
)
from .ladder import (
    PhaseSpaceOperator,
    ModeSystem,
    build_ladder,
    commutator,
    energy,
    hamiltonian_residual,
)
from .model import PenningModel
from .observables import (
    MomentReport,
    coherent_moments,
    energy_mean,
    energy_variance,
    extremal_moments,
)
from .spectral import (
    DegenerateModeError,
    EigenPairSet,
    decompose,
    propagator,
    unit_decomposition,
)
from .states import (
    CoherentLabel,
    GaussianState,
    SingularAlphaError,
    TruncationWarning,
    aocs_coefficients,
    coherent_label,
    extract_alpha_beta,
    phi0,
    phi_z,
    solve_gaussian,
)
from .trap import (
    InstabilityError,
    ModeFrequencies,
    StabilityVerdict,
    TrapParams,
    build_lambda,
    characteristic_polynomial,
    frequencies,
    validate,
)

__version__ = "0.1.0"
