"""Skew-Hamiltonian realizations of Lagrangian subspaces as Krylov spaces.

Given an ordered basis x_1, ..., x_n of a Lagrangian subspace of R^(2n),
the skew-Hamiltonian matrices H with H x_k = x_(k+1) form an affine
family of dimension n(n+1)/2. This package constructs the minimum-norm
element of that family, parametrizes the family, builds realizers with a
prescribed restricted spectrum, finds the family element nearest to an
arbitrary matrix, and ships verifiers plus a perturbation experiment
around these constructions.
"""

from .errors import (
    ConjugationViolation,
    IsotropyViolation,
    LinearDependenceError,
    OrthonormalityViolation,
)
from .linalg import (
    DEFAULT_TOL,
    CheckResult,
    SymplecticForm,
    Tolerance,
    apply_j,
    apply_jt,
    format_matrix,
    frobenius_norm,
    is_skew_hamiltonian,
    j_matrix,
    load_matrix,
    numerical_rank,
    orthonormal_complement,
    pinv,
    save_matrix,
    spectral_norm,
    star_adjoint,
)
from .lagrangian import (
    ArnoldiResult,
    OrderedBasis,
    is_isotropic,
    isotropic_arnoldi,
    isotropize,
    random_lagrangian_onb,
    subspace_gap,
    symplectic_pairing,
)
from .realization import (
    MembershipResult,
    RealizationFamily,
    SkewParam,
    SpectrumSpec,
    companion_matrix,
    family_element,
    membership,
    min_norm_realizer,
    nearest_realizer,
    nearest_realizer_with_spectrum,
    realization_family,
    realizer_with_spectrum,
    restricted_spectrum,
    shift_factor,
    spectrum_family_element,
)
from .analysis import (
    VerificationReport,
    nilpotency_index,
    verify_dimension,
    verify_frobenius_min,
    verify_norm_equality,
    verify_projection_identity,
    verify_spectral_min,
)
from .cli import (
    ExperimentConfig,
    ExperimentRecord,
    cli_dispatch,
    run_sweep,
    run_trial,
)

__version__ = "0.1.0"

__all__ = [
    "ArnoldiResult",
    "CheckResult",
    "ConjugationViolation",
    "DEFAULT_TOL",
    "ExperimentConfig",
    "ExperimentRecord",
    "IsotropyViolation",
    "LinearDependenceError",
    "MembershipResult",
    "OrderedBasis",
    "OrthonormalityViolation",
    "RealizationFamily",
    "SkewParam",
    "SpectrumSpec",
    "SymplecticForm",
    "Tolerance",
    "VerificationReport",
    "apply_j",
    "apply_jt",
    "cli_dispatch",
    "companion_matrix",
    "family_element",
    "format_matrix",
    "frobenius_norm",
    "is_isotropic",
    "is_skew_hamiltonian",
    "isotropic_arnoldi",
    "isotropize",
    "j_matrix",
    "load_matrix",
    "membership",
    "min_norm_realizer",
    "nearest_realizer",
    "nearest_realizer_with_spectrum",
    "nilpotency_index",
    "numerical_rank",
    "orthonormal_complement",
    "pinv",
    "random_lagrangian_onb",
    "realization_family",
    "realizer_with_spectrum",
    "restricted_spectrum",
    "run_sweep",
    "run_trial",
    "save_matrix",
    "shift_factor",
    "spectral_norm",
    "spectrum_family_element",
    "star_adjoint",
    "subspace_gap",
    "symplectic_pairing",
    "verify_dimension",
    "verify_frobenius_min",
    "verify_norm_equality",
    "verify_projection_identity",
    "verify_spectral_min",
]
