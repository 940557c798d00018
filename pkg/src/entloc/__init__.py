"""entloc: entanglement localization for multimode Gaussian covariance matrices.

The package computes symplectic spectra, normal forms and entanglement
measures of Gaussian states represented by their covariance matrices, and
concentrates the block entanglement of block-permutation-invariant states
onto a single pair of modes by local symplectic operations.
"""

from .entanglement import (
    EntanglementReport,
    ModeBipartition,
    eof_symmetric,
    log_negativity,
    partial_transpose,
    pt_spectrum,
    pt_two_mode_nu_tilde,
    symmetric_condition,
)
from .errors import (
    DecompositionError,
    EntlocError,
    InconsistentInvariantsError,
    InvalidArgumentError,
    LocalizationError,
    NumericalDomainError,
)
from .localization import (
    BlockSpectrum,
    EquivalentTwoMode,
    LocalizationResult,
    block_log_negativity,
    equivalent_from_cm,
    equivalent_report,
    equivalent_report_from_cm,
    equivalent_two_mode_invariants,
    fs_block_spectrum,
    fs_global_purity,
    global_delta_bisym,
    localize,
    nu_plus_from_two_mode,
    optimal_localizable_entanglement,
)
from .states import (
    BisymmetricSpec,
    FullySymmetricSpec,
    bisymmetric_cm,
    fs_params_from_invariants,
    fully_symmetric_cm,
    ghz_type_pure,
    ghz_type_spec,
    thermal_cm,
    two_mode_squeezed,
)
from .symplectic import (
    CovarianceMatrix,
    SymplecticSpectrum,
    TwoModeInvariants,
    apply_symplectic,
    delta_invariant,
    is_bona_fide,
    is_symplectic,
    load_cm,
    partial_trace,
    purity,
    save_cm,
    symplectic_eigenvalues,
    symplectic_form,
    two_mode_invariants,
    two_mode_symplectic_eigenvalues,
    vacuum_cm,
    williamson,
)

__version__ = "0.1.0"

__all__ = [
    "BisymmetricSpec",
    "BlockSpectrum",
    "CovarianceMatrix",
    "DecompositionError",
    "EntanglementReport",
    "EntlocError",
    "EquivalentTwoMode",
    "FullySymmetricSpec",
    "InconsistentInvariantsError",
    "InvalidArgumentError",
    "LocalizationError",
    "LocalizationResult",
    "ModeBipartition",
    "NumericalDomainError",
    "SymplecticSpectrum",
    "TwoModeInvariants",
    "apply_symplectic",
    "bisymmetric_cm",
    "block_log_negativity",
    "delta_invariant",
    "eof_symmetric",
    "equivalent_from_cm",
    "equivalent_report",
    "equivalent_report_from_cm",
    "equivalent_two_mode_invariants",
    "fs_block_spectrum",
    "fs_global_purity",
    "fs_params_from_invariants",
    "fully_symmetric_cm",
    "ghz_type_pure",
    "ghz_type_spec",
    "global_delta_bisym",
    "is_bona_fide",
    "is_symplectic",
    "load_cm",
    "localize",
    "log_negativity",
    "nu_plus_from_two_mode",
    "optimal_localizable_entanglement",
    "partial_trace",
    "partial_transpose",
    "pt_spectrum",
    "pt_two_mode_nu_tilde",
    "purity",
    "save_cm",
    "symmetric_condition",
    "symplectic_eigenvalues",
    "symplectic_form",
    "thermal_cm",
    "two_mode_invariants",
    "two_mode_squeezed",
    "two_mode_symplectic_eigenvalues",
    "vacuum_cm",
    "williamson",
]
