"""Local modes, purification partners and swap-based entanglement harvesting on a harmonic chain."""

from .energy import (
    CostBreakdown,
    N3Model,
    build_n3,
    closed_form_coefficients,
    cost_coefficients,
    delta_e_swap,
    delta_e_swap_oracle,
    discrepancy_report,
    n3_heisenberg_map,
    oracle_coefficients,
    phi_sweep,
)
from .errors import (
    DegenerateMode,
    DimensionMismatch,
    IllConditioned,
    NoPartner,
    NonPhysicalEigenvalue,
    NonPositiveDefinite,
    NotCanonical,
    NumericalError,
    ParseError,
    UncertaintyViolation,
)
from .gaussian import (
    commutator,
    gaussian_entropy,
    is_symplectic,
    quadratic_expectation,
    symplectic_form,
    transform_covariance,
    williamson_eigenvalues,
)
from .harvest import DeviceState, ExtendedSystem, HarvestResult, harvest, swap_symplectic
from .lattice import (
    LatticeSpec,
    VacuumCorrelators,
    correlators,
    dispersion,
    frequencies,
    lattice_hamiltonian,
    vacuum_covariance,
)
from .laurent import LaurentCoefficients, laurent_extract
from .modes import (
    StandardMode,
    WindowFunctions,
    divergent_window,
    g_factor,
    mode_covariance,
    momentum_representation,
    single_site_window,
    standard_form,
    validate_window,
)
from .partner import (
    PartnerPair,
    check_locality,
    classify_partner,
    entanglement_entropy,
    partner_window,
    to_mode_pairs,
    two_mode_covariance,
)

__all__ = [
    "CostBreakdown",
    "DegenerateMode",
    "DeviceState",
    "DimensionMismatch",
    "ExtendedSystem",
    "HarvestResult",
    "IllConditioned",
    "LatticeSpec",
    "LaurentCoefficients",
    "N3Model",
    "NoPartner",
    "NonPhysicalEigenvalue",
    "NonPositiveDefinite",
    "NotCanonical",
    "NumericalError",
    "ParseError",
    "PartnerPair",
    "StandardMode",
    "UncertaintyViolation",
    "VacuumCorrelators",
    "WindowFunctions",
    "build_n3",
    "check_locality",
    "classify_partner",
    "closed_form_coefficients",
    "commutator",
    "correlators",
    "cost_coefficients",
    "delta_e_swap",
    "delta_e_swap_oracle",
    "discrepancy_report",
    "dispersion",
    "divergent_window",
    "entanglement_entropy",
    "frequencies",
    "g_factor",
    "gaussian_entropy",
    "harvest",
    "is_symplectic",
    "lattice_hamiltonian",
    "laurent_extract",
    "mode_covariance",
    "momentum_representation",
    "n3_heisenberg_map",
    "oracle_coefficients",
    "partner_window",
    "phi_sweep",
    "quadratic_expectation",
    "single_site_window",
    "standard_form",
    "swap_symplectic",
    "symplectic_form",
    "to_mode_pairs",
    "transform_covariance",
    "two_mode_covariance",
    "vacuum_covariance",
    "validate_window",
    "williamson_eigenvalues",
]

__version__ = "0.1.0"
