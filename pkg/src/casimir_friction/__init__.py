"""Casimir friction between parallel dielectric half-spaces in relative sliding motion.

The force per unit area is obtained from the energy dissipated along a
closed sliding loop, which separates friction cleanly from the
reversible dispersion force.  Three regimes are covered by the same
machinery: linear in v at finite temperature, cubic in v at T = 0, and
a general finite-velocity numeric pipeline, plus the single-line
surface-plasmon channel with its exponential velocity suppression.
"""

from .numerics import (
    CONST,
    DEFAULT_SPEC,
    NESTED_SPEC,
    DomainError,
    NonConvergence,
    PhysicalConstants,
    QuadratureSpec,
    integrate_finite,
    integrate_semi_infinite,
)
from .material import (
    ContinuousSpectralDensity,
    DeltaLines,
    Drude,
    DrudeSmallM,
    PlasmonLine,
    SingularResponse,
    SpectrumCutoffExceeded,
    Tabulated,
    drude_small_m,
    eps_drude,
    response_R,
    spectral_density_from_R,
    surface_response,
)
from .trajectory import (
    DeltaKernel,
    LoopTrajectory,
    delta_kernel_I,
    delta_limit_convergence,
    finite_tau_kernel,
    loop_position,
    qhat_closed_form,
    qhat_numeric,
)
from .response import (
    ResponseCoeffs,
    ThermalState,
    h0_linear,
    im_r_dissipation_integral,
    j_general_convolution,
    j_linear,
    j_zero_t,
    phi,
    response_coeffs,
)
from .geometry import (
    PlateConfig,
    UnequalDensities,
    g_hat,
    g_hat_z_integrated,
    k_moment,
    psi_hat,
)
from .friction import (
    Diagnostics,
    FrictionResult,
    ValidityWarning,
    dissipation_general,
    force_linear,
    force_plasmon,
    force_zero_t,
)
from .compare import LiteratureParams, consistency_report, pendry_force

__version__ = "0.1.0"

__all__ = [
    "CONST",
    "ContinuousSpectralDensity",
    "DEFAULT_SPEC",
    "DeltaKernel",
    "DeltaLines",
    "Diagnostics",
    "DomainError",
    "Drude",
    "DrudeSmallM",
    "FrictionResult",
    "LiteratureParams",
    "LoopTrajectory",
    "NESTED_SPEC",
    "NonConvergence",
    "PhysicalConstants",
    "PlasmonLine",
    "PlateConfig",
    "QuadratureSpec",
    "ResponseCoeffs",
    "SingularResponse",
    "SpectrumCutoffExceeded",
    "Tabulated",
    "ThermalState",
    "UnequalDensities",
    "ValidityWarning",
    "consistency_report",
    "delta_kernel_I",
    "delta_limit_convergence",
    "dissipation_general",
    "drude_small_m",
    "eps_drude",
    "finite_tau_kernel",
    "force_linear",
    "force_plasmon",
    "force_zero_t",
    "g_hat",
    "g_hat_z_integrated",
    "h0_linear",
    "im_r_dissipation_integral",
    "integrate_finite",
    "integrate_semi_infinite",
    "j_general_convolution",
    "j_linear",
    "j_zero_t",
    "k_moment",
    "loop_position",
    "pendry_force",
    "phi",
    "psi_hat",
    "qhat_closed_form",
    "qhat_numeric",
    "response_R",
    "response_coeffs",
    "spectral_density_from_R",
    "surface_response",
]
