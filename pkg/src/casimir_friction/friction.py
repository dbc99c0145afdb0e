"""Friction force per unit area between sliding half-spaces, in all regimes.

Force magnitudes are reported per unit area with the direction
"opposes_motion" carried separately; the dissipated-energy intermediate
Delta E/(2 tau v) equals the force magnitude by construction.

Regimes
-------
LinearFiniteT   F = G v H0            (~ v, ~ 1/d^4, finite T)
ZeroT_Cubic     F = G_P H_P' v^3      = 15 pi^2/(64 d^6) rho^2 D^2 (hbar v)^3
GeneralNumeric  triple k-space/spectral quadrature, any T and v
PlasmonLine     single sharp surface-plasmon line, exponentially
                suppressed by exp(-4 omega_sp d / v)

The general pipeline evaluates

    F = (hbar / (8 pi^3)) Int dk_x dk_y |k_x| e^{-2 q d} Phi(k_x v),

with Phi the thermally weighted Im R (x) Im R integral over the
resonance channels (`response.im_r_dissipation_integral`).  Results are
independent of the oscillator densities: the response form carries no
rho at all, and the closed forms combine rho^2 D^2 = nu^2/(pi hbar
omega_p^2)^2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .numerics import (
    CONST,
    NESTED_SPEC,
    DomainError,
    NonConvergence,
    QuadratureSpec,
    integrate_semi_infinite,
)
from .material import (
    Drude,
    DrudeSmallM,
    MaterialModel,
    PlasmonLine,
    Tabulated,
    drude_small_m,
    spectral_density_from_R,
    surface_response,
)
from .geometry import PlateConfig, UnequalDensities, k_moment
from .response import ThermalState, h0_linear, im_r_dissipation_integral

LINEAR_FINITE_T = "LinearFiniteT"
ZERO_T_CUBIC = "ZeroT_Cubic"
GENERAL_NUMERIC = "GeneralNumeric"
PLASMON_LINE = "PlasmonLine"

#: exp(-x) underflows double precision near 745; beyond this the plasmon
#: force is reported as exactly zero with a flag.
UNDERFLOW_EXPONENT = 700.0


class ValidityWarning(UserWarning):
    """A closed form is being used near or beyond its validity regime."""


@dataclass
class Diagnostics:
    """Quadrature quality and validity bookkeeping attached to each result."""

    quadrature_rel_err: float = 0.0
    validity_flags: list[str] = field(default_factory=list)
    suppression_exponent: float | None = None

    def flag(self, message: str) -> None:
        self.validity_flags.append(message)
        warnings.warn(message, ValidityWarning, stacklevel=3)


@dataclass
class FrictionResult:
    """Friction force per unit area (magnitude; direction opposes relative motion)."""

    force_per_area: float
    regime: str
    delta_e_per_2tau_v: float
    diagnostics: Diagnostics
    direction: str = "opposes_motion"


def _require_velocity(v: float) -> None:
    if v < 0:
        raise DomainError(f"velocity must be >= 0, got {v}")


def _rho_slope_product(material: Drude, config: PlateConfig) -> float:
    """(rho1 D1)(rho2 D2) = nu^2/(pi hbar omega_p^2)^2, density-free."""
    d1 = spectral_density_from_R(material, config.rho1).small_m_slope
    d2 = spectral_density_from_R(material, config.rho2).small_m_slope
    return (config.rho1 * d1) * (config.rho2 * d2)


def force_linear(
    material: MaterialModel,
    config: PlateConfig,
    thermal: ThermalState,
    v: float,
    spec: QuadratureSpec = NESTED_SPEC,
) -> FrictionResult:
    """Linear-in-v friction force F = G v H0 at finite temperature.

    For a Drude material H0 uses the small-m closed form, reducing to
    F = pi^4/(4 beta^2 d^4) rho^2 D^2 hbar v; other continuous materials
    evaluate H0 by quadrature of their extracted spectral density.

    Raises
    ------
    DomainError
        At T = 0 (the linear channel closes) or v < 0.
    """
    if thermal.is_zero:
        raise DomainError("force_linear requires finite temperature")
    _require_velocity(v)
    diag = Diagnostics()

    if isinstance(material, Drude):
        if material.nu == 0.0 or material.omega_p == 0.0:
            h0 = 0.0
        else:
            s1 = drude_small_m(material, config.rho1)
            s2 = drude_small_m(material, config.rho2)
            h0 = h0_linear(s1, thermal, s2, spec)
            if CONST.k_B * thermal.temperature > 0.01 * CONST.hbar * material.omega_sp:
                diag.flag(
                    "kT approaches hbar*omega_sp: small-m linear head is "
                    "inaccurate over the thermal window"
                )
    elif isinstance(material, Tabulated):
        s1 = spectral_density_from_R(material, config.rho1)
        s2 = spectral_density_from_R(material, config.rho2)
        lo = s1.omega_support[0]
        if CONST.hbar * lo * thermal.beta > 0.5:
            diag.flag("tabulated support misses part of the thermal window")
        h0 = h0_linear(s1, thermal, s2, spec)
        diag.quadrature_rel_err = spec.rel_tol
    else:
        raise TypeError("force_linear needs a continuous material (Drude or Tabulated)")

    force = k_moment(2, config) * v * h0
    return FrictionResult(
        force_per_area=force,
        regime=LINEAR_FINITE_T,
        delta_e_per_2tau_v=force,
        diagnostics=diag,
    )


def force_zero_t(material: Drude, config: PlateConfig, v: float) -> FrictionResult:
    """Zero-temperature cubic friction force for equal Drude media.

    F_P = 15 pi^2/(64 d^6) rho^2 D^2 (hbar v)^3, density-independent
    after substituting D.

    Raises
    ------
    UnequalDensities
        If rho1 != rho2 (the closed form assumes equal media).
    """
    if not isinstance(material, Drude):
        raise TypeError("force_zero_t closed form requires a Drude material")
    _require_velocity(v)
    if config.rho1 != config.rho2:
        raise UnequalDensities(
            f"force_zero_t assumes rho1 = rho2, got {config.rho1} != {config.rho2}"
        )
    diag = Diagnostics()
    if material.nu == 0.0 or material.omega_p == 0.0:
        force = 0.0
    else:
        # dominant q ~ 2.5/d in the d^-6 moment; flag when hbar*omega_v
        # there leaves the linear head
        if v > 0 and 2.5 * v / config.d > 0.1 * material.omega_sp:
            diag.flag(
                "omega_v at the dominant wavevectors exceeds the small-m "
                "cutoff; the cubic closed form underestimates spectrum curvature"
            )
        rho2_d2 = _rho_slope_product(material, config)
        force = (
            15.0 * math.pi**2 / (64.0 * config.d**6) * rho2_d2 * (CONST.hbar * v) ** 3
        )
    return FrictionResult(
        force_per_area=force,
        regime=ZERO_T_CUBIC,
        delta_e_per_2tau_v=force,
        diagnostics=diag,
    )


def _im_r_callable(model: MaterialModel):
    if isinstance(model, PlasmonLine):
        raise TypeError(
            "delta-line spectra are not integrable in the general pipeline; "
            "use force_plasmon"
        )

    def im_r(omega: float) -> float:
        if omega <= 0.0:
            return 0.0
        return surface_response(model, omega).imag

    return im_r


def dissipation_general(
    material1: MaterialModel,
    material2: MaterialModel,
    config: PlateConfig,
    thermal: ThermalState,
    v: float,
    spec: QuadratureSpec = NESTED_SPEC,
) -> FrictionResult:
    """Friction force from the full k-space/spectral dissipation integral.

    Valid at any temperature and velocity with continuous material
    responses.  Nesting order: innermost spectral convolution, then k_y
    on the exponential scale 1/(2d), then k_x on the same scale.

    Raises
    ------
    NonConvergence
        With ``level`` identifying the failing nesting level
        ("omega1", "k_y" or "k_x").
    """
    _require_velocity(v)
    im_r1 = _im_r_callable(material1)
    im_r2 = _im_r_callable(material2)
    if v == 0.0:
        return FrictionResult(0.0, GENERAL_NUMERIC, 0.0, Diagnostics())

    ky_scale = 0.5 / config.d
    err_cell = {"inner": 0.0}

    def phi_of(omega_v: float) -> float:
        try:
            return im_r_dissipation_integral(omega_v, im_r1, im_r2, thermal, spec)
        except NonConvergence as exc:
            raise NonConvergence(str(exc), level="omega1") from exc

    def ky_integral(kx: float) -> float:
        def f(ky: float) -> float:
            return math.exp(-2.0 * config.d * math.hypot(kx, ky))

        try:
            value, err = integrate_semi_infinite(f, 0.0, spec.with_scale(ky_scale))
        except NonConvergence as exc:
            raise NonConvergence(str(exc), level="k_y") from exc
        err_cell["inner"] = max(err_cell["inner"], err / value if value else 0.0)
        return value

    def outer(kx: float) -> float:
        if kx <= 0.0:
            return 0.0
        return kx * ky_integral(kx) * phi_of(kx * v)

    try:
        value, err = integrate_semi_infinite(outer, 0.0, spec.with_scale(ky_scale))
    except NonConvergence as exc:
        if exc.level is None:
            raise NonConvergence(str(exc), level="k_x") from exc
        raise
    force = CONST.hbar / (2.0 * math.pi**3) * value

    diag = Diagnostics(
        quadrature_rel_err=(abs(err / value) if value else 0.0) + err_cell["inner"]
    )
    return FrictionResult(
        force_per_area=force,
        regime=GENERAL_NUMERIC,
        delta_e_per_2tau_v=force,
        diagnostics=diag,
    )


def force_plasmon(
    omega_sp: float,
    config: PlateConfig,
    v: float,
    spec: QuadratureSpec = NESTED_SPEC,
) -> FrictionResult:
    """Friction force for a single surface-plasmon line at omega_sp.

    The spectral convolution pins |k_x| = 2 omega_sp / v, leaving the
    k_y quadrature of exp(-2 d sqrt(k_x^2 + k_y^2)); the result carries
    the suppression factor exp(-4 omega_sp d / v) and equals
    (hbar omega_sp^4 / (pi v^3)) K1(4 omega_sp d / v).

    When the suppression exponent exceeds ~700 the force underflows
    double precision and is reported as exactly 0 with a flag.
    """
    if not omega_sp > 0:
        raise DomainError(f"omega_sp must be > 0, got {omega_sp}")
    _require_velocity(v)
    diag = Diagnostics()
    if v == 0.0:
        diag.suppression_exponent = math.inf
        diag.validity_flags.append("underflow: 4*omega_sp*d/v > 700")
        return FrictionResult(0.0, PLASMON_LINE, 0.0, diag)

    kx = 2.0 * omega_sp / v
    x = 2.0 * config.d * kx  # suppression exponent 4 omega_sp d / v
    diag.suppression_exponent = x
    if x > UNDERFLOW_EXPONENT:
        diag.validity_flags.append("underflow: 4*omega_sp*d/v > 700")
        return FrictionResult(0.0, PLASMON_LINE, 0.0, diag)

    # k_y = kx * t; the exponent is factored as e^-x * e^{-x(sqrt(1+t^2)-1)}
    # so the quadrature stays scaled near unity.
    def f(t: float) -> float:
        return math.exp(-x * (t * t / (math.sqrt(1.0 + t * t) + 1.0)))

    t_scale = math.sqrt(2.0 / x) + 2.0 / x
    value, err = integrate_semi_infinite(f, 0.0, spec.with_scale(t_scale))
    force = (
        CONST.hbar * omega_sp**3 / (2.0 * math.pi * v * v)
        * math.exp(-x) * kx * value
    )
    diag.quadrature_rel_err = abs(err / value) if value else 0.0
    return FrictionResult(
        force_per_area=force,
        regime=PLASMON_LINE,
        delta_e_per_2tau_v=force,
        diagnostics=diag,
    )
