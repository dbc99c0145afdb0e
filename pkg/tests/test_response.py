import math

import numpy as np
import pytest

from casimir_friction.numerics import CONST, DomainError, QuadratureSpec
from casimir_friction.material import (
    ContinuousSpectralDensity,
    DeltaLines,
    Drude,
    PlasmonLine,
    drude_small_m,
    spectral_density_from_R,
    surface_response,
)
from casimir_friction.response import (
    BOSE_INTEGRAL,
    DeltaConvolution,
    ThermalState,
    h0_linear,
    im_r_dissipation_integral,
    j_general_convolution,
    j_linear,
    j_zero_t,
    phi,
    response_coeffs,
)
from casimir_friction.material import SpectrumCutoffExceeded

GOLD_LIKE = Drude(omega_p=1e16, nu=1e14)
RHO = 1e28
ROOM = ThermalState.finite(300.0)
COLD = ThermalState.zero()


def test_thermal_state():
    assert ROOM.beta == pytest.approx(1.0 / (CONST.k_B * 300.0))
    assert COLD.is_zero and math.isinf(COLD.beta)
    with pytest.raises(ValueError):
        ThermalState.finite(0.0)


def test_phi_causality_and_zero_time():
    args = (1e15, 1.3e15, 1e-30, 2e-30)
    assert phi(-1e-16, *args, ROOM) == 0.0
    assert phi(0.0, *args, ROOM) == 0.0


def test_phi_zero_t_equal_frequencies():
    w, a = 9e14, 1.5e-30
    c = response_coeffs(w, w, a, a, COLD)
    assert c.C_minus == 0.0
    assert c.C_plus == pytest.approx(0.5 * CONST.hbar * w * w * a * a, rel=1e-14)
    assert c.H == 0.0
    assert c.omega_minus == 0.0
    assert c.omega_plus == 2.0 * w


def test_response_coeffs_match_sinh_form():
    # C_pm = (H/hbar) sinh(beta hbar w_pm / 2) with
    # H = hbar^2 w1 w2 a1 a2 / (4 sinh(b1) sinh(b2)), at moderate arguments
    w1, w2, a1, a2 = 3e13, 7e13, 1e-30, 2e-30
    c = response_coeffs(w1, w2, a1, a2, ROOM)
    b1 = 0.5 * ROOM.beta * CONST.hbar * w1
    b2 = 0.5 * ROOM.beta * CONST.hbar * w2
    h = CONST.hbar**2 * w1 * w2 * a1 * a2 / (4.0 * math.sinh(b1) * math.sinh(b2))
    assert c.H == pytest.approx(h, rel=1e-12)
    assert c.C_plus == pytest.approx(h / CONST.hbar * math.sinh(b1 + b2), rel=1e-12)
    assert c.C_minus == pytest.approx(h / CONST.hbar * math.sinh(abs(b1 - b2)), rel=1e-10)
    assert c.omega_plus >= c.omega_minus >= 0.0


def test_difference_amplitude_degenerate_pair_limit():
    # the linear channel's delta coefficient: C_-/omega_- -> H*beta/2 as
    # omega_2 -> omega_1, so the pair dissipates as H pi beta tau omega_v^2
    w, a = 5e13, 1e-30
    for eps in (1e-6, 1e-8, 1e-10):
        c = response_coeffs(w, w * (1.0 + eps), a, a, ROOM)
        assert c.C_minus / c.omega_minus == pytest.approx(
            0.5 * c.H * ROOM.beta, rel=1e-5
        )


def test_phi_is_sum_of_sines():
    w1, w2, a1, a2 = 3e13, 7e13, 1e-30, 2e-30
    c = response_coeffs(w1, w2, a1, a2, ROOM)
    t = 3.3e-14
    expected = c.C_minus * math.sin(c.omega_minus * t) + c.C_plus * math.sin(c.omega_plus * t)
    assert phi(t, w1, w2, a1, a2, ROOM) == pytest.approx(expected, rel=1e-14)


def test_h0_drude_closed_form():
    small = drude_small_m(GOLD_LIKE, RHO)
    h0 = h0_linear(small, ROOM)
    expected = 2.0 * math.pi * CONST.hbar / ROOM.beta**2 * small.slope**2 * BOSE_INTEGRAL
    assert h0 == pytest.approx(expected, rel=1e-14)


def test_h0_quadrature_matches_trapezoid_oracle():
    beta = ROOM.beta
    m0 = 2.0 / beta
    amp = 1e-13  # m^3/J scale

    def s(m):
        return amp * m * math.exp(-m / m0)

    density = ContinuousSpectralDensity(density=s)
    h0 = h0_linear(density, ROOM)

    # independent oracle: dense trapezoid over the thermal window
    m = np.linspace(1e-9 / beta, 100.0 / beta, 200001)
    x = 0.5 * beta * m
    integrand = (amp * m * np.exp(-m / m0)) ** 2 * 4.0 * np.exp(-2 * x) / np.expm1(-2 * x) ** 2
    oracle = 0.5 * math.pi * beta * CONST.hbar * np.trapezoid(integrand, m)
    assert h0 == pytest.approx(oracle, rel=1e-6)


def test_h0_vanishes_at_low_temperature():
    small = drude_small_m(GOLD_LIKE, RHO)
    values = [
        h0_linear(small, ThermalState.finite(t)) for t in (300.0, 30.0, 3.0, 0.3)
    ]
    for a, b in zip(values, values[1:]):
        assert b < a
    # H0 ~ T^2
    assert values[-1] / values[0] == pytest.approx(1e-6, rel=1e-10)
    assert h0_linear(small, COLD) == 0.0


def test_j_linear_basics():
    small = drude_small_m(GOLD_LIKE, RHO)
    tau = 1.0
    assert j_linear(0.0, small, ROOM, tau) == 0.0
    wv = 1e9
    expected = 2.0 * tau * wv**2 * h0_linear(small, ROOM)
    assert j_linear(wv, small, ROOM, tau) == pytest.approx(expected, rel=1e-14)
    assert j_linear(-wv, small, ROOM, tau) == j_linear(wv, small, ROOM, tau)
    with pytest.raises(DomainError):
        j_linear(wv, small, COLD, tau)


def test_j_zero_t_drude_quartic():
    # two equal linear heads: J = (pi/3) tau hbar^3 D^2 omega_v^4
    small = drude_small_m(GOLD_LIKE, RHO)
    tau = 2.0
    wv = 0.05 * small.m_max / CONST.hbar
    expected = math.pi / 3.0 * tau * CONST.hbar**3 * small.slope**2 * wv**4
    assert j_zero_t(wv, small, small, tau) == pytest.approx(expected, rel=1e-10)
    assert j_zero_t(0.0, small, small, tau) == 0.0
    assert j_zero_t(-wv, small, small, tau) == j_zero_t(wv, small, small, tau)


def test_j_zero_t_cutoff_exceeded():
    small = drude_small_m(GOLD_LIKE, RHO)
    with pytest.raises(SpectrumCutoffExceeded):
        j_zero_t(1.01 * small.m_max / CONST.hbar, small, small, 1.0)


def test_j_zero_t_limited_support_raises():
    density = ContinuousSpectralDensity(density=lambda m: m, omega_support=(1e13, 1e15))
    with pytest.raises(SpectrumCutoffExceeded):
        j_zero_t(1e14, density, density, 1.0)


def test_j_zero_t_asymmetric_riemann_oracle():
    hbar = CONST.hbar
    a, b = 2e-13, 5e-13
    m0 = 1e-20

    s1 = ContinuousSpectralDensity(density=lambda m: a * m)
    s2 = ContinuousSpectralDensity(density=lambda m: b * m * m / (m0 + m))
    tau, wv = 1.5, 5e13
    j = j_zero_t(wv, s1, s2, tau)

    # dense midpoint-rule convolution oracle
    n = 400000
    w1 = (np.arange(n) + 0.5) * (wv / n)
    w2 = wv - w1
    vals = (a * hbar * w1) * (b * (hbar * w2) ** 2 / (m0 + hbar * w2))
    oracle = 2.0 * math.pi * tau * wv * hbar * np.sum(vals) * (wv / n)
    assert j == pytest.approx(oracle, rel=1e-6)


def test_j_zero_t_positive_for_passive_spectra():
    sd = spectral_density_from_R(GOLD_LIKE, RHO)
    for wv in np.logspace(12, 15, 7):
        assert j_zero_t(float(wv), sd, sd, 1.0) >= 0.0


def test_convolution_delta_lines():
    line = spectral_density_from_R(PlasmonLine(omega_sp=7e15), RHO)
    conv = j_general_convolution(1.5e16, line, line)
    assert isinstance(conv, DeltaConvolution)
    assert conv.support == pytest.approx(1.4e16)
    assert conv.weight == pytest.approx((0.5 * math.pi * 7e15) ** 2, rel=1e-14)
    with pytest.raises(TypeError):
        j_general_convolution(1e15, line, lambda w: surface_response(GOLD_LIKE, w))


def test_convolution_trivial_zero_and_even():
    R = lambda w: surface_response(GOLD_LIKE, w)
    assert j_general_convolution(0.0, R, R) == 0.0
    assert j_general_convolution(-2e14, R, R) == j_general_convolution(2e14, R, R)


def test_path_equivalence_spectral_vs_response():
    # same full Drude response through the two code paths, equal media
    sd = spectral_density_from_R(GOLD_LIKE, RHO)
    R = lambda w: surface_response(GOLD_LIKE, w)
    tau = 1.0
    for wv in (1e13, 1e14, 5e14):
        j_spectral = j_zero_t(wv, sd, sd, tau)
        conv = j_general_convolution(wv, R, R)
        j_response = (
            2.0 * math.pi * tau * wv * CONST.hbar
            * (1.0 / (2.0 * math.pi**2 * RHO)) ** 2 * conv
        )
        assert j_spectral == pytest.approx(j_response, rel=1e-8)


def test_small_m_head_consistent_with_full_convolution():
    # linear-head quartic vs full-response convolution at small omega_v
    small = drude_small_m(GOLD_LIKE, RHO)
    R = lambda w: surface_response(GOLD_LIKE, w)
    tau = 1.0
    wv = 0.01 * GOLD_LIKE.omega_sp
    j_head = j_zero_t(wv, small, small, tau)
    conv = j_general_convolution(wv, R, R)
    j_full = (
        2.0 * math.pi * tau * wv * CONST.hbar
        * (1.0 / (2.0 * math.pi**2 * RHO)) ** 2 * conv
    )
    assert j_full == pytest.approx(j_head, rel=5e-3)


def test_im_r_dissipation_zero_t_is_doubled_convolution():
    R = lambda w: surface_response(GOLD_LIKE, w)
    im_r = lambda w: surface_response(GOLD_LIKE, w).imag
    wv = 2e14
    conv = j_general_convolution(wv, R, R)
    assert im_r_dissipation_integral(wv, im_r, im_r, COLD) == pytest.approx(
        2.0 * conv, rel=1e-12
    )
    assert im_r_dissipation_integral(0.0, im_r, im_r, ROOM) == 0.0
    assert im_r_dissipation_integral(-wv, im_r, im_r, COLD) == pytest.approx(
        im_r_dissipation_integral(wv, im_r, im_r, COLD)
    )


def test_im_r_dissipation_small_v_limit_is_linear_channel():
    # Phi(omega_v) -> (2 pi^2 rho)^2 * 2 omega_v^2 H0 / (pi |omega_v| hbar)
    # equivalently: pi tau wv hbar (1/2pi^2 rho)^2 Phi == j_linear
    im_r = lambda w: surface_response(GOLD_LIKE, w).imag
    sd = spectral_density_from_R(GOLD_LIKE, RHO)
    tau = 1.0
    wv = 1e8  # deep linear regime
    spec = QuadratureSpec(rel_tol=1e-9, abs_tol=0.0, max_subdivisions=400)
    val = im_r_dissipation_integral(wv, im_r, im_r, ROOM, spec)
    j_from_phi = math.pi * tau * wv * CONST.hbar * (1.0 / (2.0 * math.pi**2 * RHO)) ** 2 * val
    j_lin = j_linear(wv, sd, ROOM, tau, spec=spec)
    assert j_from_phi == pytest.approx(j_lin, rel=5e-3)


def test_im_r_dissipation_positive_and_monotone_in_t():
    im_r = lambda w: surface_response(GOLD_LIKE, w).imag
    wv = 5e13
    vals = [
        im_r_dissipation_integral(wv, im_r, im_r, ThermalState.finite(t))
        for t in (600.0, 300.0, 100.0, 30.0)
    ]
    cold = im_r_dissipation_integral(wv, im_r, im_r, COLD)
    assert all(v > 0 for v in vals)
    for hotter, colder in zip(vals, vals[1:]):
        assert hotter > colder
    assert vals[-1] > cold > 0
