import math

import numpy as np
import pytest
from scipy import integrate
from scipy.special import j0, jn_zeros

from casimir_friction.numerics import CONST, DEFAULT_SPEC, DomainError, QuadratureSpec
from casimir_friction.geometry import (
    PlateConfig,
    UnequalDensities,
    angular_kx_moment,
    g_hat,
    g_hat_z_integrated,
    k_moment,
    psi_hat,
    radial_moment,
)


def hankel_coulomb_oracle(q, z0, n_zeros=80):
    """2D Fourier transform of 1/r on a plane offset z0, via the radial
    Hankel integral 2 pi Int J0(q rho) rho/sqrt(rho^2+z0^2) drho with
    iterated averaging of the partial sums between Bessel zeros."""
    breaks = np.concatenate([[0.0], jn_zeros(0, n_zeros) / q])
    pieces = [
        integrate.quad(
            lambda r: r / math.sqrt(r * r + z0 * z0) * j0(q * r), a, b, limit=200
        )[0]
        for a, b in zip(breaks[:-1], breaks[1:])
    ]
    partial = np.cumsum(pieces)
    # Euler-style iterated averaging accelerates the alternating tail
    s = partial.astype(float)
    for _ in range(25):
        s = 0.5 * (s[:-1] + s[1:])
    return 2.0 * math.pi * s[-1]


def test_psi_hat_values():
    assert psi_hat(0.0, 2.5) == pytest.approx(2.0 * math.pi / 2.5, rel=1e-15)
    assert psi_hat(1.0, 1.0) == pytest.approx(2.0 * math.pi * math.exp(-1.0), rel=1e-15)
    with pytest.raises(DomainError):
        psi_hat(1.0, 0.0)
    with pytest.raises(DomainError):
        psi_hat(1.0, -2.0)


def test_psi_hat_matches_hankel_oracle():
    for q, z0 in [(1.0, 0.7), (2.0, 1.0), (0.5, 2.0)]:
        oracle = hankel_coulomb_oracle(q, z0)
        assert psi_hat(z0, q) == pytest.approx(oracle, rel=1e-4)


def test_g_hat_ratio_and_value():
    for z0 in (0.0, 0.3, 2.0):
        for q in (0.5, 1.0, 4.0):
            assert g_hat(z0, q) / psi_hat(z0, q) ** 2 == pytest.approx(4.0 * q**4, rel=1e-13)
    assert g_hat(0.0, 1.0) == pytest.approx(16.0 * math.pi**2, rel=1e-14)


def test_g_hat_sign_convention_regression():
    # a naive contraction with k_z^2 = -q^2 on both sides gives
    # (k_perp^2 - q^2)^2 = 0; the z-sign-following contraction gives 2q^2
    z0, q = 0.5, 1.3
    naive = (q * q - q * q) ** 2 * psi_hat(z0, q) ** 2
    assert naive == 0.0
    assert g_hat(z0, q) == pytest.approx((2.0 * q * q) ** 2 * psi_hat(z0, q) ** 2)
    assert g_hat(z0, q) > 0.0


def test_g_hat_nonnegative():
    for z0 in np.linspace(-3, 3, 7):
        for q in np.logspace(-2, 2, 9):
            assert g_hat(float(z0), float(q)) >= 0.0


def test_g_hat_z_integrated_values():
    assert g_hat_z_integrated(1e-12, 1.0) == pytest.approx((2 * math.pi) ** 2, rel=1e-9)
    assert g_hat_z_integrated(0.5, 1.0) == pytest.approx(
        (2 * math.pi) ** 2 * math.exp(-1.0), rel=1e-14
    )


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("d", [0.5, 1.0, 2.0])
def test_g_hat_z_integrated_nested_quadrature_oracle(q, d):
    # double z-quadrature of g_hat over z1 > d, z2 < 0 (z2 -> -z2)
    inner = lambda z1: integrate.quad(
        lambda z2: g_hat(z1 + z2, q), 0.0, 40.0 / q, epsrel=1e-11, limit=200
    )[0]
    oracle, _ = integrate.quad(inner, d, d + 40.0 / q, epsrel=1e-10, limit=200)
    assert g_hat_z_integrated(q, d) == pytest.approx(oracle, rel=1e-8)


def test_angular_moments():
    # direct angular quadrature of cos^n over the circle
    for n in (0, 2, 4, 6):
        direct, _ = integrate.quad(
            lambda p: math.cos(p) ** n / (2.0 * math.pi), 0.0, 2.0 * math.pi,
            epsabs=1e-14, epsrel=1e-13, limit=200,
        )
        assert angular_kx_moment(n) == pytest.approx(direct, abs=1e-12)
    assert angular_kx_moment(2) == pytest.approx(0.5, abs=1e-15)
    assert angular_kx_moment(4) == pytest.approx(3.0 / 8.0, abs=1e-15)
    with pytest.raises(DomainError):
        angular_kx_moment(3)


def test_k_moment_closed_values():
    config = PlateConfig(d=1.0, rho1=1.0, rho2=1.0)
    assert k_moment(2, config) == pytest.approx(3.0 * math.pi / 8.0, rel=1e-14)
    assert k_moment(2, config) == pytest.approx(1.17810, rel=1e-5)
    assert k_moment(4, config) == pytest.approx(45.0 * math.pi / 32.0, rel=1e-14)
    assert k_moment(4, config) == pytest.approx(4.41786, rel=1e-5)


@pytest.mark.parametrize("d", [1e-9, 1e-8, 1e-6])
def test_k_moment_quadrature_matches_closed(d):
    config = PlateConfig(d=d, rho1=1e28, rho2=1e28)
    for power in (2, 4):
        closed = k_moment(power, config)
        numeric = k_moment(power, config, method="quadrature")
        assert numeric == pytest.approx(closed, rel=1e-9)


def test_k_moment_scaling_laws():
    base = PlateConfig(d=2e-9, rho1=1e28, rho2=1e28)
    lam = 3.7
    scaled = PlateConfig(d=lam * base.d, rho1=1e28, rho2=1e28)
    assert k_moment(2, scaled) == pytest.approx(k_moment(2, base) / lam**4, rel=1e-14)
    assert k_moment(4, scaled) == pytest.approx(k_moment(4, base) / lam**6, rel=1e-14)
    spec = QuadratureSpec(rel_tol=1e-10, abs_tol=0.0, max_subdivisions=200)
    assert k_moment(2, scaled, method="quadrature", spec=spec) == pytest.approx(
        k_moment(2, base) / lam**4, rel=1e-9
    )


def test_k_moment_unequal_densities():
    config = PlateConfig(d=1e-9, rho1=1e28, rho2=2e28)
    assert k_moment(2, config) == pytest.approx(
        3.0 * math.pi / 8.0 / 1e-36 * 1e28 * 2e28, rel=1e-12
    )
    with pytest.raises(UnequalDensities):
        k_moment(4, config)
    with pytest.raises(DomainError):
        k_moment(3, config)


def test_radial_moment():
    assert radial_moment(3, 1.0) == pytest.approx(6.0 / 16.0)
    assert radial_moment(5, 1.0) == pytest.approx(120.0 / 64.0)


def test_plate_config_validation():
    with pytest.raises(ValueError):
        PlateConfig(d=0.0, rho1=1e28, rho2=1e28)
    with pytest.raises(ValueError):
        PlateConfig(d=1e-9, rho1=-1e28, rho2=1e28)
