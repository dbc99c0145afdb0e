"""Adaptive quadrature over finite and semi-infinite domains, plus physical constants.

All quantities are strict SI internally (m, s, K, J, N/m^2).  Unit
conversions (eV, nm) happen at the CLI boundary only.

The quadrature core is adaptive Gauss-Kronrod (QUADPACK) behind a small
tolerance-spec interface.  Semi-infinite integrals of exponentially
decaying integrands are mapped onto [0, 1) with

    q = a + s * t / (1 - t),    dq = s / (1 - t)^2 dt,

where ``s`` is the expected decay scale of the integrand; the transform
is exact for pure exponential tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy import integrate


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NonConvergence(RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget above tolerance.

    Attributes
    ----------
    level : str or None
        For nested integrations, names the nesting level that failed
        (e.g. "omega1", "k_y", "k_x").
    """

    def __init__(self, message: str, level: str | None = None):
        super().__init__(message)
        self.level = level


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance and budget settings for one quadrature call.

    Parameters
    ----------
    rel_tol : float
        Target relative error, > 0.
    abs_tol : float
        Target absolute error (same units as the integral), >= 0.
    max_subdivisions : int
        Adaptive bisection budget, >= 1.
    semi_infinite_decay_scale : float, optional
        Decay scale of the integrand for semi-infinite transforms; must
        be > 0 when `integrate_semi_infinite` is used.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 0.0
    max_subdivisions: int = 200
    semi_infinite_decay_scale: float | None = None

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be > 0, got {self.rel_tol}")
        if self.abs_tol < 0:
            raise ValueError(f"abs_tol must be >= 0, got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise ValueError(
                f"max_subdivisions must be >= 1, got {self.max_subdivisions}"
            )
        if (
            self.semi_infinite_decay_scale is not None
            and not self.semi_infinite_decay_scale > 0
        ):
            raise ValueError("semi_infinite_decay_scale must be > 0")

    def with_scale(self, scale: float) -> "QuadratureSpec":
        """Copy of this spec with a different semi-infinite decay scale."""
        return QuadratureSpec(
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            max_subdivisions=self.max_subdivisions,
            semi_infinite_decay_scale=scale,
        )


#: Default for 1D integrals; closed-form cross-checks demand <= 1e-8 agreement.
DEFAULT_SPEC = QuadratureSpec(rel_tol=1e-9, abs_tol=0.0, max_subdivisions=200)

#: Default for each level of the nested 2D/3D force integrals.
NESTED_SPEC = QuadratureSpec(rel_tol=1e-6, abs_tol=0.0, max_subdivisions=200)


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA values, SI.  k_B, eV and hbar are exact by definition."""

    hbar: float = 1.054571817e-34  # J s
    k_B: float = 1.380649e-23      # J/K
    eV: float = 1.602176634e-19    # J
    nm: float = 1e-9               # m


CONST = PhysicalConstants()


def integrate_finite(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> tuple[float, float]:
    """Integrate f over [a, b] adaptively.

    Parameters
    ----------
    f : callable
        Real-valued integrand, finite on [a, b] except possibly for
        integrable endpoint singularities.
    a, b : float
        Integration limits, a <= b.
    spec : QuadratureSpec
        Tolerances and subdivision budget.

    Returns
    -------
    (value, err_estimate) : tuple of float
        The integral and an estimated bound on its absolute error.

    Raises
    ------
    NonConvergence
        If the subdivision budget is exhausted before the requested
        tolerance is met.
    """
    if a > b:
        raise DomainError(f"integration limits out of order: a={a} > b={b}")
    if a == b:
        return 0.0, 0.0
    out = integrate.quad(
        f,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        full_output=1,
    )
    value, err = out[0], out[1]
    if len(out) > 3 and err > max(spec.abs_tol, spec.rel_tol * abs(value)):
        raise NonConvergence(
            f"quadrature did not converge on [{a}, {b}]: "
            f"value={value:.6e}, err={err:.3e} ({out[3].splitlines()[0]})"
        )
    return value, err


def integrate_semi_infinite(
    f: Callable[[float], float],
    a: float,
    spec: QuadratureSpec,
) -> tuple[float, float]:
    """Integrate f over [a, +inf) via the rational decay-scale transform.

    Requires ``spec.semi_infinite_decay_scale`` > 0; f must decay at
    least exponentially on that scale for the transform to concentrate
    the quadrature nodes usefully.

    Returns
    -------
    (value, err_estimate) : tuple of float

    Raises
    ------
    NonConvergence
        Propagated from the underlying finite-interval rule.
    """
    s = spec.semi_infinite_decay_scale
    if s is None or not s > 0:
        raise DomainError(
            "integrate_semi_infinite requires semi_infinite_decay_scale > 0"
        )

    def g(t: float) -> float:
        if t >= 1.0:
            return 0.0
        u = 1.0 - t
        return f(a + s * t / u) * s / (u * u)

    return integrate_finite(g, 0.0, 1.0, spec)
