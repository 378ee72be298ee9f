"""The sixth Painleve equation: parameter maps, right-hand side, residual.

The residual operator is written once over duck-typed "ring elements":
anything with +, -, * (including scalars on either side) works, so the same
expression serves pointwise complex evaluation, plain power series,
log-polynomial series and the one-parameter double series.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

__all__ = [
    "ThetaParams",
    "AbgdParams",
    "ResonanceError",
    "SingularConfigError",
    "theta_to_abgd",
    "abgd_to_theta",
    "pvi_rhs",
    "pvi_residual_expr",
    "pvi_residual_series",
    "rational_solution_theta0_1",
    "rational_solution_theta0_minus2",
    "reducible_solution",
    "is_int",
]

RESONANCE_TOL = 1e-10


class ResonanceError(ValueError):
    """An integer (or otherwise excluded) parameter combination was hit."""


class SingularConfigError(ValueError):
    pass


def is_int(z: complex, tol: float = RESONANCE_TOL) -> bool:
    z = complex(z)
    return abs(z.imag) < tol and abs(z.real - round(z.real)) < tol


@dataclass(frozen=True)
class ThetaParams:
    th0: complex
    thx: complex
    th1: complex
    thinf: complex

    def as_tuple(self):
        return (complex(self.th0), complex(self.thx), complex(self.th1), complex(self.thinf))

    # resonance predicates, tolerance 1e-10
    def any_theta_integer(self) -> bool:
        return any(is_int(t) for t in self.as_tuple())

    def th1_thinf_resonant(self) -> bool:
        return is_int(self.th1 + self.thinf) or is_int(self.th1 - self.thinf)

    def th0_thx_resonant(self) -> bool:
        return is_int(self.th0 + self.thx) or is_int(self.th0 - self.thx)

    def theta_sum(self) -> complex:
        return self.th0 + self.thx + self.th1 + self.thinf


@dataclass(frozen=True)
class AbgdParams:
    alpha: complex
    beta: complex
    gamma: complex
    delta: complex


def theta_to_abgd(theta: ThetaParams) -> AbgdParams:
    t0, tx, t1, ti = theta.as_tuple()
    return AbgdParams(
        alpha=(ti - 1.0) ** 2 / 2.0,
        beta=-t0 ** 2 / 2.0,
        gamma=t1 ** 2 / 2.0,
        delta=0.5 - tx ** 2 / 2.0,
    )


def abgd_to_theta(p: AbgdParams, signs=(1, 1, 1, 1)) -> ThetaParams:
    """Invert theta_to_abgd; signs pick the square-root branches (0,x,1,inf).

    thinf is defined only up to thinf -> 2 - thinf, so the last sign selects
    1 + sqrt(2 alpha) vs 1 - sqrt(2 alpha).
    """
    s0, sx, s1, si = signs
    return ThetaParams(
        th0=s0 * cmath.sqrt(-2.0 * p.beta),
        thx=sx * cmath.sqrt(1.0 - 2.0 * p.delta),
        th1=s1 * cmath.sqrt(2.0 * p.gamma),
        thinf=1.0 + si * cmath.sqrt(2.0 * p.alpha),
    )


def pvi_rhs(x: complex, y: complex, yp: complex, theta: ThetaParams) -> complex:
    """y'' as prescribed by PVI at a regular point."""
    if abs(x) < 1e-12 or abs(x - 1.0) < 1e-12:
        raise SingularConfigError(f"x = {x} is a fixed critical point")
    if min(abs(y), abs(y - 1.0), abs(y - x)) < 1e-12:
        raise SingularConfigError(f"y = {y} within tolerance of 0, 1, x")
    p = theta_to_abgd(theta)
    t1 = 0.5 * (1.0 / y + 1.0 / (y - 1.0) + 1.0 / (y - x)) * yp * yp
    t2 = (1.0 / x + 1.0 / (x - 1.0) + 1.0 / (y - x)) * yp
    pref = y * (y - 1.0) * (y - x) / (x * x * (x - 1.0) ** 2)
    bracket = (
        p.alpha
        + p.beta * x / (y * y)
        + p.gamma * (x - 1.0) / ((y - 1.0) ** 2)
        + p.delta * x * (x - 1.0) / ((y - x) ** 2)
    )
    return t1 - t2 + pref * bracket


def pvi_residual_expr(x, y, yp, ypp, theta: ThetaParams):
    """PVI residual times the common denominator x^2 (x-1)^2 y (y-1) (y-x).

    Generic over the ring of x, y: vanishes identically (as a polynomial)
    on exact solutions, including the singular ones, instead of hitting 0/0.
    """
    p = theta_to_abgd(theta)
    x2 = x * x
    xm1 = x - 1.0
    xm1_2 = xm1 * xm1
    ym1 = y - 1.0
    ymx = y - x
    yy1 = y * ym1
    d = x2 * xm1_2 * yy1 * ymx  # full denominator
    r = d * ypp
    r = r - 0.5 * (x2 * xm1_2) * (ym1 * ymx + y * ymx + yy1) * (yp * yp)
    r = r + (x * xm1_2 + x2 * xm1) * yy1 * ymx * yp + x2 * xm1_2 * yy1 * yp
    r = r - p.alpha * (yy1 * ymx) * (yy1 * ymx)
    r = r - p.beta * x * (ym1 * ymx) * (ym1 * ymx)
    r = r - p.gamma * xm1 * (y * ymx) * (y * ymx)
    r = r - p.delta * x * xm1 * (yy1 * yy1)
    return r


def pvi_residual_series(series, theta: ThetaParams):
    """Residual of a series object; returns the residual in the same ring.

    The series must provide .variable() (the ring element x at the same
    truncation) and .deriv().
    """
    x = series.variable()
    yp = series.deriv()
    ypp = yp.deriv()
    return pvi_residual_expr(x, series, yp, ypp, theta)


# ----------------------------------------------------------------------
# exact solutions with vanishing theta sum (reducible monodromy family)


def rational_solution_theta0_1(theta: ThetaParams, x: complex) -> complex:
    """Closed rational solution on th0 = 1, th0+thx+th1+thinf = 0."""
    t1, ti = theta.th1, theta.thinf
    if abs(theta.th0 - 1.0) > RESONANCE_TOL or abs(theta.theta_sum()) > 1e-9:
        raise ResonanceError("requires th0 = 1 and vanishing theta sum")
    # the terminating branch of the reducible family: u = x^{th1+thinf-1}
    # (1 - (th1+1)/(th1+thinf) x) substituted into the u-to-y map
    return x / (x * (1.0 + t1) - (t1 + ti))


def rational_solution_theta0_minus2(theta: ThetaParams, x: complex) -> complex:
    """Closed rational solution on th0 = -2, vanishing theta sum."""
    t1, ti = theta.th1, theta.thinf
    if abs(theta.th0 + 2.0) > RESONANCE_TOL or abs(theta.theta_sum()) > 1e-9:
        raise ResonanceError("requires th0 = -2 and vanishing theta sum")
    q = 2.0 - (ti + t1) + t1 * x
    return (q * q - 2.0 + ti + t1 - t1 * x * x) / ((1.0 - ti) * q)


def reducible_solution(theta: ThetaParams, a: complex, x: complex, u_and_du=None) -> complex:
    """One-parameter family at vanishing theta sum, via a hypergeometric u.

    y = (th1 + thinf - 1 + x (1 + thx))/(thinf - 1)
        - x (1 - x) u'(x) / ((thinf - 1) u(x)),
    where u = u1 + a u2 solves the hypergeometric equation
    x(1-x) u'' + [(2 - thinf - th1) - (4 - thinf + thx) x] u'
              - (2 - thinf)(1 + thx) u = 0.

    u_and_du overrides the built-in hypergeometric basis (for testing);
    otherwise the regular-at-0 Gauss solution plus a times the second
    Frobenius solution is used.
    """
    t0, tx, t1, ti = theta.as_tuple()
    if abs(theta.theta_sum()) > 1e-9:
        raise ResonanceError("reducible solution requires vanishing theta sum")
    if is_int(ti - 1.0) and abs(ti - 1.0) < RESONANCE_TOL:
        raise ResonanceError("thinf = 1 degenerates the reducible formula")
    if u_and_du is None:
        from .hypergeom import reducible_u
        u, du = reducible_u(theta, a, x)
    else:
        u, du = u_and_du
    if abs(u) < 1e-14:
        raise SingularConfigError("u(x; a) = 0: movable singularity")
    return (t1 + ti - 1.0 + x * (1.0 + tx)) / (ti - 1.0) - x * (1.0 - x) * du / ((ti - 1.0) * u)
