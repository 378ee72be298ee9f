"""Critical-behavior seeds at x = 0: classification and leading terms.

Seeds provide (y, y') at small |x| inside a sector, used to start numeric
continuation and to verify trajectories against the predicted behavior.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .numerics import BranchSpec, PRINCIPAL, clog, cpow
from .pvi import ThetaParams

__all__ = [
    "OutOfStripError",
    "CriticalSeed",
    "classify",
    "make_seed",
    "seed_value",
    "trig_amp_phase",
    "r_from_amp_phase",
    "three_term_value",
    "chazy_image",
]

_TOL = 1e-10


class OutOfStripError(ValueError):
    """|Re sigma| >= 1: spiral-domain regime, representable but not evaluated."""


@dataclass(frozen=True)
class CriticalSeed:
    kind: str           # power-generic | trig | one-param-sum | one-param-diff |
                        # log-generic | log-special+ | log-special- | chazy
    theta: ThetaParams
    sigma: complex = 0.0
    r: complex = 0.0
    sigma_sign: int = 1          # for one-param kinds: sigma = sign*(th0 +- thx)
    arg_sector: tuple = (-math.pi / 4.0, math.pi / 4.0)

    def to_json(self):
        return {
            "kind": self.kind,
            "sigma": [self.sigma.real, self.sigma.imag],
            "r": [self.r.real, self.r.imag],
            "theta": [[t.real, t.imag] for t in self.theta.as_tuple()],
            "arg_sector": list(self.arg_sector),
        }


def classify(sigma: complex, theta: ThetaParams) -> str:
    """Which leading-term formula applies for this (sigma, theta)."""
    sigma = complex(sigma)
    if abs(sigma.real) >= 1.0:
        raise OutOfStripError(
            f"Re sigma = {sigma.real}: outside the strip |Re sigma| < 1 "
            "(spiral-domain regime, not evaluated)")
    t0, tx = theta.th0, theta.thx
    if abs(sigma) < _TOL:
        if abs(t0 - tx) < _TOL or abs(t0 + tx) < _TOL:
            return "log-special+" if abs(t0 - tx) < _TOL else "log-special-"
        return "log-generic"
    for s in (1, -1):
        if abs(sigma - s * (t0 + tx)) < _TOL:
            return "one-param-sum"
        if abs(sigma - s * (t0 - tx)) < _TOL:
            return "one-param-diff"
    if abs(sigma.real) < _TOL:
        return "trig"
    return "power-generic"


def make_seed(sigma, theta: ThetaParams, r, arg_sector=(-math.pi / 4.0, math.pi / 4.0)):
    kind = classify(sigma, theta)
    sign = 1
    if kind in ("one-param-sum", "one-param-diff"):
        t0, tx = theta.th0, theta.thx
        base = t0 + tx if kind == "one-param-sum" else t0 - tx
        sign = 1 if abs(sigma - base) < _TOL else -1
    if kind in ("trig", "power-generic", "one-param-sum", "one-param-diff") and abs(complex(r)) == 0:
        raise ValueError(f"kind {kind} requires r != 0")
    return CriticalSeed(kind=kind, theta=theta, sigma=complex(sigma), r=complex(r),
                        sigma_sign=sign, arg_sector=tuple(arg_sector))


def _power_terms(seed: CriticalSeed):
    """List of (coefficient, exponent) pairs for the power-type kinds."""
    t0, tx, t1, ti = seed.theta.as_tuple()
    s, r = seed.sigma, seed.r
    if seed.kind == "power-generic":
        lead = ((s * s - (t0 + tx) ** 2) * ((t0 - tx) ** 2 - s * s)) / (16.0 * s ** 3 * r)
        if s.real > 0:
            return [(lead, 1.0 - s)]
        return [(-r / s, 1.0 + s)]
    if seed.kind == "trig":
        A, phi = trig_amp_phase(s, seed.theta, r)
        B = (t0 * t0 - tx * tx + s * s) / (2.0 * s * s)
        return [(A / 2.0 * cmath.exp(1j * phi), 1.0 - s),
                (B, 1.0),
                (-A / 2.0 * cmath.exp(-1j * phi), 1.0 + s)]
    if seed.kind in ("one-param-sum", "one-param-diff"):
        base = t0 + tx if seed.kind == "one-param-sum" else t0 - tx
        # sigma = sign*base; second term is -(sign) r/base x^{1+sigma}
        return [(t0 / base, 1.0), (-seed.sigma_sign * r / base, 1.0 + s)]
    raise ValueError(seed.kind)


def three_term_value(sigma, theta: ThetaParams, r, x, branch: BranchSpec = PRINCIPAL):
    """Leading + two subleading powers of the generic behavior, and derivative."""
    t0, tx, _, _ = theta.as_tuple()
    s = complex(sigma)
    terms = [
        (((s * s - (t0 + tx) ** 2) * ((t0 - tx) ** 2 - s * s)) / (16.0 * s ** 3 * r), 1.0 - s),
        ((t0 * t0 - tx * tx + s * s) / (2.0 * s * s), 1.0),
        (-r / s, 1.0 + s),
    ]
    y = sum(c * cpow(x, e, branch) for c, e in terms)
    yp = sum(c * e * cpow(x, e - 1.0, branch) for c, e in terms)
    return y, yp


def seed_value(seed: CriticalSeed, x, branch: BranchSpec = PRINCIPAL, three_term=False):
    """(y, y') of the seed's printed leading behavior at x."""
    t0, tx, t1, ti = seed.theta.as_tuple()
    r = seed.r
    if seed.kind in ("power-generic", "trig", "one-param-sum", "one-param-diff"):
        if three_term and seed.kind == "power-generic":
            return three_term_value(seed.sigma, seed.theta, r, x, branch)
        terms = _power_terms(seed)
        y = sum(c * cpow(x, e, branch) for c, e in terms)
        yp = sum(c * e * cpow(x, e - 1.0, branch) for c, e in terms)
        return y, yp
    lg = clog(x, branch)
    if seed.kind == "log-generic":
        d = t0 * t0 - tx * tx
        u = lg + (4.0 * r + 2.0 * t0) / d
        f = -d / 4.0 * u * u + t0 * t0 / d
        # y = x f(ln x); y' = f + f'
        fp = -d / 2.0 * u
        return x * f, f + fp
    if seed.kind in ("log-special+", "log-special-"):
        sgn = 1.0 if seed.kind.endswith("+") else -1.0
        f = r + sgn * t0 * lg
        return x * f, f + sgn * t0
    if seed.kind == "chazy":
        return chazy_image(seed.theta, r, x, branch=branch)
    raise ValueError(f"unknown seed kind {seed.kind}")


def seed_second(seed: CriticalSeed, x, branch: BranchSpec = PRINCIPAL):
    """Closed-form y'' of the seed (for residual diagnostics)."""
    t0, tx, t1, ti = seed.theta.as_tuple()
    if seed.kind in ("power-generic", "trig", "one-param-sum", "one-param-diff"):
        terms = _power_terms(seed)
        return sum(c * e * (e - 1.0) * cpow(x, e - 2.0, branch) for c, e in terms)
    lg = clog(x, branch)
    r = seed.r
    if seed.kind == "log-generic":
        d = t0 * t0 - tx * tx
        u = lg + (4.0 * r + 2.0 * t0) / d
        # y = x(-d/4 u^2 + t0^2/d); y'' = f'(L)/x + f''(L)/x
        return (-d / 2.0 * u - d / 2.0) / x
    if seed.kind in ("log-special+", "log-special-"):
        sgn = 1.0 if seed.kind.endswith("+") else -1.0
        return sgn * t0 / x
    raise ValueError(seed.kind)


def trig_amp_phase(sigma, theta: ThetaParams, r):
    """Amplitude A and phase phi of the oscillatory (Re sigma = 0) form."""
    t0, tx, _, _ = theta.as_tuple()
    s = complex(sigma)
    if abs(s) < _TOL or abs(s.real) > _TOL:
        raise ValueError("trig form needs sigma nonzero and purely imaginary")
    B = (t0 * t0 - tx * tx + s * s) / (2.0 * s * s)
    A = cmath.sqrt(t0 * t0 / (s * s) - B * B)
    if abs(A) < 1e-14:
        raise ValueError("degenerate amplitude A = 0")
    phi = 1j * cmath.log(2.0 * r / (s * A))
    return A, phi


def r_from_amp_phase(sigma, A, phi):
    return sigma * A * cmath.exp(-1j * phi) / 2.0


def chazy_image(theta: ThetaParams, r, x, branch: BranchSpec = PRINCIPAL):
    """Logarithmic-leading behavior in the th1^2 != (thinf-1)^2 regime.

    Returns (y, y') of the two printed terms.  For th1^2 = (thinf-1)^2 the
    second branch +-1/((thinf-1) ln x) applies (branch="second" not needed:
    selected automatically).
    """
    _, _, t1, ti = theta.as_tuple()
    d = t1 * t1 - (ti - 1.0) ** 2
    lg = clog(x, branch)
    if abs(d) < _TOL:
        # second printed branch: thinf -+ th1 = 1
        if abs(ti - 1.0) < _TOL:
            raise ValueError("thinf = 1 leaves both branch denominators zero")
        c = 1.0 / ((ti - 1.0) * lg)
        y = c * (1.0 - r / ((ti - 1.0) * lg))
        # d/dx [c1/ln + c2/ln^2], c1=1/(ti-1), c2=-r/(ti-1)^2
        c1 = 1.0 / (ti - 1.0)
        c2 = -r / (ti - 1.0) ** 2
        yp = (-c1 / (lg * lg) - 2.0 * c2 / (lg ** 3)) / x
        return y, yp
    # main branch: 4/(d ln^2 x) [1 + (8r + 4(thinf-1))/d * 1/ln x]
    c2 = 4.0 / d
    c3 = 4.0 * (8.0 * r + 4.0 * (ti - 1.0)) / (d * d)
    y = c2 / (lg * lg) + c3 / (lg ** 3)
    yp = (-2.0 * c2 / (lg ** 3) - 3.0 * c3 / (lg ** 4)) / x
    return y, yp
