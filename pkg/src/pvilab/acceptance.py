"""End-to-end cross-validation checks, one callable per claim.

Each check returns (ok, detail) and validates a closed form against an
independent route: the series engine against printed coefficients, the
monodromy constructors against trace identities and inversion formulas,
the Gamma-product connection matrices against the ODE-transport oracle,
loop transport against local exponents, and the critical-behavior seeds
against direct integration.  Both the test suite and `pvilab selftest`
iterate CRITERIA.
"""

from __future__ import annotations

import cmath
import math
import time

import numpy as np

from .asymptotics import make_seed, seed_value, _power_terms
from .continuation import PathPlan, integrate
from .hypergeom import connection_matrix, connection_oracle
from .monodromy import (build_case_a, build_case_b, build_case_c,
                        check_identity, invert_s_case_b, invert_s_case_c)
from .numerics import SIGMA3, PoleError, inv2, mat2, tr2, det2
from .pvi import (ResonanceError, ThetaParams, pvi_residual_expr,
                  pvi_residual_series, rational_solution_theta0_1,
                  rational_solution_theta0_minus2)
from .series import residual_leading_order, solve_taylor
from .symmetries import act_theta, transport_solution
from . import fuchsian

__all__ = ["CRITERIA", "run_all"]


# ----------------------------------------------------------------------
# parameter draws


def _rng(seed):
    return np.random.default_rng(seed)


def _retry(make, n=400):
    for _ in range(n):
        try:
            return make()
        except (ResonanceError, PoleError, ValueError):
            continue
    raise RuntimeError("could not draw admissible parameters")


def _theta_draw(rng, margin=0.08):
    """Real theta with every relevant combination away from the integers."""
    while True:
        t0, tx, t1, ti = (rng.uniform(0.12, 0.88) * rng.choice((-1.0, 1.0))
                          for _ in range(4))
        combos = (t0, tx, t1, ti, ti - 1.0, t1 - ti, t1 + ti, t0 + tx, t0 - tx)
        if all(abs(c - round(c)) > margin for c in combos):
            return ThetaParams(t0, tx, t1, ti)


def _nonint(rng, margin=0.1):
    while True:
        v = rng.uniform(0.12, 0.88) * rng.choice((-1.0, 1.0))
        if abs(v - round(v)) > margin:
            return v


def _points(rng, n, bad=(), guard=0.1, box=1.2):
    """n complex sample points away from 0, 1 and the listed bad points."""
    out = []
    while len(out) < n:
        x = complex(rng.uniform(-box, box), rng.uniform(-box, box))
        if min(abs(x), abs(x - 1.0)) < guard:
            continue
        if any(abs(x - b) < guard for b in bad):
            continue
        out.append(x)
    return out


# ----------------------------------------------------------------------
# 1. Taylor series of the y(0)=(th1-thinf+1)/(1-thinf) class


def taylor_form1_fidelity():
    rng = _rng(101)
    t_start = time.perf_counter()
    worst = 0.0
    min_order = 99
    for _ in range(5):
        th = _theta_draw(rng)
        t0, tx, t1, ti = th.as_tuple()
        ser = solve_taylor(th, "form1", N=12)
        d = t1 - ti
        b0 = (d + 1.0) / (1.0 - ti)
        b1 = (t1 * (d * d + 2.0 * d + tx * tx - t0 * t0)
              / (2.0 * (1.0 - ti) * (ti - t1) * (d + 2.0)))
        worst = max(worst, abs(ser.c[0] - b0), abs(ser.c[1] - b1))
        lead = residual_leading_order(pvi_residual_series(ser, th))
        min_order = min(min_order, 99 if lead is None else lead)
    dt = time.perf_counter() - t_start
    ok = worst < 1e-12 and min_order >= 11 and dt < 2.0
    return ok, (f"b0/b1 deviation {worst:.2e} (tol 1e-12), residual first "
                f"nonzero order {min_order} (>= 11), runtime {dt:.2f}s (< 2s)")


# ----------------------------------------------------------------------
# 2. the thinf=3/2 branch coefficient vector (-2, a, th0^2-1+3a/2-a^2/2)


def taylor_special_vector():
    worst = 0.0
    for a, t0 in ((0.37, 0.61), (-1.2, 0.33), (2.4, -0.45)):
        th = ThetaParams(t0, t0, -1.5, 1.5)
        ser = solve_taylor(th, "form2", a=a, N=4)
        tgt = (-2.0, a, t0 * t0 - 1.0 + 1.5 * a - 0.5 * a * a)
        worst = max(worst, max(abs(ser.c[k] - tgt[k]) for k in range(3)))
    return worst < 1e-13, f"coefficient deviation {worst:.2e} (tol 1e-13)"


# ----------------------------------------------------------------------
# 3. rational and singular exact solutions, pointwise residual


def exact_solution_residuals():
    rng = _rng(303)
    worst = 0.0

    th = ThetaParams(1.0, 0.4, -0.7, -0.7)
    dd, c0 = 1.0 + th.th1, th.th1 + th.thinf
    for x in _points(rng, 100, bad=(c0 / dd,), guard=0.3):
        y = rational_solution_theta0_1(th, x)
        yp = -c0 / (dd * x - c0) ** 2
        ypp = 2.0 * c0 * dd / (dd * x - c0) ** 3
        worst = max(worst, abs(pvi_residual_expr(x, y, yp, ypp, th)))

    th = ThetaParams(-2.0, 1.5, 0.2, 0.3)
    t1, ti = th.th1, th.thinf
    for x in _points(rng, 100, bad=((ti + t1 - 2.0) / t1,), guard=0.3, box=1.0):
        q = 2.0 - (ti + t1) + t1 * x
        nu = q * q - 2.0 + ti + t1 - t1 * x * x
        de = (1.0 - ti) * q
        nup = 2.0 * t1 * q - 2.0 * t1 * x
        nupp = 2.0 * t1 * t1 - 2.0 * t1
        dep = (1.0 - ti) * t1
        y = rational_solution_theta0_minus2(th, x)
        yp = nup / de - nu * dep / de ** 2
        ypp = (nupp / de - 2.0 * nup * dep / de ** 2
               + 2.0 * nu * dep ** 2 / de ** 3)
        worst = max(worst, abs(pvi_residual_expr(x, y, yp, ypp, th)))

    singular = (
        (ThetaParams(0.0, 0.37, 0.83, 1.29), lambda x: (0.0, 0.0, 0.0)),
        (ThetaParams(0.37, 0.52, 0.0, 1.7), lambda x: (1.0, 0.0, 0.0)),
        (ThetaParams(0.41, 0.0, 0.67, 0.29), lambda x: (x, 1.0, 0.0)),
    )
    for th, jet in singular:
        for x in _points(rng, 100):
            y, yp, ypp = jet(x)
            worst = max(worst, abs(pvi_residual_expr(x, y, yp, ypp, th)))
    return worst < 1e-12, f"worst pointwise residual {worst:.2e} (tol 1e-12)"


# ----------------------------------------------------------------------
# 4. monodromy constructors: invariants, trace identity, s-inversions


def _rep_checks(rep, targets, worst):
    for key, m in rep.matrices().items():
        worst["det"] = max(worst["det"], abs(det2(m) - 1.0))
        worst["tr"] = max(worst["tr"],
                          abs(tr2(m) - 2.0 * cmath.cos(math.pi * targets[key])))


def monodromy_constructors():
    rng = _rng(404)
    worst = {"det": 0.0, "tr": 0.0, "m0mx": 0.0, "ident": 0.0, "inv": 0.0}

    for _ in range(20):
        def draw_a():
            th = _theta_draw(rng)
            rep = build_case_a(th)
            if not rep.order:
                raise ValueError("ambiguous product order")
            return th, rep
        th, rep = _retry(draw_a)
        _rep_checks(rep, {"M0": th.th0, "Mx": th.thx, "M1": th.th1,
                          "Minf": th.thinf}, worst)
        worst["ident"] = max(worst["ident"], abs(check_identity(rep, th)))

    for _ in range(20):
        def draw_b():
            thx, thinf = _nonint(rng), _nonint(rng)
            s = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.4, 0.4))
            if abs(s) < 0.05 or abs(s + thx) < 0.05:
                raise ValueError("degenerate s")
            r = complex(rng.uniform(0.3, 1.5) * rng.choice((-1.0, 1.0)),
                        rng.uniform(-0.5, 0.5))
            rep = build_case_b(thx, thinf, s, r)
            if not rep.order:
                raise ValueError("ambiguous product order")
            return thx, thinf, s, rep
        thx, thinf, s, rep = _retry(draw_b)
        _rep_checks(rep, {"M0": thx, "Mx": thx, "M1": thinf, "Minf": thinf},
                    worst)
        worst["m0mx"] = max(worst["m0mx"],
                            float(np.max(np.abs(rep.M0 @ rep.Mx - np.eye(2)))))
        th_eff = ThetaParams(thx, thx, thinf, thinf)
        worst["ident"] = max(worst["ident"], abs(check_identity(rep, th_eff)))
        worst["inv"] = max(worst["inv"],
                           abs(invert_s_case_b(rep) - s) / (1.0 + abs(s)))

    for _ in range(20):
        def draw_c():
            th0, thx = _nonint(rng), _nonint(rng)
            s = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.4, 0.4))
            if abs(s) < 0.05:
                raise ValueError("degenerate s")
            rep = build_case_c(th0, thx, s)
            if not rep.order:
                raise ValueError("ambiguous product order")
            return th0, thx, s, rep
        th0, thx, s, rep = _retry(draw_c)
        _rep_checks(rep, {"M0": th0, "Mx": thx, "M1": 0.0, "Minf": 1.0}, worst)
        worst["ident"] = max(worst["ident"],
                             abs(check_identity(rep, rep.theta)))
        worst["inv"] = max(worst["inv"],
                           abs(invert_s_case_c(rep) - s) / (1.0 + abs(s)))

    ok = (worst["det"] < 1e-12 and worst["tr"] < 1e-10
          and worst["m0mx"] < 1e-12 and worst["ident"] < 1e-9
          and worst["inv"] < 1e-10)
    return ok, (f"det {worst['det']:.1e} (1e-12), traces {worst['tr']:.1e} "
                f"(1e-10), M0*Mx-I {worst['m0mx']:.1e} (1e-12), trace identity "
                f"{worst['ident']:.1e} (1e-9), s round-trips {worst['inv']:.1e} (1e-10)")


# ----------------------------------------------------------------------
# 5. Gamma-product connection matrices vs the ODE-transport oracle


def connection_matrix_agreement():
    rng = _rng(505)
    t_start = time.perf_counter()
    worst = 0.0
    for which in ("C0inf", "C01", "Cinf0", "C01c"):
        for _ in range(5):
            def draw():
                if which in ("C0inf", "C01"):
                    th = _theta_draw(rng)
                else:
                    t0, tx = _nonint(rng), _nonint(rng)
                    if (abs(t0 + tx - round(t0 + tx)) < 0.1
                            or abs(t0 - tx - round(t0 - tx)) < 0.1):
                        raise ValueError("resonant pair")
                    th = ThetaParams(t0, tx, 0.0, 1.0)
                return th, connection_matrix(which, th)
            th, cmat = _retry(draw)
            orc = connection_oracle(which, th)
            worst = max(worst, float(np.max(np.abs(cmat - orc)))
                        / max(1.0, float(np.max(np.abs(cmat)))))
    dt = time.perf_counter() - t_start
    ok = worst < 1e-8 and dt < 10.0
    return ok, (f"worst relative deviation {worst:.2e} (tol 1e-8), "
                f"runtime {dt:.1f}s (< 10s)")


# ----------------------------------------------------------------------
# 6. loop-transport trace about lambda=1 vs the local exponent


def loop_transport_scaling():
    thx, thinf, s, r = 0.31, 0.44, 0.27 + 0.1j, 1.0
    sys = fuchsian.build_case_b(thx, thinf, s, r)
    tgt = 2.0 * cmath.cos(math.pi * thinf)
    errs = {}
    for x in (1e-2, 1e-3):
        m = fuchsian.loop_monodromy(sys, x, 1.0, tol=1e-12)
        errs[x] = abs(tr2(m) - tgt)
    bound_ok = all(e <= 1.0 * x + 1e-8 for x, e in errs.items())
    ratio = errs[1e-2] / errs[1e-3]
    ratio_ok = 5.0 <= ratio <= 20.0
    detail = (f"trace err {errs[1e-2]:.2e} @ x=1e-2, {errs[1e-3]:.2e} @ x=1e-3; "
              f"bound C|x|+1e-8 {'ok' if bound_ok else 'FAIL'}; two-point ratio "
              f"{ratio:.0f}, target [5, 20]")
    if not ratio_ok:
        detail += (" -- the stored truncation reproduces the lambda=1 exponent "
                   "through O(x^2), so the trace error is cubic in x and a "
                   "linear-scaling ratio near 10 is not attainable here; the "
                   "linear regime shows up at the lambda=0 and lambda=x loops "
                   "instead (see the loop-transport property tests)")
    return bound_ok and ratio_ok, detail


# ----------------------------------------------------------------------
# 7. y reconstructed from the residue matrices vs the series coefficients


def y_from_residues():
    th_a = ThetaParams(0.21, 0.33, 0.17, 0.52)
    thx, thinf, s, r = 0.31, 0.44, 0.27, 1.0
    a_b = thinf * (2.0 * s + thx + 1.0) / (2.0 * (thinf - 1.0))
    th_b = ThetaParams(thx, thx, thinf, thinf)
    th0, thx_c, r1, rho = 0.23, 0.57, 0.6, 1.3
    th_c = ThetaParams(th0, thx_c, 0.0, 1.0)
    cases = (
        ("a", fuchsian.build_case_a(th_a, r=1.0),
         solve_taylor(th_a, "form1", N=2)),
        ("b", fuchsian.build_case_b(thx, thinf, s, r),
         solve_taylor(th_b, "form2", a=a_b, N=2)),
        ("c", fuchsian.build_case_c(th0, thx_c, r1, rho),
         solve_taylor(th_c, "form3", a=1.0 / (1.0 - r1 / rho), N=2)),
    )
    ok = True
    notes = []
    for tag, sys, ser in cases:
        def two(x):
            return ser.c[0] + ser.c[1] * x
        e_ref = abs(fuchsian.y_from_A(sys, 1e-2) - two(1e-2))
        e = abs(fuchsian.y_from_A(sys, 1e-3) - two(1e-3))
        c_est = e_ref / 1e-4
        this = e <= 2.0 * c_est * 1e-6 + 1e-14
        ok = ok and this
        notes.append(f"case {tag}: err {e:.2e} at x=1e-3 "
                     f"(C={c_est:.2g}, bound {2.0 * c_est * 1e-6:.2e})")
    return ok, "; ".join(notes)


# ----------------------------------------------------------------------
# 8. formal gauge recursions vs the closed forms of the matching matrices


def gauge_recursion_closed_forms():
    thx = 0.31 + 0.0j
    thinf = 0.44 + 0.0j
    s = 0.27 + 0.13j
    r = 1.1 + 0.0j
    x = 1e-3 + 2e-4j
    g = mat2(1.0, 1.0, (s + thx) / r, s / r)
    gi = inv2(g)
    b = -x * thinf
    # leading form of G^{-1}(A0+Ax)G: zero diagonal, printed off-diagonals
    m = mat2(0.0, b * r, s * (s + thx) * b / r, 0.0)
    a_mat = -(thx / 2.0) * (g @ SIGMA3 @ gi)
    gs3g = gi @ SIGMA3 @ g
    devs = []

    # outward frame: z-leading x(thx/2)sigma3, constant tail -(thinf/2) G^-1 s3 G
    (g1,), om1 = fuchsian.appendix2_recursion(
        "IRR1", x * (thx / 2.0) * SIGMA3, [-m, -(thinf / 2.0) * gs3g], 1)
    g11 = (-thinf * (2.0 * s + thx) / (2.0 * thx)
           - s * (s + thx) * b * b / (x * thx))
    tgt = mat2(g11, r * b / (x * thx), -s * (s + thx) * b / (x * thx * r), -g11)
    devs.append(float(np.max(np.abs(g1 - tgt))))
    devs.append(float(np.max(np.abs(om1))))

    # inward frame: z-leading x(thinf/2)sigma3, coefficients [A0+Ax, A, A, ...]
    (g1i,), om1i = fuchsian.appendix2_recursion(
        "IRR1", x * (thinf / 2.0) * SIGMA3, [m, a_mat], 1)
    g11i = -a_mat[0, 0] - s * (s + thx) * b * b / (x * thinf)
    g22i = -a_mat[1, 1] + s * (s + thx) * b * b / (x * thinf)
    tgti = mat2(g11i, -r * b / (x * thinf),
                s * (s + thx) * b / (x * thinf * r), g22i)
    devs.append(float(np.max(np.abs(g1i - tgti))))
    devs.append(float(np.max(np.abs(om1i))))

    # quadratic-leading frame
    k1, k2, lam1 = fuchsian.appendix2_recursion(
        "IRR2", (thinf / 2.0) * SIGMA3, [m, a_mat, a_mat], 2, x=x)
    k1_tgt = mat2(-(s + thx / 2.0), 0.0, 0.0, s + thx / 2.0)
    devs.append(float(np.max(np.abs(k1 - k1_tgt))))
    devs.append(float(np.max(np.abs(lam1))))
    k2_12 = -m[0, 1] / (x * x * thinf)
    k2_21 = m[1, 0] / (x * x * thinf)
    devs.append(abs(k2[0, 1] - k2_12) / (1.0 + abs(k2_12)))
    devs.append(abs(k2[1, 0] - k2_21) / (1.0 + abs(k2_21)))
    for i in range(2):
        j = 1 - i
        bal = (a_mat[i, i] ** 2 - a_mat[i, i]
               - m[i, j] * (k2_21 if i == 0 else k2_12)) / 2.0
        devs.append(abs(k2[i, i] - bal) / (1.0 + abs(bal)))

    worst = max(devs)
    return worst < 1e-12, f"worst closed-form deviation {worst:.2e} (tol 1e-12)"


# ----------------------------------------------------------------------
# 9. power-type seed vs direct integration (drift and round trip)


def seed_self_consistency():
    t_start = time.perf_counter()
    th = ThetaParams(2.3, 2.3, 0.31, 0.44)
    sigma = 0.3 + 0.2j
    seed = make_seed(sigma, th, 1.0)
    x0, x1 = 1e-4, 1e-2
    y0, yp0 = seed_value(seed, x0, three_term=True)
    traj = integrate((x0, y0, yp0), th, PathPlan((x0, x1), 1e-10), tol=1e-10)
    c, e = min(_power_terms(seed), key=lambda t: complex(t[1]).real)
    drift = max(abs(y / (c * x ** e) - 1.0)
                for x, y, _, _ in traj.samples)
    xf, yf, ypf = traj.final()
    back = integrate((xf, yf, ypf), th, PathPlan((x1, x0), 1e-10), tol=1e-10)
    _, yb, ypb = back.final()
    rt = max(abs(yb - y0) / (1.0 + abs(y0)), abs(ypb - yp0) / (1.0 + abs(yp0)))
    dt = time.perf_counter() - t_start
    ok = drift < 0.05 and rt < 1e-8 and dt < 5.0
    return ok, (f"leading-term drift {100.0 * drift:.2f}% (< 5%), round-trip "
                f"scaled error {rt:.2e} (< 1e-8), runtime {dt:.2f}s (< 5s)")


# ----------------------------------------------------------------------
# 10. symmetry generators transport exact solutions


def _jet_theta0_1(th, x):
    dd, c0 = 1.0 + th.th1, th.th1 + th.thinf
    y = x / (dd * x - c0)
    yp = -c0 / (dd * x - c0) ** 2
    ypp = 2.0 * c0 * dd / (dd * x - c0) ** 3
    return y, yp, ypp


def _map_jet(gen, x, y, yp, ypp):
    """(x, y, y', y'') of the transformed solution at the image point."""
    if gen == "x1":
        return 1.0 - x, 1.0 - y, yp, -ypp
    if gen == "x2":
        return (1.0 / x, 1.0 / y, x * x * yp / (y * y),
                -x * x * (2.0 * x * yp / (y * y) + x * x * ypp / (y * y)
                          - 2.0 * x * x * yp * yp / (y ** 3)))
    if gen == "x3":
        return (x / (x - 1.0), (x - y) / (x - 1.0),
                -(y - 1.0) + yp * (x - 1.0), -ypp * (x - 1.0) ** 3)
    if gen == "n":
        return (x, x / y, 1.0 / y - x * yp / (y * y),
                -2.0 * yp / (y * y) - x * ypp / (y * y)
                + 2.0 * x * yp * yp / (y ** 3))
    raise ValueError(gen)


def symmetry_transport():
    rng = _rng(1010)
    th = ThetaParams(1.0, 0.4, -0.7, -0.7)
    pole = (th.th1 + th.thinf) / (1.0 + th.th1)
    worst = 0.0
    pts = _points(rng, 50, bad=(pole,), guard=0.15)
    for gen in ("x1", "x2", "x3", "n"):
        th2 = act_theta(gen, th)
        for x in pts:
            y, yp, ypp = _jet_theta0_1(th, x)
            xx, yy, yyp, yypp = _map_jet(gen, x, y, yp, ypp)
            worst = max(worst, abs(pvi_residual_expr(xx, yy, yyp, yypp, th2)))
    samples = [(x, _jet_theta0_1(th, x)[0]) for x in pts]
    ident = 0.0
    for gen in ("n", "x1"):
        twice = transport_solution(gen, transport_solution(gen, samples))
        ident = max(ident, max(max(abs(a - c), abs(b - d))
                               for (a, b), (c, d) in zip(samples, twice)))
    ok = worst < 1e-8 and ident < 1e-13
    return ok, (f"transported residual {worst:.2e} (tol 1e-8), "
                f"double-application identity {ident:.2e} (tol 1e-13)")


# ----------------------------------------------------------------------
# 11. oscillatory closed form vs the three-power sum


def trig_three_term_identity():
    from .asymptotics import three_term_value
    rng = _rng(1111)
    worst = 0.0
    for _ in range(10):
        def draw():
            u = rng.uniform(0.15, 0.85) * rng.choice((-1.0, 1.0))
            t0 = _nonint(rng)
            tx = _nonint(rng)
            th = ThetaParams(t0, tx, _nonint(rng), _nonint(rng))
            r = complex(rng.uniform(0.3, 1.5), rng.uniform(-0.5, 0.5))
            return make_seed(1j * u, th, r)
        seed = _retry(draw)
        for k in range(20):
            x = 10.0 ** (-3.0 + 2.0 * k / 19.0) * cmath.exp(1j * math.pi / 6.0)
            y1, yp1 = seed_value(seed, x)
            y2, yp2 = three_term_value(seed.sigma, seed.theta, seed.r, x)
            worst = max(worst, abs(y1 - y2), abs(yp1 - yp2) * abs(x))
    return worst < 1e-10, f"worst pointwise deviation {worst:.2e} (tol 1e-10)"


# ----------------------------------------------------------------------

CRITERIA = (
    ("taylor-form1-fidelity", taylor_form1_fidelity),
    ("taylor-special-vector", taylor_special_vector),
    ("exact-solution-residuals", exact_solution_residuals),
    ("monodromy-constructors", monodromy_constructors),
    ("connection-matrix-agreement", connection_matrix_agreement),
    ("loop-transport-scaling", loop_transport_scaling),
    ("y-from-residues", y_from_residues),
    ("gauge-recursion-closed-forms", gauge_recursion_closed_forms),
    ("seed-self-consistency", seed_self_consistency),
    ("symmetry-transport", symmetry_transport),
    ("trig-three-term-identity", trig_three_term_identity),
)


def run_all():
    """[(name, ok, detail)] for every acceptance check."""
    return [(name, *fn()) for name, fn in CRITERIA]
