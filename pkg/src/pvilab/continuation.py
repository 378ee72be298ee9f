"""Numeric continuation of PVI solutions along complex-x paths.

Integrates the first-order system (y, y') with the embedded 5(4) pair,
switching to the reciprocal charts u = 1/y, 1/(y-1), 1/(y-x) near the
singular set of the right-hand side, and provides seed-consistency
diagnostics (series and critical-behavior seeds vs the integrated
trajectory).
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import CriticalSeed, seed_value, _power_terms
from .integrate import dp45
from .numerics import PRINCIPAL, cpow, clog
from .pvi import ThetaParams, pvi_rhs, pvi_residual_expr

__all__ = [
    "ChartThrashError",
    "PathPlan",
    "Trajectory",
    "CHARTS",
    "to_chart",
    "from_chart",
    "integrate",
    "seed_and_verify",
]

CHARTS = ("y", "inv_y", "inv_y1", "inv_yx")

SWITCH_THRESHOLD = 1e-3
HYSTERESIS = 3.0
MAX_SWITCHES = 10      # per segment; more counts as thrash
X_CLEARANCE = 1e-6     # paths must stay this far from x = 0, 1


class ChartThrashError(RuntimeError):
    """Ten or more chart switches within one path segment."""


def _chart_center(chart: str, x: complex) -> complex:
    return {"inv_y": 0.0, "inv_y1": 1.0, "inv_yx": x}[chart]


def to_chart(chart: str, x, y, yp):
    """(y, y') -> chart state (w, w'); exact closed-form change of variables."""
    if chart == "y":
        return complex(y), complex(yp)
    c = _chart_center(chart, complex(x))
    dc = 1.0 if chart == "inv_yx" else 0.0   # dc/dx
    w = 1.0 / (y - c)
    return w, -(yp - dc) * w * w


def from_chart(chart: str, x, w, wp):
    if chart == "y":
        return complex(w), complex(wp)
    c = _chart_center(chart, complex(x))
    dc = 1.0 if chart == "inv_yx" else 0.0
    y = c + 1.0 / w
    return y, dc - wp / (w * w)


def _seg_point_dist(a: complex, b: complex, p: complex) -> float:
    """Distance from point p to segment [a, b]."""
    d = b - a
    if d == 0:
        return abs(p - a)
    t = ((p - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(a + t * d - p)


@dataclass(frozen=True)
class PathPlan:
    """Polyline in x with per-segment tolerance and arg bookkeeping.

    Vertices (and the segments between them) must keep clearance from the
    fixed critical points x = 0, 1; arg(x) is accumulated continuously
    along the polyline for branch-sensitive seeds.
    """

    vertices: tuple
    tol: float = 1e-10
    clearance: float = X_CLEARANCE

    def __post_init__(self):
        vs = tuple(complex(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 2:
            raise ValueError("a path needs at least two vertices")
        for v in vs:
            if abs(v) < self.clearance or abs(v - 1.0) < self.clearance:
                raise ValueError(f"vertex {v} within clearance of a fixed critical point")
        for a, b in zip(vs[:-1], vs[1:]):
            for p in (0.0, 1.0):
                if _seg_point_dist(a, b, p) < self.clearance:
                    raise ValueError(f"segment {a} -> {b} passes within clearance of x = {p}")

    def segments(self):
        return list(zip(self.vertices[:-1], self.vertices[1:]))

    def cumulative_args(self):
        """arg(x) at each vertex, continued continuously along the path."""
        args = [cmath.phase(self.vertices[0])]
        for a, b in self.segments():
            args.append(args[-1] + cmath.phase(b / a))
        return args


@dataclass
class Trajectory:
    theta: ThetaParams
    tol: float
    samples: list = field(default_factory=list)   # (x, y, yp, chart)
    events: list = field(default_factory=list)

    def record(self, x, y, yp, chart):
        self.samples.append((complex(x), complex(y), complex(yp), chart))

    def final(self):
        x, y, yp, _ = self.samples[-1]
        return x, y, yp

    def residual_audit(self, guard=1e-5):
        """Worst scaled PVI residual over the recorded samples.

        Cross-checks the partial-fraction right-hand side against the
        denominator-cleared residual polynomial; samples closer than
        `guard` to the singular set are skipped (their chart handles them).
        """
        worst = 0.0
        for x, y, yp, _ in self.samples:
            if min(abs(y), abs(y - 1.0), abs(y - x)) < guard or abs(y) > 1.0 / guard:
                continue
            ypp = pvi_rhs(x, y, yp, self.theta)
            res = pvi_residual_expr(x, y, yp, ypp, self.theta)
            scale = ((1.0 + abs(x)) ** 4 * (1.0 + abs(y)) ** 6 * (1.0 + abs(yp)) ** 2)
            worst = max(worst, abs(res) / scale)
        return worst

    def to_csv(self, target=None) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x_re", "x_im", "y_re", "y_im", "yp_re", "yp_im", "chart"])
        for x, y, yp, chart in self.samples:
            w.writerow([repr(x.real), repr(x.imag), repr(y.real), repr(y.imag),
                        repr(yp.real), repr(yp.imag), chart])
        text = out.getvalue()
        if target is not None:
            if hasattr(target, "write"):
                target.write(text)
            else:
                with open(target, "w") as fh:
                    fh.write(text)
        return text


def _distances(x, y):
    return {"inv_y": abs(y), "inv_y1": abs(y - 1.0), "inv_yx": abs(y - x)}


def integrate(ic, theta: ThetaParams, path, tol=1e-10,
              switch_threshold=SWITCH_THRESHOLD, hysteresis=HYSTERESIS,
              max_switches=MAX_SWITCHES) -> Trajectory:
    """Continue (y, y') from ic = (x0, y0, y0') along the path.

    Near the singular set of the right-hand side the integration proceeds
    in the reciprocal chart of the closest point among {0, 1, x} (the
    u = 1/y chart also covers movable poles).  Switch-backs use a 3x
    hysteresis band; crossing max_switches switches within one segment
    raises ChartThrashError.
    """
    if not isinstance(path, PathPlan):
        path = PathPlan(tuple(path), tol)
    x0, y0, yp0 = (complex(v) for v in ic)
    if abs(x0 - path.vertices[0]) > 1e-12:
        raise ValueError("initial x must coincide with the first path vertex")

    traj = Trajectory(theta, tol)
    state = {"chart": "y"}
    y, yp = y0, yp0
    traj.record(x0, y0, yp0, "y")

    for a, b in path.segments():
        dx = b - a
        state["switches"] = 0

        def f(t, s, a=a, dx=dx):
            x = a + t * dx
            w, wp = s
            chart = state["chart"]
            yv, ypv = from_chart(chart, x, w, wp)
            ypp = pvi_rhs(x, yv, ypv, theta)
            if chart == "y":
                wpp = ypp
            else:
                wpp = 2.0 * wp * wp / w - w * w * ypp
            return dx * np.array([wp, wpp], dtype=complex)

        def cb(t, s, a=a, dx=dx):
            x = a + t * dx
            chart = state["chart"]
            yv, ypv = from_chart(chart, x, s[0], s[1])
            traj.record(x, yv, ypv, chart)
            d = _distances(x, yv)
            new = chart
            if chart == "y":
                near = min(d, key=d.get)
                if d[near] < switch_threshold:
                    new = near
                elif abs(yv) > 1.0 / switch_threshold:
                    new = "inv_y"          # movable pole: same reciprocal chart
            else:
                inside = d[chart] if chart != "inv_y" else min(d["inv_y"], 1.0 / max(abs(yv), 1e-300))
                if inside > hysteresis * switch_threshold:
                    near = min(d, key=d.get)
                    new = near if d[near] < switch_threshold else "y"
            if new != chart:
                state["switches"] += 1
                if state["switches"] >= max_switches:
                    raise ChartThrashError(
                        f"{state['switches']} chart switches in segment to {b}")
                traj.events.append({"kind": "chart-switch", "x": x,
                                    "from": chart, "to": new, "y": yv})
                state["chart"] = new
                w2, wp2 = to_chart(new, x, yv, ypv)
                return np.array([w2, wp2], dtype=complex)
            return None

        w0, wp0 = to_chart(state["chart"], a, y, yp)
        s = dp45(f, 0.0, 1.0, np.array([w0, wp0], dtype=complex), tol=tol, step_cb=cb)
        y, yp = from_chart(state["chart"], b, s[0], s[1])

    if traj.samples[-1][0] != path.vertices[-1]:
        traj.record(path.vertices[-1], y, yp, state["chart"])
    return traj


def _leading_reference(seed: CriticalSeed):
    """(coefficient, exponent) of the dominant printed term, for drift ratios."""
    terms = _power_terms(seed)
    # dominant = smallest Re exponent
    return min(terms, key=lambda t: complex(t[1]).real)


def seed_and_verify(seed, theta: ThetaParams, x_near, x_far, tol=1e-10,
                    n_check=24) -> dict:
    """Start from the seed at x_near, integrate to x_far, report drift.

    seed may be a CriticalSeed or a Taylor-series object with eval /
    eval_deriv.  Diagnostics: ratio of y to the seed's dominant printed
    term along the trajectory (power-type kinds), a least-squares fit of
    y/x against a quadratic in ln x (log-generic), or max |Delta y|
    against the series (series seeds).
    """
    x_near, x_far = complex(x_near), complex(x_far)
    is_seed = isinstance(seed, CriticalSeed)
    if is_seed:
        y0, yp0 = seed_value(seed, x_near)
    else:
        y0, yp0 = seed.eval(x_near), seed.eval_deriv(x_near)
    traj = integrate((x_near, y0, yp0), theta, PathPlan((x_near, x_far), tol), tol=tol)

    diag = {"trajectory": traj, "final": traj.final()}
    xs = [s[0] for s in traj.samples]
    ys = [s[1] for s in traj.samples]
    if is_seed and seed.kind in ("power-generic", "trig", "one-param-sum", "one-param-diff"):
        c, e = _leading_reference(seed)
        ratios = [y / (c * cpow(x, e, PRINCIPAL)) for x, y in zip(xs, ys)]
        diag["ratios"] = ratios
        diag["ratio_drift"] = max(abs(r - 1.0) for r in ratios)
    elif is_seed and seed.kind == "log-generic":
        L = np.array([clog(x, PRINCIPAL) for x in xs])
        V = np.stack([L * L, L, np.ones_like(L)], axis=1)
        coef, *_ = np.linalg.lstsq(V, np.array(ys) / np.array(xs), rcond=None)
        diag["log_fit"] = list(coef)
        diag["log_leading"] = coef[0]
    elif not is_seed:
        dy = [abs(y - seed.eval(x)) for x, y in zip(xs, ys)]
        diag["max_dy"] = max(dy)
    return diag
