"""Embedded Dormand-Prince 5(4) integrator for complex-vector ODEs.

Shared by the two numeric oracles: loop transport of the Fuchsian system in
lambda, and continuation of PVI in x.  scipy's RK45 works on real arrays
only and its event machinery does not fit per-step chart switching, hence
this small hand-rolled pair.
"""

from __future__ import annotations

import numpy as np

__all__ = ["StepUnderflow", "dp45"]

# Dormand-Prince tableau
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)


class StepUnderflow(RuntimeError):
    pass


def dp45(f, t0, t1, y0, tol=1e-10, h0=None, min_step=1e-14, step_cb=None):
    """Integrate y' = f(t, y) from t0 to t1 (real parameter t).

    y is a complex ndarray.  Local error per step <= tol (mixed
    absolute/relative).  step_cb, if given, is called as step_cb(t, y) after
    every accepted step and may return a replacement y (chart switches).
    Returns y(t1).
    """
    t = float(t0)
    t1 = float(t1)
    y = np.asarray(y0, dtype=complex).copy()
    direction = 1.0 if t1 >= t else -1.0
    span = abs(t1 - t)
    if span == 0:
        return y
    h = h0 if h0 is not None else span / 50.0
    h = direction * min(abs(h), span)
    k = [None] * 7
    while (t1 - t) * direction > 1e-16:
        if abs(h) > abs(t1 - t):
            h = t1 - t
        k[0] = f(t, y)
        for i in range(1, 7):
            yi = y + h * sum(_A[i][j] * k[j] for j in range(i))
            k[i] = f(t + _C[i] * h, yi)
        y5 = y + h * sum(b * ki for b, ki in zip(_B5, k))
        y4 = y + h * sum(b * ki for b, ki in zip(_B4, k))
        scale = tol * (1.0 + np.abs(y5).max())
        err = np.abs(y5 - y4).max() / scale
        if err <= 1.0:
            t += h.real if isinstance(h, complex) else h
            y = y5
            if step_cb is not None:
                y2 = step_cb(t, y)
                if y2 is not None:
                    y = np.asarray(y2, dtype=complex)
            fac = 2.0 if err == 0 else min(2.0, 0.9 * err ** -0.2)
        else:
            fac = max(0.2, 0.9 * err ** -0.2)
        h *= fac
        if abs(h) < min_step:
            raise StepUnderflow(f"step size underflow at t = {t}")
    return y
