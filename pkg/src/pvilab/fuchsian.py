"""The 2x2 Fuchsian system in lambda attached to the Taylor classes.

Truncated residue matrices A0(x), Ax(x), A1(x) with entrywise power series
(off-diagonal entries may carry non-integer powers of x), numeric loop
transport of fundamental solutions (the monodromy oracle), recovery of y(x)
from the residues, and the formal diagonalizing recursions for the two
irregular model systems.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .integrate import dp45
from .numerics import PRINCIPAL, PoleError, cpow, inv2, mat2, SIGMA3
from .pvi import ResonanceError, ThetaParams, is_int

__all__ = [
    "LinearSystem",
    "Loop",
    "build_case_a",
    "build_case_b",
    "build_case_c",
    "a_of_lambda",
    "transport",
    "loop_monodromy",
    "y_from_A",
    "default_radius",
    "appendix2_recursion",
]

_KEYS = ("0", "x", "1")


def _ev(terms, x):
    """Evaluate a list of (power, coeff) terms at x (principal powers)."""
    return sum(c * cpow(x, p, PRINCIPAL) for p, c in terms)


@dataclass(frozen=True)
class LinearSystem:
    """Residues of dPsi/dlambda = [A0/lambda + Ax/(lambda-x) + A1/(lambda-1)] Psi.

    entries[key][i][j] is a tuple of (power, coeff) pairs; powers may be
    complex (the case-a off-diagonals carry x^{+-(th1-thinf+1)} prefactors)
    or negative (the case-c (1,2) entries have a 1/x pole).
    """

    theta: ThetaParams
    tag: str
    entries: dict
    params: dict = field(default_factory=dict)

    def residue(self, which: str, x) -> np.ndarray:
        e = self.entries[which]
        return np.array([[_ev(e[i][j], x) for j in range(2)] for i in range(2)],
                        dtype=complex)

    def sum_residues(self, x) -> np.ndarray:
        return sum(self.residue(k, x) for k in _KEYS)

    def conjugated(self, c: np.ndarray) -> "LinearSystem":
        """Constant gauge C A C^{-1} applied entrywise per power of x."""
        ci = inv2(c)
        new = {}
        for key in _KEYS:
            e = self.entries[key]
            powers = sorted({p for i in range(2) for j in range(2)
                             for p, _ in e[i][j]}, key=lambda z: (complex(z).real, complex(z).imag))
            out = [[[], []], [[], []]]
            for p in powers:
                m = np.array([[sum(cf for q, cf in e[i][j] if q == p)
                               for j in range(2)] for i in range(2)], dtype=complex)
                m = c @ m @ ci
                for i in range(2):
                    for j in range(2):
                        if m[i, j] != 0:
                            out[i][j].append((p, m[i, j]))
            new[key] = tuple(tuple(tuple(cell) for cell in row) for row in out)
        return LinearSystem(self.theta, self.tag + "+gauge", new, dict(self.params))

    def to_json(self):
        def term(p, c):
            p, c = complex(p), complex(c)
            return {"power": [p.real, p.imag], "coeff": [c.real, c.imag]}
        return {
            "tag": self.tag,
            "theta": [[t.real, t.imag] for t in self.theta.as_tuple()],
            "params": {k: [complex(v).real, complex(v).imag] for k, v in self.params.items()},
            "entries": {k: [[[term(p, c) for p, c in self.entries[k][i][j]]
                             for j in range(2)] for i in range(2)] for k in _KEYS},
        }


def _pack(a0, ax, a1):
    def t(cell):
        return tuple((p, complex(c)) for p, c in cell)
    return {k: tuple(tuple(t(m[i][j]) for j in range(2)) for i in range(2))
            for k, m in (("0", a0), ("x", ax), ("1", a1))}


def build_case_b(thx, thinf, s, r, truncation=2) -> LinearSystem:
    """System whose isomonodromic solution is the y(0)=1/(1-thinf) class.

    A0, Ax through O(x), A1 through O(x^2), all entries plain Taylor.
    """
    if r == 0:
        raise ValueError("r must be nonzero")
    thx, thinf, s, r = complex(thx), complex(thinf), complex(s), complex(r)
    sx = s + thx
    ax = [[[(0, s + thx / 2), (1, -2 * sx * s * thinf)],
           [(0, -r), (1, r * (2 * s + thx - 1) * thinf)]],
          [[(0, s * sx / r), (1, -s * sx * (2 * s + thx + 1) * thinf / r)],
           [(0, -(s + thx / 2)), (1, 2 * sx * s * thinf)]]]
    a0 = [[[(0, -(s + thx / 2)), (1, 2 * sx * s * thinf)],
           [(0, r), (1, -r * (2 * s + thx) * thinf)]],
          [[(0, -s * sx / r), (1, s * sx * (2 * s + thx) * thinf / r)],
           [(0, s + thx / 2), (1, -2 * sx * s * thinf)]]]
    a1 = [[[(0, -thinf / 2), (2, sx * s * thinf)],
           [(1, r * thinf), (2, -r * thinf * (thinf + 1) * (2 * s + thx - 1) / 2)]],
          [[(1, s * thinf * sx / r),
            (2, -s * thinf * (thinf - 1) * sx * (2 * s + thx + 1) * s / (2 * r))],
           [(0, thinf / 2), (2, -sx * s * thinf)]]]
    # rows above are stored [[11,12],[21,22]]
    theta = ThetaParams(thx, thx, thinf, thinf)
    return LinearSystem(theta, "case-b", _pack(a0, ax, a1),
                        {"s": s, "r": r, "thx": thx, "thinf": thinf})


def build_case_a(theta: ThetaParams, r, truncation=2) -> LinearSystem:
    """System for the y(0)=(th1-thinf+1)/(1-thinf) class.

    Off-diagonal entries carry x^{+-(th1-thinf+1)} prefactors.
    """
    t0, tx, t1, ti = theta.as_tuple()
    if is_int(t1 - ti):
        raise ResonanceError("th1 - thinf integer: representation breaks down")
    if is_int(ti - 1.0) and abs(ti - 1.0) < 1e-10:
        raise ResonanceError("thinf = 1 excluded")
    if r == 0:
        raise ValueError("r must be nonzero")
    r = complex(r)
    d = t1 - ti                       # th1 - thinf
    p = d + 1.0                       # off-diagonal prefactor exponent
    q = (d * d - (t0 - tx) ** 2) * (d * d - (t0 + tx) ** 2)
    ax = [[[(0, (d * d + tx * tx - t0 * t0) / (4.0 * d)),
            (1, t1 / 8.0 * q / (d * d * (d * d - 1.0)))],
           [(p - 1.0, -r),
            (p, r * t1 * ((d + 2.0) * d + t0 * t0 - tx * tx) / (2.0 * d * (-d - 1.0)))]],
          [[(1.0 - p, q / (16.0 * r * d * d)),
            (2.0 - p, -q / (16.0 * r * d * d)
             * t1 * ((-d) * (-d + 2.0) + t0 * t0 - tx * tx) / (2.0 * (-d) ** 3 * (-d + 1.0)))],
           [(0, -(d * d + tx * tx - t0 * t0) / (4.0 * d)),
            (1, -t1 / 8.0 * q / (d * d * (d * d - 1.0)))]]]
    a0 = [[[(0, (d * d + t0 * t0 - tx * tx) / (4.0 * d)),
            (1, -t1 / 8.0 * q / (d * d * (d * d - 1.0)))],
           [(p - 1.0, r),
            (p, -r * t1 * (d * d + t0 * t0 - tx * tx) / (2.0 * d * (-d - 1.0)))]],
          [[(1.0 - p, -q / (16.0 * r * d * d)),
            (2.0 - p, q / (16.0 * r * d * d)
             * t1 * (d * d + t0 * t0 - tx * tx) / (2.0 * (-d) ** 3 * (-d + 1.0)))],
           [(0, -(d * d + t0 * t0 - tx * tx) / (4.0 * d)),
            (1, t1 / 8.0 * q / (d * d * (d * d - 1.0)))]]]
    a1 = [[[(0, -t1 / 2.0),
            (2, -t1 * q / (16.0 * (d * d - 1.0) * d * d))],
           [(p, -r * t1 / (-d - 1.0)),
            (p + 1.0, -r * t1 / (-d - 1.0)
             * (t1 + 1.0) * ((-d) * (-d - 2.0) + t0 * t0 - tx * tx) / (2.0 * (-d) * (-d - 2.0)))]],
          [[(2.0 - p, t1 * q / (16.0 * r * (-d + 1.0) * d * d))],
           [(0, t1 / 2.0),
            (2, t1 * q / (16.0 * (d * d - 1.0) * d * d))]]]
    return LinearSystem(theta, "case-a", _pack(a0, ax, a1), {"r": r})


def build_case_c(th0, thx, r1, rho, truncation=2) -> LinearSystem:
    """System for the unipotent class (thinf=1, th1=0); y(0)=(1-r1/rho)^{-1}."""
    if rho == 0:
        raise ValueError("rho must be nonzero")
    t0, tx, r1, rho = complex(th0), complex(thx), complex(r1), complex(rho)
    pk = (1.0 - (t0 - tx) ** 2) * (1.0 - (t0 + tx) ** 2) / 16.0
    a0 = [[[(0, (tx * tx - t0 * t0 - 1.0) / 4.0), (1, r1 / rho * pk)],
           [(-1, -rho), (0, r1 * (t0 * t0 - tx * tx + 1.0) / 2.0),
            (1, -(r1 * r1 / rho) * pk)]],
          [[(1, pk / rho)],
           [(0, -(tx * tx - t0 * t0 - 1.0) / 4.0), (1, -r1 / rho * pk)]]]
    ax = [[[(0, (t0 * t0 - tx * tx - 1.0) / 4.0), (1, -r1 / rho * pk)],
           [(-1, rho), (0, r1 * (tx * tx - t0 * t0 + 1.0) / 2.0),
            (1, (r1 * r1 / rho) * pk)]],
          [[(1, -pk / rho)],
           [(0, -(t0 * t0 - tx * tx - 1.0) / 4.0), (1, r1 / rho * pk)]]]
    a1 = [[[(2, r1 / rho * pk / 2.0)],
           [(0, -r1), (1, r1 * (t0 * t0 - tx * tx - 1.0) / 2.0)]],
          [[(4, r1 / (rho * rho) * pk * pk / 4.0)],
           [(2, -r1 / rho * pk / 2.0)]]]
    theta = ThetaParams(t0, tx, 0.0, 1.0)
    return LinearSystem(theta, "case-c", _pack(a0, ax, a1), {"r1": r1, "rho": rho})


def a_of_lambda(sys: LinearSystem, lam, x) -> np.ndarray:
    lam, x = complex(lam), complex(x)
    for pole in (0.0, x, 1.0):
        if abs(lam - pole) < 1e-12:
            raise PoleError(f"lambda = {lam} at (or too near) the pole {pole}")
    return (sys.residue("0", x) / lam + sys.residue("x", x) / (lam - x)
            + sys.residue("1", x) / (lam - 1.0))


def default_radius(x, center) -> float:
    return min(abs(complex(x)) / 3.0, abs(1.0 - complex(x)) / 3.0, 1.0 / 3.0)


@dataclass(frozen=True)
class Loop:
    """Counterclockwise polygonal loop around one singularity."""

    center: complex
    radius: float
    basepoint: complex | None = None
    n_vertices: int = 64
    orientation: int = 1

    def vertices(self):
        c, r = complex(self.center), float(self.radius)
        pts = [c + r * cmath.exp(self.orientation * 2j * math.pi * k / self.n_vertices)
               for k in range(self.n_vertices + 1)]
        if self.basepoint is not None and abs(self.basepoint - pts[0]) > 1e-15:
            pts = [complex(self.basepoint)] + pts + [complex(self.basepoint)]
        return pts

    def to_json(self):
        b = None if self.basepoint is None else [self.basepoint.real, self.basepoint.imag]
        return {"center": [complex(self.center).real, complex(self.center).imag],
                "radius": self.radius, "basepoint": b,
                "n_vertices": self.n_vertices, "orientation": self.orientation}


def transport(sys: LinearSystem, x, loop_or_vertices, tol=1e-10) -> np.ndarray:
    """Monodromy of the fundamental solution normalized to I at the start.

    Integrates dPsi/dlambda = A(lambda) Psi edge by edge along the polygon;
    the result M satisfies Psi_continued = Psi * M for Psi(start) = I.
    """
    verts = (loop_or_vertices.vertices() if isinstance(loop_or_vertices, Loop)
             else [complex(v) for v in loop_or_vertices])
    a0 = sys.residue("0", x)
    axm = sys.residue("x", x)
    a1 = sys.residue("1", x)
    xc = complex(x)

    m = np.eye(2, dtype=complex)
    for z0, z1 in zip(verts[:-1], verts[1:]):
        dz = z1 - z0
        if dz == 0:
            continue

        def f(t, y, z0=z0, dz=dz):
            lam = z0 + t * dz
            a = a0 / lam + axm / (lam - xc) + a1 / (lam - 1.0)
            return dz * (a @ y.reshape(2, 2)).ravel()

        m = dp45(f, 0.0, 1.0, m.ravel(), tol=tol).reshape(2, 2)
    return m


def loop_monodromy(sys: LinearSystem, x, center, tol=1e-10, radius=None) -> np.ndarray:
    """Transport around the default counterclockwise loop at one singularity."""
    r = default_radius(x, center) if radius is None else radius
    return transport(sys, x, Loop(complex(center), r), tol=tol)


def y_from_A(sys: LinearSystem, x) -> complex:
    """y = x (A0)_{12} / (x [(A0)_{12} + (A1)_{12}] - (A1)_{12})."""
    x = complex(x)
    n0 = sys.residue("0", x)[0, 1]
    n1 = sys.residue("1", x)[0, 1]
    den = x * (n0 + n1) - n1
    if abs(den) < 1e-14:
        raise ZeroDivisionError("vanishing denominator in the y reconstruction")
    return x * n0 / den


# ----------------------------------------------------------------------
# formal diagonalizing recursions for the irregular model systems


def _dn(d_list, n):
    # coefficient matrices beyond the stored list repeat the last one
    return d_list[min(n, len(d_list)) - 1]


def appendix2_recursion(kind, leading, coeff_list, n_max, x=None):
    """Gauge series removing the z^{-n} (n >= 2) tails of the model systems.

    kind "IRR1": dY/dz = [Omega + D1/z + D2/z^2 + ...] Y with Omega = leading
    diagonal; returns ([G1..G_{n_max}], Omega1) where Y ~ (I + sum G_n z^{-n})
    exp(Omega z) z^{Omega1} and Omega1 = diagonal part of D1.

    kind "IRR2": dY/dz = [x^2 Lambda z + x Lambda + E1/z + E2/z^2 + ...] Y;
    returns (K1, K2, Lambda1): K1 diagonal with (K1)_ii = -(E2)_ii,
    Lambda1 = diagonal part of E1, and K2 assembled from the z^{-1} and
    z^{-2} balances.

    coeff_list entries beyond the last stored matrix repeat the last one
    (the systems at hand have constant tails).
    """
    lead = np.asarray(leading, dtype=complex)
    w = np.diag(lead)
    if abs(w[0] - w[1]) < 1e-12 * (1.0 + abs(w).max()):
        raise ResonanceError("leading diagonal must have distinct eigenvalues")
    ds = [np.asarray(m, dtype=complex) for m in coeff_list]

    if kind == "IRR1":
        om1 = np.diag(np.diag(ds[0]))
        g = [np.zeros((2, 2), dtype=complex) for _ in range(n_max + 2)]  # g[n] = G_n, g[0]=I
        g[0] = np.eye(2, dtype=complex)
        for i in range(2):
            for j in range(2):
                if i != j:
                    g[1][i, j] = -ds[0][i, j] / (w[i] - w[j])
        for n in range(2, n_max + 2):
            # power 1/z^n fixes diag of G_{n-1} and offdiag of G_n
            acc = sum(_dn(ds, n - k) @ g[k] for k in range(0, n - 1))  # D_n G_0 + ... + D_2 G_{n-2}
            for i in range(2):
                j = 1 - i
                g[n - 1][i, i] = (-acc[i, i] - ds[0][i, j] * g[n - 1][j, i]) / (n - 1.0)
            if n <= n_max + 1:
                for i in range(2):
                    j = 1 - i
                    g[n][i, j] = ((om1[j, j] - om1[i, i] - (n - 1.0)) * g[n - 1][i, j]
                                  - ds[0][i, j] * g[n - 1][j, j] - acc[i, j]) / (w[i] - w[j])
        return [g[n] for n in range(1, n_max + 1)], om1

    if kind == "IRR2":
        if x is None:
            raise ValueError("IRR2 recursion needs the deformation parameter x")
        x = complex(x)
        es = ds
        lam1 = np.diag(np.diag(es[0]))
        k1 = np.diag([-es[1][0, 0], -es[1][1, 1]]).astype(complex)
        k2 = np.zeros((2, 2), dtype=complex)
        for i in range(2):
            j = 1 - i
            k2[i, j] = -es[0][i, j] / (x * x * (w[i] - w[j]))
        e3 = _dn(es, 3)
        for i in range(2):
            j = 1 - i
            k2[i, i] = (es[1][i, i] ** 2 - e3[i, i] - es[0][i, j] * k2[j, i]) / 2.0
        return k1, k2, lam1

    raise ValueError(f"unknown recursion kind {kind}")
