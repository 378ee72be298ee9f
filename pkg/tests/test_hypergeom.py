"""Hypergeometric series, reductions, connection matrices, and oracles."""

import cmath
import math

import mpmath
import numpy as np
import pytest

from pvilab.hypergeom import (GaussParams, connection_matrix,
                              connection_oracle, gauss_f, gauss_f_deriv,
                              norlund_g1, norlund_g1_deriv, ode_transport,
                              poch, reduction_matrices, triangular_monodromy,
                              xi_from_phi)
from pvilab.numerics import inv2, mat2
from pvilab.pvi import ResonanceError, ThetaParams

TH = ThetaParams(0.23, 0.57, 0.31, 0.44)


@pytest.mark.parametrize("z", [0.3, -0.6, 0.5 + 0.4j, 0.95, -3.0, 0.5 + 0.6j])
def test_gauss_f_matches_mpmath(z):
    al, be, ga = 0.37, -0.82, 1.41
    ref = complex(mpmath.hyp2f1(al, be, ga, mpmath.mpc(z)))
    assert abs(gauss_f(al, be, ga, z) - ref) < 1e-12 * (1.0 + abs(ref))


def test_gauss_f_deriv_matches_mpmath():
    al, be, ga, z = 0.37, -0.82, 1.41, 0.3 + 0.2j
    h = 1e-6
    fd = (gauss_f(al, be, ga, z + h) - gauss_f(al, be, ga, z - h)) / (2.0 * h)
    assert abs(gauss_f_deriv(al, be, ga, z) - fd) < 1e-8


def test_gauss_f_nonpositive_gamma_raises():
    with pytest.raises(ResonanceError):
        gauss_f(0.3, 0.4, -2.0, 0.1)


def test_poch_negative_index():
    q = 0.7
    assert abs(poch(q, -2) - 1.0 / ((q - 1.0) * (q - 2.0))) < 1e-15
    assert poch(q, 0) == 1.0


def test_norlund_g1_satisfies_the_ode():
    u, v, w = 0.37, 0.83, 3
    z = -0.3
    h = 1e-5
    fp = norlund_g1_deriv(u, v, w, z)
    fpp = (norlund_g1_deriv(u, v, w, z + h)
           - norlund_g1_deriv(u, v, w, z - h)) / (2.0 * h)
    f = norlund_g1(u, v, w, z)
    res = z * (1.0 - z) * fpp + (w - (u + v + 1.0) * z) * fp - u * v * f
    assert abs(res) < 1e-3


def test_norlund_g1_guards():
    with pytest.raises(ValueError):
        norlund_g1(0.3, 0.4, 0, -0.2)
    with pytest.raises(ValueError):
        norlund_g1(0.3, 0.4, 2, -1.5)


def test_reduction_eigenvalue_invariants():
    a, b, c, r = 0.37, -0.61, 0.83, 1.1
    B0, B1 = reduction_matrices(1, a=a, b=b, c=c, r=r)
    # spectra {0, -c} and {0, c-a-b}: check via trace and determinant
    assert abs(np.trace(B0) + c) < 1e-12
    assert abs(np.linalg.det(B0)) < 1e-12
    assert abs(np.trace(B1) - (c - a - b)) < 1e-12
    assert abs(np.linalg.det(B1)) < 1e-12
    s = B0 + B1
    assert abs(s[0, 0] + a) < 1e-12 and abs(s[1, 1] + b) < 1e-12
    assert abs(s[0, 1]) < 1e-12 and abs(s[1, 0]) < 1e-12


@pytest.mark.parametrize("case,kw", [
    (1, dict(a=0.37, b=-0.61, c=0.83, r=1.1)),
    (2, dict(a=0.0, b=-0.61, c=0.83, r=1.1)),
    (3, dict(a=0.37, b=0.0, c=0.83, r=1.1)),
    (4, dict(a=0.83, b=-0.61, c=0.83, r=1.1)),
    (5, dict(a=0.37, b=0.83, c=0.83, r=1.1)),
    (6, dict(a=0.83, b=0.83, c=0.83, r=1.1, s=0.4)),
    (7, dict(a=0.0, b=0.0, c=0.83, r=1.1, s=0.4)),
    (8, dict(a=0.37, b=0.37, c=0.83, r=-0.37)),
])
def test_xi_map_closes_the_first_row(case, kw):
    """For an arbitrary jet (phi, phi'), the printed second component must
    satisfy the first row of dY/dz = [B0/z + B1/(z-1)] Y exactly."""
    z = 0.37 + 0.21j
    phi, dphi = 1.3 - 0.4j, 0.7 + 0.2j
    B0, B1 = reduction_matrices(case, **kw)
    xi = xi_from_phi(case, phi, dphi, z, **kw)
    A = B0 / z + B1 / (z - 1.0)
    assert abs(A[0, 0] * phi + A[0, 1] * xi - dphi) < 1e-13


def test_xi_from_phi_case8_requires_jordan_r():
    with pytest.raises(ValueError):
        xi_from_phi(8, 1.0, 0.0, 0.3, a=0.4, c=0.7, r=0.1)


def test_connection_matrix_vs_oracle_c01c():
    got = connection_matrix("C01c", TH)
    ref = connection_oracle("C01c", TH)
    assert np.max(np.abs(got - ref)) < 1e-8 * np.max(np.abs(ref))


def test_connection_matrix_resonance_raises():
    with pytest.raises(ResonanceError):
        connection_matrix("C01", ThetaParams(0.23, 1.0, 0.31, 0.44))


def test_ode_transport_reproduces_series():
    p = GaussParams(0.37, -0.61, 1.41)
    z0, z1 = 0.2, 0.5

    def frame(z):
        return np.array([[gauss_f(p.alpha, p.beta, p.gamma, z), 0.0],
                         [gauss_f_deriv(p.alpha, p.beta, p.gamma, z), 1.0]],
                        dtype=complex)

    got = ode_transport(p, z0, frame(z0), [z1], tol=1e-13)
    assert abs(got[0, 0] - frame(z1)[0, 0]) < 1e-11


def test_triangular_monodromy_vs_fuchsian_transport():
    """The quadrature-based triangular monodromy must agree with the generic
    loop-transport oracle on a hand-built upper-triangular system."""
    from pvilab import fuchsian

    B0, B1 = reduction_matrices(2, a=0.0, b=0.4, c=0.7, r=0.9)

    def cell(v):
        return ((0, complex(v)),) if v != 0 else ()

    entries = {k: tuple(tuple(cell(M[i][j]) for j in range(2)) for i in range(2))
               for k, M in (("0", B0), ("x", np.zeros((2, 2))), ("1", B1))}
    ls = fuchsian.LinearSystem(ThetaParams(0.0, 0.0, 0.0, 0.0), "tri", entries)
    m_ode = fuchsian.transport(ls, 0.5, fuchsian.Loop(0.0, 0.15), tol=1e-12)
    m_tri = triangular_monodromy(
        lambda z: B0[0, 0] / z + B1[0, 0] / (z - 1.0),
        lambda z: B0[0, 1] / z + B1[0, 1] / (z - 1.0),
        lambda z: B0[1, 1] / z + B1[1, 1] / (z - 1.0),
        0.0, 0.15, n_nodes=4096)
    assert np.max(np.abs(m_ode - m_tri)) < 1e-6
    assert m_tri[1, 0] == 0.0
