"""Scalar special functions, branch-controlled powers, 2x2 helpers."""

import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pvilab.numerics import (ARG_0_2PI, PRINCIPAL, BranchSpec, PoleError,
                             SIGMA3, SingularMatrixError, clog, conjugate_by,
                             cpow, det2, digamma, exp_diag_sigma3, gamma,
                             inv2, mat2, tr2)

finite = st.floats(min_value=-30.0, max_value=30.0,
                   allow_nan=False, allow_infinity=False)


@given(finite, finite)
@settings(max_examples=60, deadline=None)
def test_gamma_matches_mpmath(re, im):
    z = complex(re, im)
    if abs(z.imag) < 1e-3 and z.real < 0.5 and abs(z.real - round(z.real)) < 1e-3:
        return  # too close to the pole line for a fair comparison
    ref = complex(mpmath.gamma(mpmath.mpc(z)))
    got = gamma(z)
    assert abs(got - ref) <= 1e-10 * (1.0 + abs(ref))


@given(finite, finite)
@settings(max_examples=60, deadline=None)
def test_digamma_matches_mpmath(re, im):
    z = complex(re, im)
    if abs(z.imag) < 1e-3 and z.real < 0.5 and abs(z.real - round(z.real)) < 1e-3:
        return
    ref = complex(mpmath.digamma(mpmath.mpc(z)))
    got = digamma(z)
    assert abs(got - ref) <= 1e-9 * (1.0 + abs(ref))


def test_gamma_pole_raises():
    with pytest.raises(PoleError):
        gamma(0.0)
    with pytest.raises(PoleError):
        gamma(-3.0 + 1e-12j)
    with pytest.raises(PoleError):
        digamma(-1.0)


def test_gamma_functional_equation():
    for z in (0.3 + 0.7j, -2.4 + 0.1j, 5.5, 1e-3 + 1e-3j):
        assert abs(gamma(z + 1.0) - z * gamma(z)) <= 1e-12 * abs(gamma(z + 1.0))


def test_clog_branches():
    z = -1.0 - 1e-9j  # just below the negative real axis
    assert clog(z, PRINCIPAL).imag == pytest.approx(-math.pi, abs=1e-8)
    assert clog(z, ARG_0_2PI).imag == pytest.approx(math.pi, abs=1e-8)


def test_cpow_branch_consistency():
    # (z^w) on the 0..2pi branch differs by e^{2 pi i w} below the cut
    z = 0.5 - 1e-12j
    w = 0.3 + 0.1j
    ratio = cpow(z, w, ARG_0_2PI) / cpow(z, w, PRINCIPAL)
    assert abs(ratio - cmath.exp(2j * math.pi * w)) < 1e-12


def test_cpow_at_zero():
    assert cpow(0.0, 2.0) == 0.0
    assert cpow(0.0, 0.0) == 1.0
    with pytest.raises(ValueError):
        cpow(0.0, -1.0)


def test_branchspec_interval_is_half_open():
    b = BranchSpec(0.0)
    assert b.arg(1.0 + 0j) == pytest.approx(2.0 * math.pi)
    assert b.arg(-1.0 + 0j) == pytest.approx(math.pi)


def test_inv2_and_det2():
    m = mat2(1.0 + 2j, 0.5, -0.3j, 2.0)
    assert np.max(np.abs(m @ inv2(m) - np.eye(2))) < 1e-14
    assert det2(m) == pytest.approx(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    with pytest.raises(SingularMatrixError):
        inv2(mat2(1.0, 2.0, 2.0, 4.0))


def test_conjugation_preserves_trace_and_det():
    c = mat2(1.0, 0.7j, 0.2, 1.5)
    m = mat2(0.3, 1.0, -2.0, 0.9j)
    cm = conjugate_by(c, m)
    assert abs(tr2(cm) - tr2(m)) < 1e-13
    assert abs(det2(cm) - det2(m)) < 1e-13


def test_exp_diag_sigma3():
    th = 0.31 + 0.07j
    m = exp_diag_sigma3(th)
    assert abs(m[0, 0] - cmath.exp(1j * math.pi * th)) < 1e-15
    assert abs(m[0, 0] * m[1, 1] - 1.0) < 1e-15
    assert np.all(m[np.eye(2) == 0] == 0)
    assert np.max(np.abs(SIGMA3 @ SIGMA3 - np.eye(2))) == 0
