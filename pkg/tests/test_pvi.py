"""Parameter maps, right-hand side vs residual, and the exact solutions."""

import numpy as np
import pytest

from pvilab.pvi import (AbgdParams, ResonanceError, SingularConfigError,
                        ThetaParams, abgd_to_theta, pvi_residual_expr,
                        pvi_rhs, rational_solution_theta0_1,
                        rational_solution_theta0_minus2, reducible_solution,
                        theta_to_abgd)

TH = ThetaParams(0.23, 0.57, 0.31, 0.44)


def test_theta_abgd_round_trip():
    p = theta_to_abgd(TH)
    back = abgd_to_theta(p, signs=(1, 1, 1, -1))  # thinf < 1 here
    for got, want in zip(back.as_tuple(), TH.as_tuple()):
        assert abs(got - want) < 1e-14


def test_thinf_sign_ambiguity():
    # thinf and 2 - thinf give the same alpha
    a1 = theta_to_abgd(TH).alpha
    a2 = theta_to_abgd(ThetaParams(TH.th0, TH.thx, TH.th1, 2.0 - TH.thinf)).alpha
    assert abs(a1 - a2) < 1e-15


def test_rhs_consistent_with_residual():
    # the cleared-denominator residual must vanish exactly when ypp = rhs
    for x, y, yp in ((0.3, 0.7 + 0.2j, 1.1), (0.5 + 0.1j, -0.4, 0.3 - 0.2j)):
        ypp = pvi_rhs(x, y, yp, TH)
        assert abs(pvi_residual_expr(x, y, yp, ypp, TH)) < 1e-12


def test_rhs_guards():
    with pytest.raises(SingularConfigError):
        pvi_rhs(0.0, 0.5, 0.1, TH)
    with pytest.raises(SingularConfigError):
        pvi_rhs(0.3, 0.3, 0.1, TH)  # y = x


def _second_derivative(f, x, h=1e-5):
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)


def test_rational_solution_theta0_1():
    th = ThetaParams(1.0, 0.4, -0.7, -0.7)
    f = lambda x: rational_solution_theta0_1(th, x)
    for x in (0.3, 0.7, 2.0, -1.1):
        y = f(x)
        yp = (f(x + 1e-6) - f(x - 1e-6)) / 2e-6
        ypp = _second_derivative(f, x)
        assert abs(pvi_residual_expr(x, y, yp, ypp, th)) < 1e-5


def test_rational_solution_theta0_minus2():
    th = ThetaParams(-2.0, 1.5, 0.2, 0.3)
    f = lambda x: rational_solution_theta0_minus2(th, x)
    for x in (0.3, 0.8, -0.5):
        y = f(x)
        yp = (f(x + 1e-6) - f(x - 1e-6)) / 2e-6
        ypp = _second_derivative(f, x)
        assert abs(pvi_residual_expr(x, y, yp, ypp, th)) < 1e-5


def test_rational_solutions_reject_wrong_theta():
    with pytest.raises(ResonanceError):
        rational_solution_theta0_1(TH, 0.5)
    with pytest.raises(ResonanceError):
        rational_solution_theta0_minus2(ThetaParams(-2.0, 0.1, 0.2, 0.3), 0.5)


def test_reducible_solution_satisfies_pvi():
    # vanishing theta sum, generic otherwise
    th = ThetaParams(0.21, 0.33, 0.17, -0.71)
    a = 0.4 + 0.2j
    f = lambda x: reducible_solution(th, a, x)
    for x in (0.2, 0.45):
        y = f(x)
        yp = (f(x + 1e-6) - f(x - 1e-6)) / 2e-6
        ypp = _second_derivative(f, x)
        assert abs(pvi_residual_expr(x, y, yp, ypp, th)) < 1e-4


def test_reducible_solution_requires_zero_sum():
    with pytest.raises(ResonanceError):
        reducible_solution(TH, 0.1, 0.3)
