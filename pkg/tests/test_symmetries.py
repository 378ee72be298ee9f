"""Generator actions on theta, sigma and (x, y)."""

import pytest

from pvilab.pvi import ThetaParams
from pvilab.symmetries import (GENERATORS, XY_GENERATORS, act_theta,
                               act_theta_word, act_xy, sigma_image,
                               sigma_image_word, transport_solution)

TH = ThetaParams(0.23, 0.57, 0.31, 0.44)


def _close(a: ThetaParams, b: ThetaParams, tol=1e-13):
    return all(abs(x - y) < tol for x, y in zip(a.as_tuple(), b.as_tuple()))


@pytest.mark.parametrize("gen", ["x1", "x3", "w1", "w3", "w4", "t", "q"])
def test_involutions_on_theta(gen):
    assert _close(act_theta_word([gen, gen], TH), TH)


def test_w2_is_an_involution():
    assert _close(act_theta_word(["w2", "w2"], TH), TH)


def test_x2_and_n_are_involutions():
    assert _close(act_theta_word(["x2", "x2"], TH), TH)
    assert _close(act_theta_word(["n", "n"], TH), TH)


def test_shifts_commute_and_translate():
    a = act_theta_word(["l1", "l3"], TH)
    b = act_theta_word(["l3", "l1"], TH)
    assert _close(a, b)
    assert abs(a.th0 - (TH.th0 + 1.0)) < 1e-15
    assert abs(a.thx - (TH.thx + 1.0)) < 1e-15


def test_unknown_generator_raises():
    with pytest.raises(ValueError):
        act_theta("zz", TH)
    with pytest.raises(ValueError):
        act_xy("w1", 0.3, 0.5)  # no printed (x,y)-action
    with pytest.raises(ValueError):
        sigma_image("n", 0.3, TH)


@pytest.mark.parametrize("gen", ["x1", "x2", "x3", "n", "q"])
def test_xy_actions_are_involutions(gen):
    assert gen in XY_GENERATORS
    x, y = 0.37, 0.61
    x2, y2 = act_xy(gen, *act_xy(gen, x, y))
    assert abs(x2 - x) < 1e-13 and abs(y2 - y) < 1e-13


def test_xy_pole_guards():
    with pytest.raises(ZeroDivisionError):
        act_xy("n", 0.3, 0.0)
    with pytest.raises(ZeroDivisionError):
        act_xy("x3", 1.0, 0.5)


def test_sigma_image_shifts():
    assert sigma_image("l1", 0.3, TH) == pytest.approx(1.3)
    assert sigma_image("l2", 0.3, TH) == pytest.approx(-0.7)


def test_sigma_image_word_tracks_theta():
    # x1 then x1 must restore sigma when the exponent data is consistent:
    # sigma -> th0 - thinf -> (image theta) th0' - thinf' = th1 - thinf
    th2 = act_theta("x1", TH)
    s1 = sigma_image("x1", 0.3, TH)
    s2 = sigma_image_word(["x1", "x1"], 0.3, TH)
    assert s1 == pytest.approx(TH.th0 - TH.thinf)
    assert s2 == pytest.approx(th2.th0 - th2.thinf)


def test_transport_solution_maps_grids():
    samples = [(0.2, 0.5), (0.3, 0.6)]
    out = transport_solution("x1", samples)
    assert out == [(0.8, 0.5), (0.7, 0.4)]


def test_generator_list_is_complete():
    for g in GENERATORS:
        act_theta(g, TH)  # every listed generator has a theta action
