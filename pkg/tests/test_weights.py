import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hankelforms.weights import (Custom, Power, Standard, WDerived, classify, constant,
                                 growth_exponent, lower_doubling_report, moment, omega_plus,
                                 parse_weight, tail, upper_doubling_report, weight_W)


def test_tail_examples():
    assert tail(constant(), 0.5) == pytest.approx(0.5, rel=1e-14)
    w = Standard(1.0)
    for rho in (0.0, 0.3, 0.9, 0.999):
        assert w.tail(rho) == pytest.approx((2 / 3) * (1 - rho) ** 2 * (2 + rho), rel=1e-12)
    assert w.tail(0.0) == pytest.approx(4 / 3, rel=1e-14)
    W = weight_W(2.0, constant())
    for rho in (0.0, 0.5, 0.99):
        assert W.tail(rho) == pytest.approx((1 - rho) ** 3, rel=1e-14)


def test_tail_rejects_out_of_range():
    with pytest.raises(ValueError):
        constant().tail(1.0)
    with pytest.raises(ValueError):
        constant().tail(-0.1)


@pytest.mark.parametrize("w", [Standard(0.5), Standard(2.0), Power(1.5), weight_W(1.5, Standard(1.0))])
def test_closed_form_tails_match_quadrature(w):
    for rho in (0.0, 0.4, 0.95):
        assert w.tail(rho) == pytest.approx(w.tail_by_quadrature(rho), rel=1e-9)


def test_moment_examples():
    assert moment(constant(), 1.0) == pytest.approx(0.5, rel=1e-15)
    n = np.arange(10)
    assert np.allclose(constant().moment(2 * n + 1.0), 1.0 / (2 * n + 2), rtol=1e-15, atol=0)
    assert Standard(1.0).moment(1.0) == pytest.approx(0.5, rel=1e-15)


@pytest.mark.parametrize("w", [Standard(0.5), Power(2.0), weight_W(3.0, constant())])
def test_moments_match_quadrature(w):
    x = np.array([0.0, 1.0, 7.0, 41.0])
    ref = [Custom(w.profile).moment(v) for v in x]
    assert np.allclose(w.moment(x), ref, rtol=1e-10, atol=0)


def test_weight_W_examples():
    c = constant()
    assert weight_W(1.0, c) is c
    W = weight_W(2.0, c)
    r = np.linspace(0, 0.99, 7)
    assert np.allclose(W.profile(r), 3 * (1 - r) ** 2, rtol=1e-14)
    with pytest.raises(ValueError):
        WDerived(0.5, c)


def test_omega_plus_examples():
    p = omega_plus(constant())
    assert p.moment(1.0) == pytest.approx(0.25, rel=1e-15)
    assert p.moment(3.0) == pytest.approx(1 / 16, rel=1e-15)
    w = Standard(1.0)
    n = np.arange(20)
    assert np.allclose(omega_plus(w).moment(2 * n + 1.0) * (2 * n + 2), w.moment(2 * n + 1.0), rtol=1e-15)


def test_omega_plus_of_constant_closed_form():
    # w_+(r) = -log r, so the tail is 1 - rho + rho log rho
    p = omega_plus(constant())
    for rho in (0.2, 0.7, 0.99):
        assert p.profile(rho)[0] == pytest.approx(-np.log(rho), rel=1e-9)
        assert p.tail(rho) == pytest.approx(1 - rho + rho * np.log(rho), rel=1e-9)


def test_upper_doubling():
    rep = upper_doubling_report(constant())
    assert rep.is_upper and rep.upper_constant == pytest.approx(2.0, rel=1e-10)
    rep = upper_doubling_report(Standard(1.0))
    # the sup of the ratio approaches 4 only as rho -> 1
    assert rep.is_upper and rep.upper_constant == pytest.approx(4.0, rel=1e-3)
    bad = Custom(lambda r: np.exp(-1.0 / (1.0 - np.asarray(r))), "exp")
    assert not upper_doubling_report(bad).is_upper


def test_lower_doubling():
    rep = lower_doubling_report(constant(), K_candidates=(2.0,))
    assert rep.is_lower and rep.lower_C == pytest.approx(2.0, rel=1e-10)
    rep = lower_doubling_report(Standard(1.0), K_candidates=(2.0,))
    assert rep.is_lower and rep.lower_C >= 2.0


def test_growth_exponent_examples():
    assert growth_exponent(constant()) == 1.0
    assert growth_exponent(Standard(1.0)) == 2.0
    assert growth_exponent(weight_W(2.0, constant())) == 3.0
    assert growth_exponent(Standard(0.5)) == 1.5
    assert growth_exponent(Standard(0.6)) == 1.75  # rounded up the ladder
    rep = classify(Standard(1.0))
    assert rep.is_upper and rep.is_lower


def test_parse_weight_round_trip():
    for w in (constant(), Standard(1.5), Power(2.0), weight_W(2.0, Standard(1.0)),
              omega_plus(weight_W(1.5, constant()))):
        back = parse_weight(w.descriptor())
        assert back.descriptor() == w.descriptor()
        assert back.tail(0.3) == pytest.approx(w.tail(0.3), rel=1e-12)
    assert parse_weight("standard:1").descriptor() == Standard(1.0).descriptor()
    assert parse_weight("w:2:const").tail(0.5) == pytest.approx(0.125)
    with pytest.raises(ValueError):
        parse_weight("nonsense:3")


def test_custom_from_samples(tmp_path):
    path = tmp_path / "w.csv"
    r = np.linspace(0, 1, 2001)
    np.savetxt(path, np.column_stack([r, 2 * (1 - r)]), delimiter=",")
    w = Custom.from_samples(str(path))
    assert w.tail(0.5) == pytest.approx(0.25, rel=1e-6)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 4.0), st.floats(0.0, 0.99))
def test_standard_tail_decreasing_and_positive(alpha, rho):
    w = Standard(alpha)
    t0, t1 = w.tail(rho), w.tail(min(rho + 0.005, 0.999))
    assert t0 > 0 and t1 <= t0
