import numpy as np
import pytest
from scipy import optimize

from hankelforms.analytic import TaylorSeries, dilate
from hankelforms.norms import (band, bergman_norm, bfrac_condition, bloch_norm, bloch_sup,
                               bmoa_infty_norm, coefficient_norm2, d_omega_bmoa_norm,
                               frac_bloch_sup, garsia_bmo, inner_product, kernel_norm_comparison,
                               pairing_omega_omega)
from hankelforms.weights import Power, Standard, constant, weight_W


def test_bergman_examples():
    assert bergman_norm([1], constant(), 2) == pytest.approx(1.0, rel=1e-12)
    for n in (1, 5, 20):
        assert bergman_norm(TaylorSeries.monomial(n), constant(), 2) == pytest.approx((n + 1) ** -0.5, rel=1e-10)
    for alpha in (0.5, 2.0):
        for p in (1, 3.5):
            assert bergman_norm([1], Standard(alpha), p) == pytest.approx(1.0, rel=1e-10)


def test_bergman_parseval_and_error_estimate():
    rng = np.random.default_rng(0)
    f = TaylorSeries(rng.standard_normal(30) + 1j * rng.standard_normal(30))
    w = Standard(1.0)
    val, err = bergman_norm(f, w, 2, return_error=True)
    assert val == pytest.approx(coefficient_norm2(f, w), rel=1e-10)
    assert err < 1e-10


def test_bergman_p1_of_kernel_square():
    # ||(1 - a z)**-2||_{A^1} = ||(1 - a z)**-1||_{A^2}**2 = -log(1 - a**2) / a**2
    a = 0.6
    f = TaylorSeries((np.arange(200) + 1) * a ** np.arange(200))
    assert bergman_norm(f, constant(), 1) == pytest.approx(-np.log(1 - a * a) / a ** 2, rel=1e-9)


def test_inner_product_matches_coefficients():
    f, g = TaylorSeries([1, 2j, 3]), TaylorSeries([0.5, -1, 1j, 4])
    w = Standard(0.5)
    sigma = w.norm_constants(2)
    ref = np.sum(f.coeffs * np.conj(g.coeffs[:3]) * sigma)
    assert inner_product(f, g, w) == pytest.approx(ref, rel=1e-10)
    assert inner_product([1, 0], [0, 1], w) == pytest.approx(0, abs=1e-14)


def test_bloch_examples():
    assert bloch_norm([0, 1]) == pytest.approx(1.0, rel=1e-12)
    assert bloch_norm([0, 0, 1]) == pytest.approx(4 / (3 * np.sqrt(3)), rel=1e-9)
    assert bloch_norm([2 - 1j]) == pytest.approx(abs(2 - 1j))
    f = TaylorSeries([0, 1, 0.5, -0.25j])
    val, z = bloch_sup(f)
    for rho in np.linspace(0, 0.99, 40):
        df = f.coeffs[1] + 2 * f.coeffs[2] * rho + 3 * f.coeffs[3] * rho ** 2
        assert val >= (1 - rho ** 2) * abs(df) - 1e-12


def test_garsia_examples():
    assert garsia_bmo([3.0]) == pytest.approx(0.0, abs=1e-12)
    for n in (1, 2, 7):
        assert garsia_bmo(TaylorSeries.monomial(n)) == pytest.approx(1.0, rel=1e-9)


def test_garsia_rotation_invariant():
    f = TaylorSeries([0.2, 1, -0.5j, 0.3, 0.1])
    k = np.arange(5)
    for theta in (0.3, 2.0):
        rot = TaylorSeries(f.coeffs * np.exp(1j * theta * k))
        assert garsia_bmo(rot) == pytest.approx(garsia_bmo(f), rel=1e-12)


def test_bmoa_infty_examples():
    assert bmoa_infty_norm([0, 1], constant()) == pytest.approx(0.25, rel=1e-9)
    assert bmoa_infty_norm([5.0], constant()) == pytest.approx(0.0, abs=1e-12)
    w = Standard(1.0)
    ref = -optimize.minimize_scalar(lambda r: -r * (2 / 3) * (1 - r) ** 2 * (2 + r),
                                    bounds=(0, 1), method="bounded", options={"xatol": 1e-12}).fun
    assert bmoa_infty_norm([0, 1], w) == pytest.approx(ref, rel=1e-8)


def test_d_omega_bmoa_examples():
    assert d_omega_bmoa_norm([0.7], constant()) == pytest.approx(0.7, rel=1e-12)
    assert d_omega_bmoa_norm([0, 1], constant()) == pytest.approx(1.0, rel=1e-9)
    assert d_omega_bmoa_norm([0.0], constant()) == 0.0


def test_pairing_examples():
    w = constant()
    res = pairing_omega_omega([1], [1], w, 0.6)
    assert res.series == pytest.approx(0.6 / 4)
    assert res.quadrature == pytest.approx(0.6 / 4, rel=1e-10)
    assert pairing_omega_omega([1, 0], [0, 1], w, 0.6).series == 0
    f, g = TaylorSeries([1, 2, 1j, 0.5]), TaylorSeries([-1, 1, 0.3, 2j])
    res = pairing_omega_omega(f, g, Standard(1.0), 0.9)
    assert res.quadrature == pytest.approx(res.series, rel=1e-9)


def test_frac_bloch_examples():
    assert frac_bloch_sup([0, 1], constant(), Power(1.0)) == pytest.approx(0.625, rel=1e-8)
    assert frac_bloch_sup([0.0], constant(), Power(1.0)) == 0.0
    f = TaylorSeries([1, 0.5j])
    # with equal weights the functional is the sup modulus
    assert frac_bloch_sup(f, constant(), constant()) == pytest.approx(1.5, rel=1e-6)


def test_bfrac_condition_examples():
    assert not bfrac_condition(constant(), constant()).holds
    rep = bfrac_condition(constant(), Power(1.0))
    assert rep.holds and rep.ratios[-1] == pytest.approx(1.0, rel=1e-2)
    assert bfrac_condition(Standard(0.0), weight_W(2.0, constant())).holds


def test_kernel_norm_comparison_anchor_and_band():
    rows = kernel_norm_comparison(constant(), constant(), 2.0, [0.0, 0.5, 0.9, 0.99])
    assert rows[0]["lhs"] == pytest.approx(1.0, rel=1e-10)
    assert all(np.isfinite(r["ratio"]) for r in rows)
    assert band(r["ratio"] for r in rows[1:]) <= 4.0
    assert band([1.0, 2.0, 4.0]) == 4.0


def test_bilinearity_scaling_of_norms():
    f = TaylorSeries([0.3, 1, -0.5j])
    lam = -2.5j
    for func in (lambda g: bloch_norm(g), lambda g: bergman_norm(g, Standard(1.0), 3),
                 lambda g: garsia_bmo(g), lambda g: bmoa_infty_norm(g, constant())):
        assert func(f * lam) == pytest.approx(abs(lam) * func(f), rel=1e-9)


def test_dilation_does_not_increase_bergman_norm():
    f = TaylorSeries([1, -2, 3, 1j])
    w = constant()
    assert bergman_norm(dilate(f, 0.5), w, 2) <= bergman_norm(f, w, 2)
