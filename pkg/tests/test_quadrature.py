import numpy as np
import pytest
from scipy import special

from hankelforms.quadrature import QuadratureError, gauss_legendre, integrate, integrate_to_one


def test_gauss_legendre_exact_for_polynomials():
    x, w = gauss_legendre(10)
    assert np.all((x > 0) & (x < 1))
    for k in range(20):
        assert np.dot(w, x ** k) == pytest.approx(1.0 / (k + 1), rel=1e-14)


def test_integrate_smooth_and_reversed():
    assert integrate(np.exp, 0.0, 1.0) == pytest.approx(np.e - 1.0, rel=1e-13)
    assert integrate(np.exp, 1.0, 0.0) == pytest.approx(1.0 - np.e, rel=1e-13)
    assert integrate(np.exp, 0.3, 0.3) == 0.0


def test_integrate_multicolumn():
    def f(t):
        return np.stack([t ** 513, np.sin(t)], axis=1)

    out = integrate(f, 0.0, 1.0, rtol=1e-12)
    assert out[0] == pytest.approx(1.0 / 514, rel=1e-11)
    assert out[1] == pytest.approx(1.0 - np.cos(1.0), rel=1e-12)


@pytest.mark.parametrize("beta", [0.25, 0.5, 0.9])
def test_integrate_to_one_endpoint_singularity(beta):
    val = integrate_to_one(lambda t: (1.0 - t) ** (-beta), 0.0, rtol=1e-10)
    assert val == pytest.approx(1.0 / (1.0 - beta), rel=1e-8)


def test_integrate_to_one_moments():
    for x in (1.0, 11.0, 301.0):
        val = integrate_to_one(lambda s: 2.0 * (1 - s * s) * s ** x, 0.0, rtol=1e-13)
        assert val == pytest.approx(special.beta((x + 1) / 2, 2.0), rel=1e-12)


def test_integrate_to_one_nonintegrable_raises():
    with pytest.raises(QuadratureError):
        integrate_to_one(lambda t: 1.0 / (1.0 - t), 0.0, rtol=1e-10)
