import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hankelforms.analytic import TaylorSeries, kernel
from hankelforms.measures import ComplexMeasure, moments, project
from hankelforms.norms import inner_product
from hankelforms.operators import (D_lower, D_upper, D_upper_via_plus, HankelMatrixView, frac_R,
                                   hankel_form_eval, hankel_matvec, hankel_matvec_naive,
                                   hankel_operator_apply, multiplier)
from hankelforms.weights import Power, Standard, constant, weight_W

WEIGHTS = [constant(), Standard(0.5), Standard(1.0), weight_W(2.0, constant())]


def test_frac_R_examples():
    f = TaylorSeries([1, 2, 3])
    assert frac_R(Standard(1.0), Standard(1.0), f) == f
    out = frac_R(constant(), Power(1.0), [0, 1])
    assert np.allclose(out.coeffs, [0, 2.5], rtol=1e-14)


@pytest.mark.parametrize("w", WEIGHTS)
def test_D_upper_equals_R_one_plus(w):
    f = TaylorSeries(np.linspace(1, 2, 40) * (1 + 1j))
    assert np.allclose(D_upper_via_plus(w, f).coeffs, D_upper(w, f).coeffs, rtol=1e-14, atol=0)
    assert np.allclose(D_lower(w, D_upper(w, f)).coeffs, f.coeffs, rtol=1e-15)


def test_kernel_and_projection_intertwining():
    a = 0.8j
    mu = ComplexMeasure(((0.3, 1.0), (0.5 + 0.5j, -2.0)))
    for w in WEIGHTS:
        for v in WEIGHTS:
            lhs = frac_R(w, v, kernel(w, a, 100)).coeffs
            assert np.allclose(lhs, kernel(v, a, 100).coeffs, rtol=1e-13, atol=0)
            lhs = frac_R(w, v, project(w, mu, True, 100)).coeffs
            assert np.allclose(lhs, project(v, mu, True, 100).coeffs, rtol=1e-13, atol=0)


def test_multiplier_composition():
    w, v, e = WEIGHTS[1], WEIGHTS[2], WEIGHTS[3]
    assert np.allclose(multiplier(w, v, 50) * multiplier(v, e, 50), multiplier(w, e, 50), rtol=1e-14)


def test_hankel_form_examples():
    a = 0.5 - 0.2j
    mu = ComplexMeasure.delta(a)
    assert hankel_form_eval(mu, [1], [1]) == pytest.approx(1)
    assert hankel_form_eval(mu, [0, 1], [0, 1]) == pytest.approx(a * a)
    area = ComplexMeasure.anti_analytic([1], constant())  # dA itself
    assert hankel_form_eval(area, [2, 5, 1], [3, 1]) == pytest.approx(6)


def test_matvec_examples():
    x = np.array([2.0, 3.0, 4.0])
    y = hankel_matvec(np.r_[1.0, np.zeros(4)], x)
    assert np.allclose(y, [2, 0, 0])
    a = 0.7
    e0 = np.zeros(6)
    e0[0] = 1
    assert np.allclose(hankel_matvec(a ** np.arange(11), e0), a ** np.arange(6))
    with pytest.raises(ValueError):
        hankel_matvec(np.ones(3), np.ones(3))


def test_matvec_against_naive():
    rng = np.random.default_rng(3)
    N = 128
    m = rng.standard_normal(2 * N + 1) + 1j * rng.standard_normal(2 * N + 1)
    x = rng.standard_normal(N + 1) + 1j * rng.standard_normal(N + 1)
    y = hankel_matvec(m, x)
    ref = np.array([np.dot(m[k:k + N + 1], x) for k in range(N + 1)])
    assert np.allclose(y, ref, rtol=0, atol=1e-11 * np.abs(ref).max())
    assert np.allclose(hankel_matvec_naive(m, x), ref, rtol=0, atol=1e-11 * np.abs(ref).max())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 40), st.integers(0, 2 ** 32 - 1))
def test_matvec_property(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)
    x = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    y = hankel_matvec(m, x)
    H = m[np.add.outer(np.arange(n + 1), np.arange(n + 1))]
    assert np.allclose(y, H @ x, atol=1e-10 * (1 + np.abs(H @ x).max()))


def test_matrix_view_dense_and_adjoint():
    mu = ComplexMeasure(((0.4j, 1.0), (-0.3, 0.5)))
    A = HankelMatrixView.for_measure(mu, Standard(1.0), 20)
    D = A.dense()
    assert np.allclose(D, D.T)
    rng = np.random.default_rng(0)
    x = rng.standard_normal(20) + 1j * rng.standard_normal(20)
    assert np.allclose(A.matvec(x), D @ x)
    assert np.allclose(A.rmatvec(x), D.conj().T @ x)


def test_hankel_operator_examples():
    c = hankel_operator_apply(ComplexMeasure.delta(0.0), constant(), [1], 5)
    assert np.allclose(c.coeffs, [1, 0, 0, 0, 0, 0])
    a = 0.5 + 0.1j
    c = hankel_operator_apply(ComplexMeasure.delta(a), constant(), [1], 10)
    n = np.arange(11)
    assert np.allclose(c.coeffs, np.conj((n + 1) * a ** n))


def test_hankel_operator_duality():
    # <(H f)_rho, conj g>_w tends to H_mu(f, g)
    mu = ComplexMeasure(((0.5, 1.0), (-0.2j, 2.0)))
    w = constant()
    f, g = TaylorSeries([1, 2, 0.5]), TaylorSeries([0.3, -1, 1j])
    target = hankel_form_eval(mu, f, g)
    Hf = hankel_operator_apply(mu, w, f, 60)
    errs = []
    for rho in (0.9, 0.99, 0.999):
        conj_val = inner_product(g, TaylorSeries(Hf.coeffs * rho ** np.arange(61)), w)
        errs.append(abs(np.conj(conj_val) - np.conj(target)))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-2 * abs(target)
