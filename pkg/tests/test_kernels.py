"""Parity between the compiled kernels and the pure-Python fallback."""
import os
import subprocess
import sys

import numpy as np
import pytest

from hankelforms import _pykernels, kernels

try:
    from hankelforms import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def _data(seed, n, m=50):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    z = 0.95 * (rng.uniform(size=m) ** 0.5) * np.exp(2j * np.pi * rng.uniform(size=m))
    return c, z


@needs_ext
@pytest.mark.parametrize("n", [1, 2, 17, 300])
def test_horner_parity(n):
    c, z = _data(n, n)
    assert np.allclose(_ckernels.horner(c, z), _pykernels.horner(c, z), rtol=1e-13, atol=1e-13)
    v1, d1 = _ckernels.horner_with_derivative(c, z)
    v2, d2 = _pykernels.horner_with_derivative(c, z)
    assert np.allclose(v1, v2, rtol=1e-13, atol=1e-13)
    assert np.allclose(d1, d2, rtol=1e-12, atol=1e-12)


@needs_ext
@pytest.mark.parametrize("n", [0, 1, 64])
def test_hankel_direct_parity(n):
    rng = np.random.default_rng(n)
    m = rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)
    x = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    assert np.allclose(_ckernels.hankel_direct(m, x), _pykernels.hankel_direct(m, x), rtol=1e-12)


def test_wrappers_preserve_shape():
    c, _ = _data(0, 5)
    z = np.zeros((3, 4), dtype=complex) + 0.5
    assert kernels.horner(c, z).shape == (3, 4)


def test_backend_selection_env():
    code = "import hankelforms.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, HANKELFORMS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
    if _ckernels is not None:
        env.pop("HANKELFORMS_PURE_PYTHON")
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
        assert out.stdout.strip() == "cython"
