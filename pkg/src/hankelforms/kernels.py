"""Backend selection for the hot loops.

The compiled extension is used when it was built; setting
``HANKELFORMS_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

import numpy as np

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if os.environ.get("HANKELFORMS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels


def _c(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def horner(coeffs, z):
    """Evaluate ``sum c_k z**k`` at every point of ``z`` (any shape)."""
    z = np.asarray(z)
    return _impl.horner(_c(coeffs), _c(z.ravel())).reshape(z.shape)


def horner_with_derivative(coeffs, z):
    z = np.asarray(z)
    v, d = _impl.horner_with_derivative(_c(coeffs), _c(z.ravel()))
    return v.reshape(z.shape), d.reshape(z.shape)


def hankel_direct(moments, x):
    """``y_m = sum_n moments[m + n] x_n`` by the O(N**2) double sum."""
    return _impl.hankel_direct(_c(moments), _c(x))
