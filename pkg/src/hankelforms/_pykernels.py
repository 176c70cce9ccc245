"""Pure numpy versions of the compiled kernels in ``_ckernels.pyx``."""
import numpy as np


def horner(coeffs, z):
    coeffs = np.asarray(coeffs, dtype=complex)
    z = np.asarray(z, dtype=complex)
    acc = np.zeros(z.shape, dtype=complex)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def horner_with_derivative(coeffs, z):
    coeffs = np.asarray(coeffs, dtype=complex)
    z = np.asarray(z, dtype=complex)
    acc = np.zeros(z.shape, dtype=complex)
    dacc = np.zeros(z.shape, dtype=complex)
    if len(coeffs) == 0:
        return acc, dacc
    acc = acc + coeffs[-1]
    for c in coeffs[-2::-1]:
        dacc = dacc * z + acc
        acc = acc * z + c
    return acc, dacc


def hankel_direct(moments, x):
    moments = np.asarray(moments, dtype=complex)
    x = np.asarray(x, dtype=complex)
    n = len(x)
    if len(moments) < 2 * n - 1:
        raise ValueError("need at least 2N+1 moments for an (N+1)-vector")
    out = np.empty(n, dtype=complex)
    for m in range(n):
        out[m] = moments[m:m + n] @ x
    return out
