# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: polynomial evaluation and direct Hankel sums.

Complex values are kept as split real/imaginary arrays and the loops are
ordered so the innermost one runs over independent entries; a per-point
Horner chain is latency bound, and the C99 complex multiply goes through
``__muldc3`` (inf/nan recovery), which is several times slower.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef _split(a):
    a = np.asarray(a)
    return np.ascontiguousarray(a.real), np.ascontiguousarray(a.imag)


cdef void _horner_step(double[::1] ar, double[::1] ai, const double[::1] zr, const double[::1] zi,
                       double cr, double ci) noexcept nogil:
    cdef Py_ssize_t i
    cdef double t
    for i in range(ar.shape[0]):
        t = ar[i] * zr[i] - ai[i] * zi[i] + cr
        ai[i] = ar[i] * zi[i] + ai[i] * zr[i] + ci
        ar[i] = t


def horner(const double complex[::1] coeffs, const double complex[::1] z):
    cdef Py_ssize_t n = coeffs.shape[0], m = z.shape[0], k
    if n == 0:
        return np.zeros(m, dtype=np.complex128)
    zr, zi = _split(z)
    ar = np.full(m, coeffs[n - 1].real)
    ai = np.full(m, coeffs[n - 1].imag)
    cdef double[::1] var = ar, vai = ai, vzr = zr, vzi = zi
    with nogil:
        for k in range(n - 2, -1, -1):
            _horner_step(var, vai, vzr, vzi, coeffs[k].real, coeffs[k].imag)
    return ar + 1j * ai


def horner_with_derivative(const double complex[::1] coeffs, const double complex[::1] z):
    cdef Py_ssize_t n = coeffs.shape[0], m = z.shape[0], k, i
    if n == 0:
        return np.zeros(m, dtype=np.complex128), np.zeros(m, dtype=np.complex128)
    zr, zi = _split(z)
    ar = np.full(m, coeffs[n - 1].real)
    ai = np.full(m, coeffs[n - 1].imag)
    dr = np.zeros(m)
    di = np.zeros(m)
    cdef double[::1] var = ar, vai = ai, vdr = dr, vdi = di, vzr = zr, vzi = zi
    cdef double t
    with nogil:
        for k in range(n - 2, -1, -1):
            for i in range(m):
                t = vdr[i] * vzr[i] - vdi[i] * vzi[i] + var[i]
                vdi[i] = vdr[i] * vzi[i] + vdi[i] * vzr[i] + vai[i]
                vdr[i] = t
            _horner_step(var, vai, vzr, vzi, coeffs[k].real, coeffs[k].imag)
    return ar + 1j * ai, dr + 1j * di


def hankel_direct(const double complex[::1] moments, const double complex[::1] x):
    cdef Py_ssize_t n = x.shape[0], m, k
    if moments.shape[0] < 2 * n - 1:
        raise ValueError("need at least 2N+1 moments for an (N+1)-vector")
    mr_, mi_ = _split(moments)
    xr_, xi_ = _split(x)
    yr = np.zeros(n)
    yi = np.zeros(n)
    cdef const double[::1] mr = mr_, mi = mi_, xr = xr_, xi = xi_
    cdef double[::1] ovr = yr, ovi = yi
    cdef double a, b
    with nogil:
        # column sweep: y += x_k * moments[k:k+n], an axpy per k
        for k in range(n):
            a = xr[k]
            b = xi[k]
            for m in range(n):
                ovr[m] += mr[m + k] * a - mi[m + k] * b
                ovi[m] += mr[m + k] * b + mi[m + k] * a
    return yr + 1j * yi
