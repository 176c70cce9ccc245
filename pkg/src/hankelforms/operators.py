"""Coefficient multipliers and Hankel structure.

The two-weight fractional derivative multiplies ``f_n`` by
``w_{2n+1} / v_{2n+1}``; ``D^w`` and ``D_w`` divide and multiply by
``w_{2n+1}``. All four are built from the same cached moment ladders, so
their algebraic identities hold to rounding.
"""
import numpy as np
from scipy import fft

from . import kernels
from .analytic import TaylorSeries, as_series
from .measures import moments as measure_moments
from .weights import constant, omega_plus


def multiplier(omega, nu, N):
    """Ratios ``omega_{2n+1} / nu_{2n+1}`` for ``n = 0..N``."""
    return omega.odd_moments(N) / nu.odd_moments(N)


def frac_R(omega, nu, f):
    """``R^{omega,nu} f = sum (omega_{2n+1} / nu_{2n+1}) f_n z**n``."""
    f = as_series(f)
    return TaylorSeries(f.coeffs * multiplier(omega, nu, f.degree))


def D_upper(omega, f):
    """``D^omega f = sum f_n / omega_{2n+1} z**n``."""
    f = as_series(f)
    return TaylorSeries(f.coeffs / omega.odd_moments(f.degree))


def D_lower(omega, f):
    """``D_omega f = sum omega_{2n+1} f_n z**n``."""
    f = as_series(f)
    return TaylorSeries(f.coeffs * omega.odd_moments(f.degree))


def D_upper_via_plus(omega, f):
    """``D^omega`` realised as ``R^{1, omega_+}``."""
    return frac_R(constant(), omega_plus(omega), f)


def hankel_form_eval(mu, f, g):
    """``H_mu(f, g) = int f g d mu = sum_k (fg)_k m_k``."""
    f, g = as_series(f), as_series(g)
    fg = np.convolve(f.coeffs, g.coeffs)
    return complex(np.dot(fg, measure_moments(mu, len(fg) - 1)))


def _check_lengths(moments, x):
    moments = np.asarray(moments, dtype=complex)
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1 or moments.ndim != 1:
        raise ValueError("hankel_matvec expects 1-D arrays")
    n = len(x) - 1
    if len(moments) < 2 * n + 1:
        raise ValueError(f"need {2 * n + 1} moments for a vector of length {n + 1}, got {len(moments)}")
    return moments[:2 * n + 1], x


def hankel_matvec(moments, x):
    """``y_m = sum_n moments[m + n] x_n`` for ``m, n = 0..N`` in O(N log N).

    The reversed vector is convolved with the moments through one cyclic
    transform; entries ``N..2N`` of the linear convolution are the Hankel
    product, and a cyclic length ``L >= 2N + 1`` only aliases entries below
    ``3N + 1 - L <= N``.
    """
    moments, x = _check_lengths(moments, x)
    n = len(x) - 1
    size = fft.next_fast_len(2 * n + 1)
    prod = fft.ifft(fft.fft(moments, size) * fft.fft(x[::-1], size))
    return prod[n:2 * n + 1]


def hankel_matvec_naive(moments, x):
    """The O(N**2) double sum; oracle for :func:`hankel_matvec`."""
    moments, x = _check_lengths(moments, x)
    return kernels.hankel_direct(moments, x)


class HankelMatrixView:
    """``A_mn = m_{m+n} / sqrt(s_m s_n)`` as a matrix-free operator.

    With ``s`` the monomial norm constants this is the Hankel form in
    orthonormal coordinates of ``A^2_w``.
    """

    def __init__(self, moment_seq, scales):
        self.moments = np.asarray(moment_seq, dtype=complex)
        self.scales = np.asarray(scales, dtype=float)
        self.n = len(self.scales)
        if len(self.moments) < 2 * self.n - 1:
            raise ValueError("not enough moments for the requested size")
        self._root = np.sqrt(self.scales)

    @classmethod
    def for_measure(cls, mu, omega, N):
        return cls(measure_moments(mu, 2 * (N - 1)), omega.norm_constants(N - 1))

    def matvec(self, x):
        return hankel_matvec(self.moments[:2 * self.n - 1], x / self._root) / self._root

    def rmatvec(self, x):
        # A is complex symmetric, so A^H x = conj(A conj(x))
        return np.conj(self.matvec(np.conj(x)))

    def dense(self):
        i = np.arange(self.n)
        return self.moments[i[:, None] + i[None, :]] / np.outer(self._root, self._root)


def hankel_operator_apply(mu, omega, f, N):
    """Conjugate coefficients of ``H_mu^omega f``, truncated at degree ``N``.

    ``H_mu^omega f`` is anti-analytic; its conjugate has coefficients
    ``c_n = conj(sum_k f_k m_{k+n}) / sigma_n``.
    """
    f = as_series(f)
    M = max(f.degree, N)
    m = measure_moments(mu, 2 * M)
    y = hankel_matvec(m, f.padded(M))[:N + 1]
    return TaylorSeries(np.conj(y) / omega.norm_constants(N))
