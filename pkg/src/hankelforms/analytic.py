"""Truncated Taylor series on the disk and the weighted reproducing kernels."""
import csv

import numpy as np

from . import kernels


class TaylorSeries:
    """Immutable complex coefficient vector ``(f_0, ..., f_N)``.

    The declared degree is ``len(coeffs) - 1`` even when trailing
    coefficients vanish; arithmetic never drops below it.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex, ndmin=1)
        if c.ndim != 1 or len(c) == 0:
            raise ValueError("coefficients must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("TaylorSeries is immutable")

    def __reduce__(self):
        return (TaylorSeries, (np.array(self.coeffs),))

    @classmethod
    def monomial(cls, n, c=1.0):
        out = np.zeros(n + 1, dtype=complex)
        out[n] = c
        return cls(out)

    @classmethod
    def constant(cls, c):
        return cls([c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        if not isinstance(other, TaylorSeries):
            other = TaylorSeries.constant(other)
        n = max(len(self), len(other))
        return TaylorSeries(self.padded(n - 1) + other.padded(n - 1))

    __radd__ = __add__

    def __neg__(self):
        return TaylorSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, TaylorSeries) else -other)

    def __mul__(self, other):
        if isinstance(other, TaylorSeries):
            return multiply(self, other)
        return TaylorSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return TaylorSeries(self.coeffs / scalar)

    def __eq__(self, other):
        return isinstance(other, TaylorSeries) and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __repr__(self):
        return f"TaylorSeries(degree={self.degree}, coeffs={self.coeffs[:6]}{'...' if len(self) > 6 else ''})"

    def padded(self, degree):
        """Coefficients zero-padded (or truncated) to ``degree``."""
        out = np.zeros(degree + 1, dtype=complex)
        k = min(len(self), degree + 1)
        out[:k] = self.coeffs[:k]
        return out

    def truncate(self, degree):
        return TaylorSeries(self.padded(degree))

    def conj_coeffs(self):
        return TaylorSeries(np.conj(self.coeffs))


def as_series(f):
    return f if isinstance(f, TaylorSeries) else TaylorSeries(f)


def evaluate(f, z):
    """Horner evaluation of ``f`` at a point or array of points."""
    f = as_series(f)
    z = np.asarray(z, dtype=complex)
    out = kernels.horner(f.coeffs, z)
    return complex(out) if out.ndim == 0 else out


def evaluate_with_derivative(f, z):
    f = as_series(f)
    z = np.asarray(z, dtype=complex)
    return kernels.horner_with_derivative(f.coeffs, z)


def evaluate_on_circles(coeffs, radii, T):
    """Values ``f(r e^{2 pi i j / T})`` for every radius, shape ``(len(radii), T)``.

    Coefficients are folded modulo ``T`` and transformed by one FFT per
    radius, so the cost is ``O(N + T log T)`` per circle with no aliasing.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    n = len(coeffs)
    blocks = -(-n // T)
    k = np.arange(n)
    with np.errstate(under="ignore"):
        scaled = coeffs[None, :] * radii[:, None] ** k[None, :]
    folded = np.zeros((len(radii), blocks * T), dtype=complex)
    folded[:, :n] = scaled
    folded = folded.reshape(len(radii), blocks, T).sum(axis=1)
    return np.fft.ifft(folded, axis=1) * T


def dilate(f, rho):
    """``f_rho(z) = f(rho z)``."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"dilation parameter must lie in [0, 1], got {rho}")
    f = as_series(f)
    return TaylorSeries(f.coeffs * rho ** np.arange(len(f)))


def multiply(f, g, trunc=None):
    """Cauchy product; the degree is ``deg f + deg g`` unless ``trunc`` is given."""
    f, g = as_series(f), as_series(g)
    out = np.convolve(f.coeffs, g.coeffs)
    if trunc is not None:
        res = np.zeros(trunc + 1, dtype=complex)
        k = min(len(out), trunc + 1)
        res[:k] = out[:k]
        out = res
    return TaylorSeries(out)


def derivative(f):
    f = as_series(f)
    if f.degree == 0:
        return TaylorSeries([0.0])
    return TaylorSeries(f.coeffs[1:] * np.arange(1, len(f)))


def power(F, s, degree=None):
    """Coefficients of ``F**s`` for ``F(0) != 0`` (principal branch at 0).

    Uses the J.C.P. Miller recurrence
    ``n F_0 G_n = sum_{k=1..n} ((s+1) k - n) F_k G_{n-k}``.
    """
    F = as_series(F)
    degree = F.degree if degree is None else degree
    c = F.padded(degree)
    if c[0] == 0:
        raise ValueError("power series of F**s needs F(0) != 0")
    G = np.zeros(degree + 1, dtype=complex)
    G[0] = c[0] ** s
    for n in range(1, degree + 1):
        k = np.arange(1, n + 1)
        G[n] = np.sum(((s + 1.0) * k - n) * c[k] * G[n - k]) / (n * c[0])
    return TaylorSeries(G)


def binomial_series(s, N):
    """Coefficients of ``(1 - w)**(-s)`` up to degree ``N``."""
    n = np.arange(1, N + 1)
    out = np.ones(N + 1)
    out[1:] = np.cumprod((s + n - 1.0) / n)
    return out


def norm_constants(w, N):
    """``sigma_n = 2 w_{2n+1}``, the squared ``A^2_w`` norm of ``z**n``."""
    return w.norm_constants(N)


def kernel(w, a, N=256):
    """Truncated reproducing kernel ``B_a^w(xi) = sum conj(a)**n xi**n / sigma_n``."""
    a = complex(a)
    if abs(a) >= 1:
        raise ValueError(f"kernel point must lie in the open disk, got {a}")
    sigma = w.norm_constants(N)
    with np.errstate(under="ignore"):
        powers = np.conj(a) ** np.arange(N + 1)
    return TaylorSeries(powers / sigma)


def required_degree(w, a, tol=1e-10, max_degree=200000):
    """Smallest ``N`` whose kernel coefficient tail is below ``tol`` (relative)."""
    r = abs(a)
    if r == 0:
        return 0
    n = 64
    while n <= max_degree:
        c = r ** np.arange(n + 1) / w.norm_constants(n)
        ratio = c[-1] / c[-2]
        beyond = c[-1] * ratio / (1 - ratio) if ratio < 1 else np.inf
        if beyond <= tol * c.sum():
            # tails[k] bounds the mass of the coefficients of index >= k
            tails = np.cumsum(c[::-1])[::-1] + beyond
            below = np.nonzero(tails <= tol * (c.sum() + beyond))[0]
            return int(below[0]) - 1 if len(below) else n
        n *= 2
    raise TruncationError(f"kernel at |a|={r} needs degree beyond {max_degree}", n)


class TruncationError(ValueError):
    def __init__(self, message, required):
        super().__init__(f"{message}; required degree at least {required}")
        self.required = required


# -- serialization -------------------------------------------------------

def write_csv(f, path):
    """Write rows ``n, re, im``; ``repr`` round-trips every finite double."""
    f = as_series(f)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "re", "im"])
        for n, c in enumerate(f.coeffs):
            w.writerow([n, repr(float(c.real)), repr(float(c.imag))])


def read_csv(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if rows and rows[0][0].strip() == "n":
        rows = rows[1:]
    data = {int(r[0]): complex(float(r[1]), float(r[2])) for r in rows}
    out = np.zeros(max(data) + 1, dtype=complex)
    for n, c in data.items():
        out[n] = c
    return TaylorSeries(out)


def parse_series(text):
    """Parse ``zN`` (monomial), ``c0,c1,...`` (coefficients) or a CSV path."""
    text = text.strip()
    if text.startswith("z") and text[1:].isdigit():
        return TaylorSeries.monomial(int(text[1:]))
    if text == "z":
        return TaylorSeries.monomial(1)
    if text.endswith(".csv"):
        return read_csv(text)
    return TaylorSeries([complex(t.replace(" ", "")) for t in text.split(",")])
