"""Norms and sup functionals on the disk.

Area integrals split into an angular mean (trapezoid on ``T`` equispaced
angles, exact for trigonometric polynomials of degree below ``T``) and a
radial integral (adaptive Gauss-Legendre refined towards ``r = 1``). Sup
norms are taken over a fixed polar grid and then polished by a local
optimiser started from the best grid points.
"""
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import optimize

from .analytic import (as_series, derivative, dilate, evaluate, evaluate_on_circles,
                       kernel, required_degree)
from .operators import D_lower, D_upper, frac_R
from .quadrature import gauss_legendre, integrate, integrate_to_one
from .weights import stable_sup


def _default_sup_radii():
    inner = np.linspace(0.0, 0.9, 37)
    outer = 1.0 - 10.0 ** -np.linspace(1.0, 20 * np.log10(2.0), 60)
    return np.unique(np.concatenate([inner, outer]))


@dataclass(frozen=True)
class QuadratureSpec:
    """Discretisation shared by every norm.

    ``R`` radial nodes (mapped by ``t = 1 - (1 - s)**3``) are used by the
    fixed radial rule; the adaptive radial integrator ignores ``R``. ``T`` is
    the minimal angular node count; it is raised automatically above the
    trigonometric degree of the integrand.
    """

    R: int = 400
    T: int = 1024
    rtol: float = 1e-10
    sup_angles: int = 64
    sup_radii: tuple = field(default_factory=lambda: tuple(_default_sup_radii()))
    polish: bool = True

    def angular_nodes(self, degree, p=2.0):
        need = int(np.ceil(max(p, 2.0))) * (degree + 1) + 1
        T = self.T
        while T < need:
            T *= 2
        return T

    def radial_rule(self, w):
        """Nodes ``t`` and weights ``2 t w(t) dt`` of the fixed mapped rule."""
        s, ws = gauss_legendre(self.R)
        t = 1.0 - (1.0 - s) ** 3
        jac = 3.0 * (1.0 - s) ** 2
        return t, 2.0 * t * w.profile(t) * jac * ws

    def sup_grid(self):
        r = np.asarray(self.sup_radii)
        theta = 2.0 * np.pi * np.arange(self.sup_angles) / self.sup_angles
        return (r[:, None] * np.exp(1j * theta)[None, :]).ravel()


DEFAULT_QUAD = QuadratureSpec()


def _quad(quad):
    return DEFAULT_QUAD if quad is None else quad


# -- area integrals --------------------------------------------------------

def circle_means(f, radii, p, T):
    """``M_p^p(r, f)``: mean of ``|f|**p`` over the circle of radius ``r``."""
    vals = evaluate_on_circles(as_series(f).coeffs, radii, T)
    return np.mean(np.abs(vals) ** p, axis=1)


def bergman_norm_p(f, w, p, quad=None, T=None):
    """``int |f|**p dw`` (the ``p``-th power of the norm)."""
    if p <= 0:
        raise ValueError(f"exponent must be positive, got {p}")
    quad = _quad(quad)
    f = as_series(f)
    T = quad.angular_nodes(f.degree, p) if T is None else T

    def integrand(r):
        return 2.0 * r * w.profile(r) * circle_means(f, r, p, T)

    return float(integrate_to_one(integrand, 0.0, rtol=quad.rtol))


def bergman_norm(f, w, p, quad=None, return_error=False):
    """``||f||_{p,w} = (2 int_0^1 M_p^p(r, f) w(r) r dr)**(1/p)``.

    With ``return_error=True`` also returns the change when the angular
    node count is doubled, a Richardson-style error indicator for
    exponents other than even integers.
    """
    if p <= 0:
        raise ValueError(f"exponent must be positive, got {p}")
    quad = _quad(quad)
    f = as_series(f)
    T = quad.angular_nodes(f.degree, p)
    val = bergman_norm_p(f, w, p, quad, T) ** (1.0 / p)
    if not return_error:
        return val
    fine = bergman_norm_p(f, w, p, quad, 2 * T) ** (1.0 / p)
    return fine, abs(fine - val)


def coefficient_norm2(f, w):
    """Parseval form ``(sum |f_n|**2 sigma_n)**(1/2)`` of the ``A^2_w`` norm."""
    f = as_series(f)
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2 * w.norm_constants(f.degree))))


def inner_product(f, g, w, quad=None):
    """``int f conj(g) dw`` by area quadrature."""
    quad = _quad(quad)
    f, g = as_series(f), as_series(g)
    T = quad.angular_nodes(f.degree + g.degree, 1.0)

    def integrand(r):
        a = evaluate_on_circles(f.coeffs, r, T)
        b = evaluate_on_circles(g.coeffs, r, T)
        return 2.0 * r * w.profile(r) * np.mean(a * np.conj(b), axis=1)

    def columns(r):
        v = integrand(r)
        return np.stack([v.real, v.imag], axis=1)

    # Cauchy-Schwarz bound fixes the absolute scale when a part vanishes
    atol = 1e-3 * quad.rtol * coefficient_norm2(f, w) * coefficient_norm2(g, w)
    re, im = integrate_to_one(columns, 0.0, rtol=quad.rtol, atol=max(atol, 1e-300))
    return complex(re, im)


# -- sup functionals -------------------------------------------------------

def grid_sup(func, quad=None, n_polish=3):
    """Sup of a nonnegative function of ``z`` over the sup grid, polished.

    Returns ``(value, z)``. ``func`` maps a complex array to a real array.
    """
    quad = _quad(quad)
    z = quad.sup_grid()
    vals = np.asarray(func(z), dtype=float)
    order = np.argsort(vals)[::-1]
    best_val, best_z = float(vals[order[0]]), complex(z[order[0]])
    if not quad.polish:
        return best_val, best_z
    r_max = max(quad.sup_radii)

    def neg(x):
        r = min(max(x[0], 0.0), r_max)
        return -float(func(np.array([r * np.exp(1j * x[1])]))[0])

    for idx in order[:n_polish]:
        z0 = z[idx]
        res = optimize.minimize(neg, [abs(z0), np.angle(z0)], method="Nelder-Mead",
                                options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000})
        if -res.fun > best_val:
            r = min(max(res.x[0], 0.0), r_max)
            best_val, best_z = -float(res.fun), complex(r * np.exp(1j * res.x[1]))
    return best_val, best_z


def bloch_sup(f, quad=None):
    """``(sup (1-|z|^2)|f'(z)| + |f(0)|, maximising z)``."""
    f = as_series(f)
    fp = derivative(f)

    def func(z):
        return (1.0 - np.abs(z) ** 2) * np.abs(evaluate(fp, z))

    val, z = grid_sup(func, quad)
    return val + abs(f.coeffs[0]), z


def bloch_norm(f, quad=None):
    return bloch_sup(f, quad)[0]


def boundary_autocorrelation(f):
    """``b_k = sum_n f_{n+k} conj(f_n)``: Fourier coefficients of ``|f|^2`` on the circle."""
    c = as_series(f).coeffs
    full = np.correlate(c, c, mode="full")
    return full[len(c) - 1:]


def garsia_bmo(f, quad=None):
    """Garsia norm ``sup_z (P[|f|^2](z) - |f(z)|^2)**(1/2)``.

    The harmonic extension of ``|f|^2`` is the trigonometric polynomial
    ``b_0 + 2 Re sum_{k>=1} b_k z**k``, so no boundary quadrature is needed.
    """
    f = as_series(f)
    if f.degree == 0 or not np.any(f.coeffs[1:]):
        return 0.0
    b = boundary_autocorrelation(f)
    ext = b.copy()
    ext[1:] *= 2.0

    def gap(z):
        harmonic = evaluate(ext, z).real
        return np.maximum(harmonic - np.abs(evaluate(f, z)) ** 2, 0.0)

    val, _ = grid_sup(gap, quad)
    return float(np.sqrt(val))


def default_rho_grid():
    inner = np.linspace(0.0, 0.95, 96)
    outer = 1.0 - 10.0 ** -np.linspace(np.log10(20.0), 6.0, 60)
    return np.unique(np.concatenate([inner, outer]))


def bmoa_infty_norm(f, w, rho_grid=None, quad=None):
    """``sup_rho garsia(f_rho) * tail(w, rho)`` over the grid, polished locally."""
    f = as_series(f)
    grid = default_rho_grid() if rho_grid is None else np.sort(np.asarray(rho_grid, dtype=float))

    quad = _quad(quad)
    coarse = replace(quad, polish=False)

    def value(rho, q=quad):
        return garsia_bmo(dilate(f, rho), q) * w.tail(rho)

    vals = np.array([value(r, coarse) for r in grid])
    i = int(np.argmax(vals))
    best = float(vals[i])
    if best == 0.0 or not quad.polish:
        return best
    best = value(grid[i])
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    if hi > lo:
        res = optimize.minimize_scalar(lambda r: -value(r), bounds=(lo, hi), method="bounded",
                                       options={"xatol": 1e-10})
        best = max(best, -float(res.fun))
    return best


def d_omega_bmoa_norm(g, w, rho_grid=None, quad=None):
    """``||D^w g||_{BMOA(inf, w)} + |g(0)|``."""
    g = as_series(g)
    return bmoa_infty_norm(D_upper(w, g), w, rho_grid, quad) + abs(g.coeffs[0])


@dataclass
class PairingResult:
    series: complex
    quadrature: complex


def pairing_omega_omega(f, g, w, rho, quad=None):
    """``sum f_n conj(g_n) rho**(2n+1) w_{2n+1}**2`` and its area-integral twin.

    The twin is ``rho int f_rho conj((D_w g)_rho) dw / 2``; the factor 1/2
    accounts for ``||z**n||^2 = 2 w_{2n+1}`` under the normalised area measure.
    """
    if not 0.0 <= rho < 1.0:
        raise ValueError("rho must lie in [0, 1)")
    f, g = as_series(f), as_series(g)
    n = min(f.degree, g.degree)
    mom = w.odd_moments(n)
    k = np.arange(n + 1)
    series = complex(np.sum(f.coeffs[:n + 1] * np.conj(g.coeffs[:n + 1]) * rho ** (2 * k + 1) * mom ** 2))
    quadrature = rho * inner_product(dilate(f, rho), dilate(D_lower(w, g), rho), w, quad) / 2.0
    return PairingResult(series, quadrature)


def frac_bloch_sup(f, omega, nu, quad=None):
    """``sup (tail_nu(|z|) / tail_omega(|z|)) |R^{omega,nu} f(z)|``."""
    Rf = frac_R(omega, nu, as_series(f))

    def func(z):
        r = np.abs(z)
        return nu.tail(r) / omega.tail(r) * np.abs(evaluate(Rf, z))

    return grid_sup(func, quad)[0]


@dataclass
class ConditionReport:
    holds: bool
    sup_ratio: float
    ratios: np.ndarray
    grid: np.ndarray

    def __bool__(self):
        return self.holds


def default_condition_grid():
    return 1.0 - 10.0 ** -np.linspace(0.05, 6.0, 120)


def bfrac_condition(omega, nu, rho_grid=None, margin=0.10):
    """Sample ``int_0^rho tail_w / (tail_v (1 - t)) dt`` against ``tail_w(rho) / tail_v(rho)``.

    Holds when the ratio stays bounded: its max over the last decade of the
    grid is within ``margin`` of the max before it.
    """
    grid = np.sort(default_condition_grid() if rho_grid is None else np.asarray(rho_grid, dtype=float))

    def integrand(t):
        return omega.tail(t) / (nu.tail(t) * (1.0 - t))

    knots = np.concatenate([[0.0], grid])
    pieces = [integrate(integrand, a, b, rtol=1e-10) for a, b in zip(knots[:-1], knots[1:])]
    lhs = np.cumsum(pieces)
    rhs = omega.tail(grid) / nu.tail(grid)
    ratios = lhs / rhs
    return ConditionReport(stable_sup(ratios, grid, margin), float(ratios.max()), ratios, grid)


# -- kernel norms ----------------------------------------------------------

def kernel_norm_integral(omega, nu, p, rho):
    """``int_0^rho tail_w(t) / (tail_v(t)**p (1 - t)**p) dt``."""
    return float(integrate(lambda t: omega.tail(t) / (nu.tail(t) ** p * (1.0 - t) ** p),
                           0.0, rho, rtol=1e-10))


def kernel_norm_comparison(omega, nu, p, z_ladder, tol=1e-10, quad=None, max_degree=200000):
    """Rows comparing ``||B_z^nu||_{p,omega}^p`` with ``1 +`` the tail integral.

    The additive constant keeps the comparison meaningful at ``z = 0``, where
    the integral vanishes; it does not affect the behaviour as ``|z| -> 1``.
    Each row holds ``parameter`` (``|z|``), ``lhs``, ``rhs``, ``ratio`` and the
    second-form quantities ``rhs2 = tail_w / (tail_v**p (1-|z|)**(p-1))``,
    ``ratio2``, plus the truncation degree used.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    rows = []
    for r in z_ladder:
        r = float(r)
        N = required_degree(nu, r, tol, max_degree)
        B = kernel(nu, r, max(N, 1))
        lhs = bergman_norm_p(B, omega, p, quad)
        rhs = 1.0 + kernel_norm_integral(omega, nu, p, r)
        rhs2 = omega.tail(r) / (nu.tail(r) ** p * (1.0 - r) ** (p - 1.0))
        rows.append({
            "parameter": r, "lhs": lhs, "rhs": rhs,
            "ratio": lhs / rhs,
            "rhs2": rhs2, "ratio2": lhs / rhs2, "truncation": N,
        })
    return rows


def band(values):
    """``max / min`` of a collection of positive ratios."""
    v = np.asarray(list(values), dtype=float)
    return float(v.max() / v.min())
