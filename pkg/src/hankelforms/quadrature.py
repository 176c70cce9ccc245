"""Adaptive Gauss-Legendre quadrature on intervals of the unit radius.

Integrands are vectorised: ``func(t)`` receives a 1-D node array and returns
either an array of the same length or an array of shape ``(len(t), k)``; the
latter integrates ``k`` columns at once on shared nodes (used for whole moment
ladders).
"""
from functools import lru_cache

import numpy as np


class QuadratureError(ArithmeticError):
    """Raised when an integral does not reach the requested tolerance.

    The achieved error bound is kept on ``bound``.
    """

    def __init__(self, message, bound):
        super().__init__(f"{message} (achieved bound {bound:.3e})")
        self.bound = bound


@lru_cache(maxsize=None)
def gauss_legendre(n):
    """Nodes and weights of the ``n``-point rule on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _rule(func, a, b, order):
    x, w = gauss_legendre(order)
    h = b - a
    vals = np.asarray(func(a + h * x))
    return h * np.tensordot(w, vals, axes=(0, 0))


def integrate(func, a, b, rtol=1e-10, atol=1e-300, order=20, max_intervals=20000,
              scale=None):
    """Integrate ``func`` over ``[a, b]`` by adaptive interval bisection.

    An interval is accepted once the ``order``-point estimate and the sum of
    the two half-interval estimates agree to within its share of the global
    tolerance. ``scale`` overrides the magnitude the relative tolerance is
    measured against (defaults to a coarse estimate of the integral itself).
    """
    if b < a:
        return -integrate(func, b, a, rtol, atol, order, max_intervals, scale)
    if b == a:
        return 0.0 * _rule(func, a, a + 1.0, 2)
    length = b - a
    whole = _rule(func, a, b, order)
    if scale is None:
        scale = np.abs(_rule(func, a, b, 2 * order))
    scale = np.maximum(np.abs(scale), atol)

    total = 0.0
    err_total = 0.0
    stack = [(a, b, whole)]
    count = 0
    while stack:
        lo, hi, est = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _rule(func, lo, mid, order)
        right = _rule(func, mid, hi, order)
        refined = left + right
        err = np.abs(refined - est)
        allowed = 0.1 * rtol * scale * (hi - lo) / length
        count += 1
        if np.all(err <= np.maximum(allowed, atol)) or hi - lo <= 1e-15 * max(1.0, abs(hi)):
            total = total + refined
            err_total = err_total + err
            continue
        if count > max_intervals:
            raise QuadratureError("interval budget exhausted", float(np.max(err_total + err)))
        stack.append((lo, mid, left))
        stack.append((mid, hi, right))
    return total


def integrate_to_one(func, a, rtol=1e-10, atol=1e-300, order=20, max_pieces=200):
    """Integrate ``func`` over ``[a, 1)``, refining geometrically towards 1.

    The interval is cut into pieces ``[1 - d, 1 - d/2]`` with ``d`` halving,
    each integrated adaptively. Once piece contributions decay geometrically
    the remainder is summed in closed form; an algebraic endpoint singularity
    ``(1 - t)**s`` with ``s > -1`` thus costs only a few dozen pieces.
    """
    if not 0.0 <= a < 1.0:
        raise ValueError(f"lower limit must lie in [0, 1), got {a}")
    # coarse sweep fixes the magnitude every piece is measured against
    scale = 0.0
    d = 1.0 - a
    while d > 1e-12:
        scale = scale + np.abs(_rule(func, 1.0 - d, 1.0 - 0.5 * d, order))
        d *= 0.5
    scale = np.maximum(scale, atol)

    d = 1.0 - a
    total = 0.0
    pieces = []
    for _ in range(max_pieces):
        lo, hi = 1.0 - d, 1.0 - 0.5 * d
        if d < 1e-14:
            break
        piece = integrate(func, lo, hi, rtol=0.2 * rtol, atol=atol, order=order, scale=scale)
        total = total + piece
        pieces.append(piece)
        d *= 0.5
        if len(pieces) >= 4:
            remainder, q = _geometric_remainder(pieces)
            if np.all((q < 0.99) & (np.abs(remainder) <= np.maximum(0.01 * rtol * scale, atol))):
                return total + remainder
        if len(pieces) >= 8:
            # a settled decay ratio means the tail is a power of (1 - t)
            remainder, q, bound = _settled_remainder(pieces, scale)
            if np.all(q < 0.99) and bound <= 0.01 * rtol:
                return total + remainder
    if len(pieces) < 4:
        return total
    # nodes cannot approach 1 any further; trust the geometric remainder only
    # when the decay ratio has settled
    remainder, q, bound = _settled_remainder(pieces, scale)
    if np.any(q >= 0.99) or bound > 100 * rtol:
        raise QuadratureError("endpoint tail did not converge", bound)
    return total + remainder


def _settled_remainder(pieces, scale):
    """Geometric remainder and a bound on its error from the drift of the ratio."""
    remainder, q = _geometric_remainder(pieces)
    drift = 0.0
    for k in (1, 2):
        _, q_prev = _geometric_remainder(pieces[:-k])
        drift = np.maximum(drift, np.abs(q - q_prev))
    drift = drift / np.maximum(1.0 - q, 1e-3)
    return remainder, q, float(np.max(drift * np.abs(remainder) / scale))


def _geometric_remainder(pieces):
    last, prev = pieces[-1], pieces[-2]
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(np.abs(prev) > 0, np.abs(last) / np.abs(prev), 0.0)
    q = np.clip(q, 0.0, 0.999)
    return last * q / (1.0 - q), q
