"""Radial weights on the unit disk, their tails, moments and doubling tests.

A radial weight is a nonnegative profile ``w(r)`` on ``[0, 1)``. Everything
downstream only needs two derived quantities:

* the tail ``tail(rho) = int_rho^1 w(t) dt``
* the moments ``moment(x) = int_0^1 w(s) s**x ds``

Closed forms are used wherever they exist (standard and power weights, the
tail of the derived weight ``W_{x,w}``, moments of ``w_+``); everything else
goes through :mod:`hankelforms.quadrature`.
"""
import csv
import logging
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy import special

from .quadrature import integrate, integrate_to_one

logger = logging.getLogger(__name__)

TAIL_RTOL = 1e-10
MOMENT_RTOL = 1e-13


class WeightClassificationError(ValueError):
    """A weight failed a numerical class membership test."""


def _check_rho(rho):
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0) or np.any(rho >= 1):
        raise ValueError(f"rho must lie in [0, 1), got {rho}")
    return rho


def _beta(a, b):
    """``B(a, b)`` for an array ``a`` and scalar ``b``, to full double precision.

    ``scipy.special.beta`` drifts to ~1e-12 relative for large ``a``. With
    integer ``b`` the Pochhammer form is exact to rounding; otherwise the
    values come from 30-digit arithmetic.
    """
    a = np.asarray(a, dtype=float)
    if float(b).is_integer():
        return special.gamma(b) / special.poch(a, b)
    with mpmath.workdps(30):
        vals = [float(mpmath.beta(t, b)) for t in a.ravel()]
    return np.array(vals).reshape(a.shape)


class RadialWeight:
    """Base class; subclasses provide :meth:`profile` and optionally closed forms.

    Tails and moments are memoised per argument. The cache only grows, so a
    weight can be shared freely once populated.
    """

    def __init__(self):
        self._tail_cache = {}
        self._moment_cache = {}

    # -- interface -----------------------------------------------------
    def profile(self, r):
        raise NotImplementedError

    def _tail_exact(self, rho):
        """Closed-form tail for an array of radii, or ``None``."""
        return None

    def _moments_exact(self, x):
        """Closed-form moments for an array of exponents, or ``None``."""
        return None

    def descriptor(self):
        raise NotImplementedError

    # -- tails ---------------------------------------------------------
    def __call__(self, r):
        return self.profile(r)

    def tail(self, rho):
        """``int_rho^1 w(t) dt`` for a scalar or array ``rho`` in [0, 1)."""
        rho = _check_rho(rho)
        scalar = rho.ndim == 0
        flat = np.atleast_1d(rho)
        out = np.empty(flat.shape)
        exact = self._tail_exact(flat)
        if exact is not None:
            out[:] = exact
        else:
            for i, r in enumerate(flat):
                key = float(r)
                val = self._tail_cache.get(key)
                if val is None:
                    val = float(integrate_to_one(self.profile, key, rtol=TAIL_RTOL))
                    self._tail_cache[key] = val
                out[i] = val
        return float(out[0]) if scalar else out.reshape(rho.shape)

    def tail_by_quadrature(self, rho):
        """Tail from the profile alone, ignoring any closed form."""
        rho = float(_check_rho(rho))
        return float(integrate_to_one(self.profile, rho, rtol=TAIL_RTOL))

    # -- moments -------------------------------------------------------
    def moment(self, x):
        """``int_0^1 w(s) s**x ds`` for a scalar or array of ``x >= 0``."""
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            raise ValueError(f"moment exponent must be nonnegative, got {x}")
        scalar = x.ndim == 0
        flat = np.atleast_1d(x)
        exact = self._moments_exact(flat)
        if exact is not None:
            out = np.asarray(exact, dtype=float)
        else:
            missing = sorted({float(v) for v in flat if float(v) not in self._moment_cache})
            if missing:
                vals = self._moments_by_quadrature(np.array(missing))
                self._moment_cache.update(zip(missing, vals))
            out = np.array([self._moment_cache[float(v)] for v in flat])
        return float(out[0]) if scalar else out.reshape(x.shape)

    def _moments_by_quadrature(self, x):
        def integrand(s):
            return self.profile(s)[:, None] * s[:, None] ** x[None, :]

        return np.atleast_1d(integrate_to_one(integrand, 0.0, rtol=MOMENT_RTOL))

    def odd_moments(self, n):
        """The ladder ``moment(2k + 1)`` for ``k = 0..n``."""
        return self.moment(2.0 * np.arange(n + 1) + 1.0)

    def norm_constants(self, n):
        """Squared norms ``2 * moment(2k + 1)`` of the monomials ``z**k``."""
        return 2.0 * self.odd_moments(n)

    def __repr__(self):
        return f"<{type(self).__name__} {self.descriptor()}>"


class Standard(RadialWeight):
    """``(alpha + 1) (1 - r**2)**alpha``; ``alpha = 0`` is the constant weight."""

    def __init__(self, alpha=0.0):
        if alpha <= -1:
            raise ValueError("standard weights need alpha > -1")
        super().__init__()
        self.alpha = float(alpha)

    def profile(self, r):
        r = np.asarray(r, dtype=float)
        return (self.alpha + 1.0) * (1.0 - r * r) ** self.alpha

    def _tail_exact(self, rho):
        a = self.alpha
        if a == 0.0:
            return 1.0 - rho
        if a == 1.0:
            return 2.0 / 3.0 * (1.0 - rho) ** 2 * (2.0 + rho)
        # s = t**2 turns the tail into an incomplete beta integral
        return 0.5 * (a + 1.0) * special.beta(0.5, a + 1.0) * special.betaincc(0.5, a + 1.0, rho * rho)

    def _moments_exact(self, x):
        a = self.alpha
        return 0.5 * (a + 1.0) * _beta(0.5 * (x + 1.0), a + 1.0)

    def descriptor(self):
        return f"kind=standard alpha={self.alpha!r}"


def constant():
    """The weight identically equal to one."""
    return Standard(0.0)


class Power(RadialWeight):
    """``(alpha + 1) (1 - r)**alpha``, with tail ``(1 - rho)**(alpha + 1)``."""

    def __init__(self, alpha):
        if alpha <= -1:
            raise ValueError("power weights need alpha > -1")
        super().__init__()
        self.alpha = float(alpha)

    def profile(self, r):
        r = np.asarray(r, dtype=float)
        return (self.alpha + 1.0) * (1.0 - r) ** self.alpha

    def _tail_exact(self, rho):
        return (1.0 - rho) ** (self.alpha + 1.0)

    def _moments_exact(self, x):
        a = self.alpha
        return (a + 1.0) * _beta(x + 1.0, a + 1.0)

    def descriptor(self):
        return f"kind=power alpha={self.alpha!r}"


class WDerived(RadialWeight):
    """The weight ``W_{x,w}`` built from a base weight.

    ``W = (x-1) T**x (1-r)**(x-2) + x w T**(x-1) (1-r)**(x-1)`` with ``T`` the
    base tail. Differentiating ``-T**x (1-r)**(x-1)`` gives exactly this, so
    the tail is stored in closed form. Moments use integration by parts,
    ``W_m = m int_0^1 tail(s) s**(m-1) ds``, which avoids the
    ``(1-r)**(x-2)`` singularity of the profile when ``x < 2``.
    """

    def __init__(self, x, base):
        if x < 1:
            raise ValueError(f"W_(x, w) needs x >= 1, got {x}")
        super().__init__()
        self.x = float(x)
        self.base = base

    def profile(self, r):
        r = np.asarray(r, dtype=float)
        x = self.x
        t = self.base.tail(r)
        w = self.base.profile(r)
        out = x * w * t ** (x - 1.0) * (1.0 - r) ** (x - 1.0)
        if x != 1.0:
            out = out + (x - 1.0) * t ** x * (1.0 - r) ** (x - 2.0)
        return out

    def _tail_exact(self, rho):
        return self.base.tail(rho) ** self.x * (1.0 - rho) ** (self.x - 1.0)

    def _moments_by_quadrature(self, m):
        out = np.empty(len(m))
        zero = m == 0
        out[zero] = self.tail(0.0)
        pos = m[~zero]
        if len(pos):
            def integrand(s):
                return self.tail(s)[:, None] * s[:, None] ** (pos[None, :] - 1.0)

            out[~zero] = pos * np.atleast_1d(integrate_to_one(integrand, 0.0, rtol=MOMENT_RTOL))
        return out

    def descriptor(self):
        return f"kind=wderived x={self.x!r} base={self.base.descriptor()}"


class OmegaPlus(RadialWeight):
    """``w_+(rho) = int_rho^1 w(s) ds / s``.

    By Fubini the moments are ``base.moment(x) / (x + 1)``, and the tail is
    ``base.tail(rho) - rho * w_+(rho)``.
    """

    def __init__(self, base):
        super().__init__()
        self.base = base

    def profile(self, r):
        r = np.atleast_1d(np.asarray(r, dtype=float))
        out = np.empty(r.shape)
        for i, rho in enumerate(r.flat):
            out.flat[i] = integrate_to_one(lambda s: self.base.profile(s) / s, rho, rtol=TAIL_RTOL) \
                if rho > 0 else np.inf
        return out

    def _tail_exact(self, rho):
        out = np.array(self.base.tail(rho), dtype=float)
        pos = rho > 0
        if np.any(pos):
            out[pos] -= rho[pos] * self.profile(rho[pos])
        return out

    def _moments_exact(self, x):
        return self.base.moment(x) / (x + 1.0)

    def descriptor(self):
        return f"kind=omegaplus base={self.base.descriptor()}"


class Custom(RadialWeight):
    """A weight given by a vectorised callable, or by sampled values.

    Sampled profiles are interpolated linearly between samples.
    """

    def __init__(self, func, label="callable", samples_path=None):
        super().__init__()
        self._func = func
        self.label = label
        self.samples_path = samples_path

    @classmethod
    def from_samples(cls, path):
        with open(path, newline="") as fh:
            rows = [row for row in csv.reader(fh) if row and not row[0].lstrip().startswith("#")]
        if rows and not _is_number(rows[0][0]):
            rows = rows[1:]
        data = np.array([[float(a), float(b)] for a, b in rows])
        order = np.argsort(data[:, 0])
        rho, val = data[order, 0], data[order, 1]
        if np.any(val < 0):
            raise ValueError("weight samples must be nonnegative")

        def func(r):
            return np.interp(r, rho, val)

        return cls(func, label=str(path), samples_path=str(path))

    def profile(self, r):
        return np.asarray(self._func(np.asarray(r, dtype=float)), dtype=float)

    def descriptor(self):
        if self.samples_path is None:
            raise ValueError("callable weights have no text descriptor")
        return f"kind=custom samples={self.samples_path}"


def _is_number(s):
    try:
        float(s)
    except ValueError:
        return False
    return True


def weight_W(x, base):
    """The derived weight ``W_{x,base}``; ``x = 1`` returns ``base`` itself."""
    if x < 1:
        raise ValueError(f"W_(x, w) needs x >= 1, got {x}")
    if x == 1:
        return base
    return WDerived(x, base)


def omega_plus(base):
    return OmegaPlus(base)


def tail(w, rho):
    return w.tail(rho)


def moment(w, x):
    return w.moment(x)


# -- descriptors ---------------------------------------------------------

def parse_weight(text):
    """Parse a weight descriptor.

    Accepts the full form (``kind=standard alpha=1.0``,
    ``kind=wderived x=2.0 base=<descriptor>``, ``kind=custom samples=PATH``)
    and the shorthands ``const``, ``standard:A``, ``power:A``, ``w:X:<base>``
    and ``plus:<base>``.
    """
    text = text.strip()
    if not text.startswith("kind="):
        return _parse_short(text)
    head, _, nested = text.partition(" base=")
    fields = dict(item.split("=", 1) for item in head.split())
    kind = fields.pop("kind")
    if kind == "standard":
        return Standard(float(fields.get("alpha", 0.0)))
    if kind == "const":
        return constant()
    if kind == "power":
        return Power(float(fields["alpha"]))
    if kind == "wderived":
        if not nested:
            raise ValueError("wderived descriptor needs base=")
        return WDerived(float(fields["x"]), parse_weight(nested))
    if kind == "omegaplus":
        return OmegaPlus(parse_weight(nested))
    if kind == "custom":
        return Custom.from_samples(fields["samples"])
    raise ValueError(f"unknown weight kind {kind!r}")


def _parse_short(text):
    if text in ("const", "1", "constant"):
        return constant()
    kind, _, rest = text.partition(":")
    if kind == "standard":
        return Standard(float(rest))
    if kind == "power":
        return Power(float(rest))
    if kind == "w":
        x, _, base = rest.partition(":")
        return weight_W(float(x), parse_weight(base or "const"))
    if kind == "plus":
        return OmegaPlus(parse_weight(rest or "const"))
    if kind == "custom":
        return Custom.from_samples(rest)
    raise ValueError(f"cannot parse weight {text!r}")


# -- doubling ------------------------------------------------------------

@dataclass
class DoublingReport:
    is_upper: bool = False
    upper_constant: float = float("nan")
    is_lower: bool = False
    lower_C: float = float("nan")
    lower_K: float = float("nan")
    growth_exponent_gamma: float = float("nan")
    grid: np.ndarray = field(default_factory=lambda: np.empty(0))
    ratios: np.ndarray = field(default_factory=lambda: np.empty(0))


def default_grid(depth=3, per_decade=20):
    """Radii ``1 - 10**-s`` for ``s`` from 0 up to ``depth`` decades."""
    s = np.linspace(0.0, depth, depth * per_decade + 1)
    return 1.0 - 10.0 ** (-s)


def last_decade(grid):
    """Mask of grid points whose distance to 1 is within a factor 10 of the smallest."""
    dist = 1.0 - np.asarray(grid)
    return dist <= 10.0 * dist.min()


def stable_sup(values, grid, margin):
    """Whether the sup over the last decade stays within ``1 + margin`` of the earlier sup."""
    values = np.asarray(values, dtype=float)
    mask = last_decade(grid)
    if mask.all() or not np.all(np.isfinite(values)):
        return False
    return bool(values[mask].max() <= (1.0 + margin) * values[~mask].max())


def _safe_ratio(num, den):
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.asarray(num, dtype=float) / np.asarray(den, dtype=float)
    return np.where(np.isfinite(out), out, np.inf)


def upper_doubling_report(w, grid=None):
    """Sample ``tail(rho) / tail((1 + rho) / 2)`` and decide upper doubling.

    The verdict is heuristic: the ratio must stay bounded, meaning its max
    over the last decade of the grid exceeds the earlier max by < 5%.
    """
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    _check_rho(grid)
    if grid.max() < 0.999:
        raise ValueError("upper doubling grids must reach rho >= 0.999")
    ratios = _safe_ratio(w.tail(grid), w.tail(0.5 * (1.0 + grid)))
    report = DoublingReport(grid=grid, ratios=ratios)
    report.upper_constant = float(ratios.max())
    report.is_upper = stable_sup(ratios, grid, 0.05)
    if not report.is_upper:
        logger.info("weight %r looks not upper doubling (max ratio %.3g)", w, report.upper_constant)
    return report


def lower_doubling_report(w, K_candidates=(2.0, 4.0, 8.0), grid=None):
    """Best ``(K, C)`` with ``tail(rho) >= C tail(1 - (1 - rho)/K)`` on the grid."""
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    _check_rho(grid)
    report = DoublingReport(grid=grid)
    best_C, best_K = -np.inf, float("nan")
    for K in K_candidates:
        if K <= 1:
            raise ValueError(f"K must exceed 1, got {K}")
        ratios = _safe_ratio(w.tail(grid), w.tail(1.0 - (1.0 - grid) / K))
        ratios = np.where(np.isnan(ratios), 0.0, ratios)
        C = float(ratios.min())
        if C > best_C:
            best_C, best_K = C, float(K)
            report.ratios = ratios
    report.lower_C, report.lower_K = best_C, best_K
    report.is_lower = bool(best_C > 1.0 + 1e-3)
    return report


GAMMA_LADDER = np.arange(1, 65) * 0.25


def growth_exponent(w, grid=None, slack=1.05):
    """Smallest ladder ``gamma`` making ``tail(rho) / (1 - rho)**gamma`` almost increasing."""
    grid = np.sort(default_grid() if grid is None else np.asarray(grid, dtype=float))
    t = w.tail(grid)
    for gamma in GAMMA_LADDER:
        h = t / (1.0 - grid) ** gamma
        running = np.maximum.accumulate(h)
        if np.all(running <= slack * h):
            return float(gamma)
    raise WeightClassificationError(
        "no growth exponent up to 16 found; the weight is probably not upper doubling")


def classify(w, grid=None):
    """Full doubling report for ``w``."""
    up = upper_doubling_report(w, grid)
    low = lower_doubling_report(w, grid=grid)
    up.is_lower, up.lower_C, up.lower_K = low.is_lower, low.lower_C, low.lower_K
    if up.is_upper:
        up.growth_exponent_gamma = growth_exponent(w, grid)
    return up
