"""Norms of Hankel forms and operators, their dual-space counterparts, and
the Hankel-measure tests.

Only the ``(2, 2)`` form norm is computed exactly (largest singular value of
the scaled moment matrix). For other exponents :func:`form_norm_pq` returns a
lower bound found by alternating gradient ascent; boundedness statements are
then checked as bands of ``estimate / dual_norm`` across a symbol corpus.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .analytic import (TaylorSeries, as_series, evaluate, evaluate_on_circles, multiply,
                       power)
from .measures import ComplexMeasure, moments as measure_moments, project
from .norms import (QuadratureSpec, bergman_norm, bloch_norm, d_omega_bmoa_norm,
                    DEFAULT_QUAD)
from .operators import HankelMatrixView, hankel_matvec
from .weights import growth_exponent, stable_sup, weight_W

logger = logging.getLogger(__name__)


class ConvergenceError(RuntimeError):
    def __init__(self, message, last, previous):
        super().__init__(f"{message}: last iterates {previous!r}, {last!r}")
        self.last, self.previous = last, previous


class PreconditionError(ValueError):
    pass


class UnsupportedInputError(ValueError):
    pass


@dataclass(frozen=True)
class HankelFormSpec:
    """A Hankel form ``H_mu`` on ``A^p_omega x A^q_omega``.

    ``r`` solves ``1/r = 1/p + 1/q``; the case tag is ``"I"`` for ``r > 1``,
    ``"II"`` for ``r = 1`` and ``"III"`` for ``r < 1``.
    """

    mu: ComplexMeasure
    omega: object
    p: float = 2.0
    q: float = 2.0

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0:
            raise ValueError("exponents must be positive")

    @property
    def r(self):
        return self.p * self.q / (self.p + self.q)

    @property
    def case(self):
        if math.isclose(self.r, 1.0, rel_tol=1e-12, abs_tol=0.0):
            return "II"
        return "I" if self.r > 1 else "III"

    @property
    def r_conj(self):
        if self.case != "I":
            raise ValueError("the conjugate exponent exists only for r > 1")
        return self.r / (self.r - 1.0)

    def with_measure(self, mu):
        return HankelFormSpec(mu, self.omega, self.p, self.q)


@dataclass
class NormEstimate:
    value: float
    kind: str  # "band" (exact up to tolerance) or "lower-bound"
    truncation: int
    iterations: int = 0
    history: list = field(default_factory=list)

    def __float__(self):
        return float(self.value)


# -- (2, 2): spectral norm ---------------------------------------------------

def form_norm_22(spec, N, tol=1e-8, max_iter=20000, seed=0):
    """Largest singular value of ``A_mn = m_{m+n} / sqrt(sigma_m sigma_n)``, ``m, n < N``.

    Power iteration on ``A^H A`` with FFT matrix-vector products; stops when
    successive Rayleigh quotients agree to ``tol`` (relative).
    """
    if not (spec.p == 2 and spec.q == 2):
        raise ValueError("form_norm_22 needs p = q = 2")
    A = HankelMatrixView.for_measure(spec.mu, spec.omega, N)
    if not np.any(A.moments):
        return NormEstimate(0.0, "band", N)
    value, _, history = _top_singular(A, tol, max_iter, seed)
    return NormEstimate(value, "band", N, len(history), history)


def _top_singular(A, tol, max_iter, seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(A.n) + 1j * rng.standard_normal(A.n)
    x /= np.linalg.norm(x)
    history = []
    lam_prev = None
    for _ in range(max_iter):
        y = A.matvec(x)
        lam = float(np.vdot(y, y).real)
        history.append(math.sqrt(lam))
        if lam == 0.0:
            return 0.0, x, history
        z = A.rmatvec(y)
        x = z / np.linalg.norm(z)
        if lam_prev is not None and abs(lam - lam_prev) <= tol * lam:
            return math.sqrt(lam), x, history
        lam_prev = lam
    raise ConvergenceError("power iteration did not converge", history[-1], history[-2])


def top_singular_pair(spec, N, tol=1e-10, seed=0):
    """Coefficients ``(f, g)`` of an extremal pair for the ``(2, 2)`` form."""
    A = HankelMatrixView.for_measure(spec.mu, spec.omega, N)
    if not np.any(A.moments):
        e = np.zeros(N, dtype=complex)
        e[0] = 1.0
        return e, e
    _, v, _ = _top_singular(A, tol, 20000, seed)
    u = np.conj(A.matvec(v))
    u /= np.linalg.norm(u)
    root = np.sqrt(spec.omega.norm_constants(N - 1))
    return u / root, v / root


# -- general exponents: ascent -------------------------------------------------

class _GridNorm:
    """``int |f|**p dw`` on a fixed polar grid, with its Wirtinger gradient."""

    def __init__(self, w, p, N, quad, radial_nodes):
        self.p = p
        spec = QuadratureSpec(R=radial_nodes, T=quad.T)
        self.t, self.wt = spec.radial_rule(w)
        self.T = 4
        while self.T < 4 * N:
            self.T *= 2
        self.N = N
        k = np.arange(N)
        with np.errstate(under="ignore"):
            self.powers = self.t[:, None] ** k[None, :]

    def value(self, c):
        V = evaluate_on_circles(c, self.t, self.T)
        return float(np.dot(self.wt, np.mean(np.abs(V) ** self.p, axis=1))), V

    def gradient(self, V):
        # d/d conj(c_n) of sum w |V|^p = (p/2) sum_i w_i r_i^n mean_j |V|^(p-2) V e^{-i n theta}
        mag = np.abs(V)
        with np.errstate(divide="ignore", invalid="ignore"):
            G = np.where(mag > 0, mag ** (self.p - 2.0) * V, 0.0)
        F = np.fft.fft(G, axis=1)[:, :self.N] / self.T
        return 0.5 * self.p * np.einsum("i,in,in->n", self.wt, self.powers, F)


def _ascent(objective, x0, steps, step0=0.5):
    """Normalised steepest ascent with backtracking; returns ``(best_val, x)``."""
    x = x0 / np.linalg.norm(x0)
    val, grad = objective(x, True)
    step = step0
    for _ in range(steps):
        gnorm = np.linalg.norm(grad)
        if not np.isfinite(val) or gnorm == 0:
            break
        d = grad / gnorm
        improved = False
        while step > 1e-10:
            cand = x + step * d
            cand /= np.linalg.norm(cand)
            cval = objective(cand, False)
            if cval > val:
                x = cand
                val, grad = objective(x, True)
                step = min(step * 1.5, 1.0)
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return val, x


def _mapped_start(c, p, N):
    """``u**(2/p)`` truncated to degree ``N - 1``, or ``None`` when undefined.

    The map sends the unit sphere of ``A^2_w`` onto that of ``A^p_w``, and
    carries reproducing kernels to the ``A^p`` extremals for point masses.
    """
    if p == 2:
        return None
    s = 2.0 / p
    u = TaylorSeries(c)
    if float(s).is_integer():
        out = u
        for _ in range(int(s) - 1):
            out = multiply(out, u, trunc=N - 1)
        return out.padded(N - 1)
    if abs(u.coeffs[0]) < 1e-12 * np.max(np.abs(u.coeffs)):
        return None
    return power(u, s, N - 1).coeffs.copy()


def form_norm_pq(spec, N, restarts=8, steps=200, seed=0, quad=None, radial_nodes=96,
                 block=10, init=None):
    """Lower bound for ``||H_mu||_{A^p x A^q}`` over polynomials of degree ``< N``.

    Maximises ``log|H(f, g)| - log||f||_p - log||g||_q`` by alternating blocks
    of projected gradient steps in ``f`` and ``g``. Restart 0 starts from the
    ``(2, 2)`` extremal pair, the rest from seeded random coefficients. The
    best pair is rescored with the adaptive norms before being returned.
    """
    quad = DEFAULT_QUAD if quad is None else quad
    m = measure_moments(spec.mu, 2 * (N - 1))
    if not np.any(m):
        return NormEstimate(0.0, "lower-bound", N)
    norm_f = _GridNorm(spec.omega, spec.p, N, quad, radial_nodes)
    norm_g = norm_f if spec.q == spec.p else _GridNorm(spec.omega, spec.q, N, quad, radial_nodes)
    rng = np.random.default_rng(seed)

    def make_objective(other, gridnorm, exponent):
        h = hankel_matvec(m, other)

        def objective(c, want_grad):
            H = np.dot(c, h)
            val_p, V = gridnorm.value(c)
            if H == 0 or val_p == 0:
                return (-np.inf, np.zeros_like(c)) if want_grad else -np.inf
            J = math.log(abs(H)) - math.log(val_p) / exponent
            if not want_grad:
                return J
            grad = np.conj(h) / (2.0 * np.conj(H)) - gridnorm.gradient(V) / (exponent * val_p)
            return J, 2.0 * grad

        return objective

    def full_objective(f, g):
        H = abs(np.dot(f, hankel_matvec(m, g)))
        if H == 0:
            return -np.inf
        return (math.log(H) - math.log(norm_f.value(f)[0]) / spec.p
                - math.log(norm_g.value(g)[0]) / spec.q)

    f0, g0 = init if init is not None else top_singular_pair(HankelFormSpec(spec.mu, spec.omega), N)
    starts = [(f0, g0)]
    mapped = (_mapped_start(f0, spec.p, N), _mapped_start(g0, spec.q, N))
    if restarts > 1 and mapped[0] is not None and mapped[1] is not None:
        starts.append(mapped)
    for _ in range(restarts - len(starts)):
        decay = 0.9 ** np.arange(N)
        f = (rng.standard_normal(N) + 1j * rng.standard_normal(N)) * decay
        g = (rng.standard_normal(N) + 1j * rng.standard_normal(N)) * decay
        starts.append((f, g))

    best = (-np.inf, None, None)
    history = []
    for f, g in starts:
        f, g = f.astype(complex), g.astype(complex)
        done = 0
        while done < steps:
            n = min(block, steps - done)
            _, f = _ascent(make_objective(g, norm_f, spec.p), f, n)
            n2 = min(block, steps - done - n)
            if n2 > 0:
                _, g = _ascent(make_objective(f, norm_g, spec.q), g, n2)
            done += n + n2
        J = full_objective(f, g)
        history.append(math.exp(J) if np.isfinite(J) else 0.0)
        if J > best[0]:
            best = (J, f, g)

    _, f, g = best
    F, G = TaylorSeries(f), TaylorSeries(g)
    H = abs(np.dot(multiply(F, G).coeffs, m[:2 * N - 1]))
    value = H / (bergman_norm(F, spec.omega, spec.p, quad) * bergman_norm(G, spec.omega, spec.q, quad))
    return NormEstimate(float(value), "lower-bound", N, restarts * steps, history)


def form_norm(spec, N, **kwargs):
    """Exact spectral norm for ``p = q = 2``, ascent lower bound otherwise."""
    if spec.p == 2 and spec.q == 2:
        return form_norm_22(spec, N)
    return form_norm_pq(spec, N, **kwargs)


# -- Hankel operators ------------------------------------------------------------

def operator_norm_estimate(mu, omega, p, q, N, restarts=4, steps=120, seed=0, quad=None,
                           radial_nodes=96):
    """``||H_mu^omega||_{A^p -> A^q}`` over polynomials of degree ``< N``.

    Exact (spectral) when ``p = q = 2``; otherwise a lower bound from ascent on
    ``log||H f||_q - log||f||_p``, with ``H f`` truncated at degree ``N - 1``.
    """
    if not 1 < q < math.inf:
        raise ValueError("operator norms are defined here for 1 < q < inf")
    if p == 2 and q == 2:
        return form_norm_22(HankelFormSpec(mu, omega, 2.0, 2.0), N)
    quad = DEFAULT_QUAD if quad is None else quad
    m = measure_moments(mu, 2 * (N - 1))
    if not np.any(m):
        return NormEstimate(0.0, "lower-bound", N)
    sigma = omega.norm_constants(N - 1)
    norm_in = _GridNorm(omega, p, N, quad, radial_nodes)
    norm_out = _GridNorm(omega, q, N, quad, radial_nodes)

    def apply(f):
        return np.conj(hankel_matvec(m, f)) / sigma

    def objective(f, want_grad):
        c = apply(f)
        out_val, Vc = norm_out.value(c)
        in_val, Vf = norm_in.value(f)
        if out_val == 0 or in_val == 0:
            return (-np.inf, np.zeros_like(f)) if want_grad else -np.inf
        J = math.log(out_val) / q - math.log(in_val) / p
        if not want_grad:
            return J
        gamma = norm_out.gradient(Vc)
        # c = conj(M f) / sigma, so d/d conj(f) = conj(M (gamma / sigma))
        g_out = np.conj(hankel_matvec(m, gamma / sigma))
        grad = g_out / (q * out_val) - norm_in.gradient(Vf) / (p * in_val)
        return J, 2.0 * grad

    rng = np.random.default_rng(seed)
    f0, _ = top_singular_pair(HankelFormSpec(mu, omega), N)
    starts = [f0] + [(rng.standard_normal(N) + 1j * rng.standard_normal(N)) * 0.9 ** np.arange(N)
                     for _ in range(restarts - 1)]
    best_J, best_f = -np.inf, None
    history = []
    for f in starts:
        J, f = _ascent(objective, f.astype(complex), steps)
        history.append(math.exp(J) if np.isfinite(J) else 0.0)
        if J > best_J:
            best_J, best_f = J, f
    F = TaylorSeries(best_f)
    value = bergman_norm(TaylorSeries(apply(best_f)), omega, q, quad) / bergman_norm(F, omega, p, quad)
    return NormEstimate(float(value), "lower-bound", N, restarts * steps, history)


# -- dual norms ------------------------------------------------------------------

def dual_norm(spec, N, variant="default", quad=None):
    """Norm of the symbol's projection in the space the form's boundedness requires.

    Case I: ``||P_w(conj mu)||_{A^{r'}_w}``; case II: the ``D_w BMOA(inf, w)``
    norm (``variant="bloch"`` uses the Bloch norm, its equivalent when ``w``
    is doubling from both sides); case III: Bloch norm of ``P_W(conj mu)``
    with ``W = W_{1/r, w}``.
    """
    case = spec.case
    if case == "I":
        P = project(spec.omega, spec.mu, True, N)
        return bergman_norm(P, spec.omega, spec.r_conj, quad)
    if case == "II":
        P = project(spec.omega, spec.mu, True, N)
        if variant == "bloch":
            return bloch_norm(P, quad)
        return d_omega_bmoa_norm(P, spec.omega, quad=quad)
    W = weight_W(1.0 / spec.r, spec.omega)
    return bloch_norm(project(W, spec.mu, True, N), quad)


def default_corpus(omega):
    """Eight test symbols: atoms at several radii and arguments, and
    anti-analytic densities ``conj(h) d omega`` for polynomial ``h``."""
    geometric = TaylorSeries(0.7 ** np.arange(41))
    return [
        ComplexMeasure.delta(0.0, label="delta(0)"),
        ComplexMeasure.delta(0.5, label="delta(0.5)"),
        ComplexMeasure.delta(0.75 * np.exp(1j * np.pi / 4), label="delta(0.75e^{i pi/4})"),
        ComplexMeasure(((0.3, 0.5), (-0.6, -0.5j)), label="atoms(0.3,-0.6)"),
        ComplexMeasure(((0.6j, 1.0), (0.4, 2.0)), label="atoms(0.6i,0.4)"),
        ComplexMeasure.anti_analytic(TaylorSeries([1.0, 1.0]), omega, label="conj(1+z) dw"),
        ComplexMeasure.anti_analytic(TaylorSeries([0, -0.5, 0, 1.0]), omega, label="conj(z^3-z/2) dw"),
        ComplexMeasure.anti_analytic(geometric, omega, label="conj(1/(1-0.7z)) dw"),
    ]


@dataclass
class ExperimentResult:
    rows: list
    min_ratio: float
    max_ratio: float
    verdict: float
    passed: bool
    meta: dict = field(default_factory=dict)

    def summary(self):
        return {
            "min-ratio": self.min_ratio, "max-ratio": self.max_ratio,
            "verdict": self.verdict, "passed": self.passed, **self.meta,
        }


def _map_corpus(func, corpus, workers):
    """Apply ``func`` to every symbol, in parallel when ``workers > 1``.

    Results come back in corpus order, so aggregation is deterministic.
    """
    if workers is None or workers <= 1 or len(corpus) == 1:
        return [func(mu) for mu in corpus]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, corpus))


def _form_rows(mu, omega, p, q, N_ladder, variant, seed, quad, ascent):
    spec = HankelFormSpec(mu, omega, p, q)
    rows = []
    for N in N_ladder:
        if p == q == 2:
            est = form_norm_22(spec, N)
        else:
            est = form_norm_pq(spec, N, seed=seed, quad=quad, **ascent)
        dual = float(dual_norm(spec, N, variant, quad))
        rows.append({
            "symbol": mu.label, "N": N, "case": spec.case, "form": float(est.value),
            "kind": est.kind, "dual": dual,
            "ratio": est.value / dual if dual > 0 else float("nan"),
        })
    return rows


def _operator_rows(mu, omega, p, q, N_ladder, seed, quad, ascent):
    spec = HankelFormSpec(mu, omega, p, q / (q - 1.0))
    rows = []
    for N in N_ladder:
        est = operator_norm_estimate(mu, omega, p, q, N, seed=seed, quad=quad, **ascent)
        dual = float(dual_norm(spec, N, quad=quad))
        rows.append({
            "symbol": mu.label, "N": N, "case": spec.case, "operator": float(est.value),
            "kind": est.kind, "dual": dual,
            "ratio": est.value / dual if dual > 0 else float("nan"),
        })
    return rows


def theorem1_ratio_experiment(corpus, omega, p, q, N_ladder=(16, 32, 48), band_limit=10.0,
                              variant="default", seed=0, quad=None, workers=1, **ascent):
    """Ratios ``form estimate / dual_norm`` per symbol and truncation."""
    if not corpus:
        raise ValueError("no symbols")
    func = partial(_form_rows, omega=omega, p=p, q=q, N_ladder=tuple(N_ladder), variant=variant,
                   seed=seed, quad=quad, ascent=ascent)
    rows = [r for chunk in _map_corpus(func, corpus, workers) for r in chunk]
    return _summarise(rows, N_ladder, band_limit, {"case": HankelFormSpec(corpus[0], omega, p, q).case,
                                                    "p": p, "q": q, "variant": variant})


def theorem2_ratio_experiment(corpus, omega, p, q, N_ladder=(16, 32, 48), band_limit=10.0,
                              seed=0, quad=None, workers=1, **ascent):
    """Ratios ``||H_mu^omega||_{A^p -> A^q} / dual_norm`` for the form on ``A^p x A^{q'}``."""
    if not corpus:
        raise ValueError("no symbols")
    func = partial(_operator_rows, omega=omega, p=p, q=q, N_ladder=tuple(N_ladder),
                   seed=seed, quad=quad, ascent=ascent)
    rows = [r for chunk in _map_corpus(func, corpus, workers) for r in chunk]
    q_dual = q / (q - 1.0)
    return _summarise(rows, N_ladder, band_limit, {"case": HankelFormSpec(corpus[0], omega, p, q_dual).case,
                                                    "p": p, "q": q})


def _summarise(rows, N_ladder, band_limit, meta):
    top = [r["ratio"] for r in rows if r["N"] == max(N_ladder) and np.isfinite(r["ratio"]) and r["ratio"] > 0]
    lo, hi = float(min(top)), float(max(top))
    meta = {**meta, "corpus-size": len({r["symbol"] for r in rows}), "N-ladder": list(N_ladder)}
    return ExperimentResult(rows, lo, hi, hi / lo, bool(hi / lo <= band_limit), meta)


# -- Hankel measures ----------------------------------------------------------------

def default_detector_grid(angles=32, depth=20, per_octave=4):
    """Polar grid with radii ``1 - 2**(-k / per_octave)`` up to ``1 - 2**-depth``."""
    radii = np.concatenate([[0.0], 1.0 - 2.0 ** (-np.arange(1, depth * per_octave + 1) / per_octave)])
    theta = 2.0 * np.pi * np.arange(angles) / angles
    return (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()


@dataclass
class SupProfile:
    value: float
    divergent: bool
    radii: np.ndarray
    running_sup: np.ndarray


def _radial_profile(z, vals, margin=0.10):
    r = np.abs(z)
    radii = np.unique(r)
    per_radius = np.array([vals[r == x].max() for x in radii])
    running = np.maximum.accumulate(per_radius)
    inner = radii < 1.0
    divergent = not stable_sup(running[inner], radii[inner], margin)
    return SupProfile(float(running[-1]), divergent, radii, running)


def hankel_measure_detector(mu, omega, p, beta, z_grid=None, gamma=None):
    """``sup_z |int (1 - conj(z) xi)**(-4-2 beta) d mu| (1-|z|^2)**(2 beta + 4 - 2/p) / tail(|z|)**(2/p)``.

    Finite for Hankel measures of ``A^p_omega``; flagged divergent when the
    running sup keeps growing (by more than 10%) over the last decade of radii.
    """
    if not 0 < p <= 2:
        raise ValueError("the detector applies to 0 < p <= 2")
    gamma = growth_exponent(omega) if gamma is None else gamma
    if not p * (beta + 1.0) + p > gamma + 1.0:
        raise PreconditionError(
            f"beta={beta} too small: need p(beta+1)+p > gamma+1 with gamma={gamma}")
    z = default_detector_grid() if z_grid is None else np.asarray(z_grid, dtype=complex)
    r = np.abs(z)
    s = 4.0 + 2.0 * beta
    vals = np.abs(mu.transform(z, s)) * (1.0 - r * r) ** (s - 2.0 / p) / omega.tail(r) ** (2.0 / p)
    return _radial_profile(z, vals)


def standard_criterion(mu, alpha, t, z_grid=None):
    """``sup_z (1-|z|^2)**t |int (1 - z conj(xi))**(-2-alpha-t) d conj(mu)(xi)|``."""
    if t <= 0 or alpha <= -1:
        raise ValueError("need t > 0 and alpha > -1")
    z = default_detector_grid() if z_grid is None else np.asarray(z_grid, dtype=complex)
    r = np.abs(z)
    vals = np.abs(mu.transform(z, 2.0 + alpha + t)) * (1.0 - r * r) ** t
    return _radial_profile(z, vals)


def escaping_atoms(p=2.0, J=28, growth=0.5, omega_tail_exponent=1.0):
    """Atoms at ``1 - 2**-j`` with masses tuned so the detector grows like ``2**(growth j)``.

    With ``tail(rho) ~ (1 - rho)**e`` the detector at ``z = rho_j`` scales as
    ``c_j (1 - rho_j)**(-2(1 + e)/p)``; masses ``2**(-j (2(1+e)/p) + growth j)``
    keep the total variation finite while the sup escapes. Any finite atom
    set gives a bounded detector, so ``J`` must carry the atoms past the
    outermost detector radius (``1 - 2**-20`` by default).
    """
    k = 2.0 * (1.0 + omega_tail_exponent) / p
    atoms = tuple((1.0 - 2.0 ** -j, 2.0 ** (-j * k + growth * j)) for j in range(1, J + 1))
    return ComplexMeasure(atoms, label=f"escaping-atoms(J={J})")


# -- factorization ---------------------------------------------------------------------

def min_modulus(F, angles=1024, radii=None):
    radii = np.linspace(0.0, 1.0, 65) if radii is None else radii
    V = evaluate_on_circles(as_series(F).coeffs, radii, angles)
    return float(np.abs(V).min()), float(np.abs(V).max())


def factor_zero_free(F, r, p, q, N=None, margin=1e-3):
    """``F = f g`` with ``f = F**(r/p)``, ``g = F**(r/q)`` for ``F`` without zeros.

    Raises :class:`UnsupportedInputError` when a zero is detected on the
    closed disk (relative to ``margin``).
    """
    F = as_series(F)
    if not math.isclose(1.0 / r, 1.0 / p + 1.0 / q, rel_tol=1e-12):
        raise ValueError("need 1/r = 1/p + 1/q")
    lo, hi = min_modulus(F)
    if lo <= margin * hi:
        raise UnsupportedInputError(
            f"F vanishes (or nearly) in the closed disk: min|F| = {lo:.3g}; only zero-free F is supported")
    N = F.degree if N is None else N
    return power(F, r / p, N), power(F, r / q, N)
