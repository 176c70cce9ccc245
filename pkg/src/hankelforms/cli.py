"""Scenario runner: ``verify <suite>`` runs a verification suite and writes
CSV/JSON artifacts, ``compute <op>`` evaluates a single quantity.

Configuration files are INI-style::

    [weights]
    omega = standard:0
    nu = power:1

    [run]
    weight = @omega
    p = 2
    q = 2
    trunc = 16,32,64
    seed = 0

    [corpus]
    first = path/to/measure.txt

Values starting with ``@`` refer to entries of ``[weights]``. A ``[corpus]``
section replaces the built-in symbol corpus; an empty one is an error.
"""
import argparse
import configparser
import csv
import hashlib
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .analytic import (TaylorSeries, binomial_series, dilate, kernel, parse_series, write_csv)
from .hankelnorm import (HankelFormSpec, PreconditionError, default_corpus, dual_norm,
                         escaping_atoms, form_norm_22, form_norm_pq, hankel_measure_detector,
                         standard_criterion, theorem1_ratio_experiment, theorem2_ratio_experiment)
from .measures import ComplexMeasure, dilated_projection_residual, load, project
from .norms import (band, bergman_norm, bfrac_condition, bloch_norm, bmoa_infty_norm,
                    d_omega_bmoa_norm, frac_bloch_sup, garsia_bmo, inner_product,
                    kernel_norm_comparison, pairing_omega_omega)
from .operators import D_lower, D_upper, D_upper_via_plus, frac_R
from .weights import Power, Standard, classify, constant, omega_plus, parse_weight, weight_W

logger = logging.getLogger("hankelforms")

SUITES = ("identities", "duality", "kernel-norms", "theorem1", "theorem2",
          "hankel-measure", "standard-criterion")


class ConfigError(ValueError):
    pass


# -- configuration ---------------------------------------------------------------

@dataclass
class ScenarioConfig:
    weights: dict = field(default_factory=dict)
    run: dict = field(default_factory=dict)
    corpus_paths: list = None
    source: str = ""
    text: str = ""

    def weight(self, key, default):
        raw = self.run.get(key)
        if raw is None:
            return parse_weight(default) if isinstance(default, str) else default
        return self._resolve(raw, key)

    def _resolve(self, raw, key):
        if raw.startswith("@"):
            name = raw[1:]
            if name not in self.weights:
                raise ConfigError(self._where("run", key) + f"unknown weight reference {raw!r}")
            return self.weights[name]
        try:
            return parse_weight(raw)
        except ValueError as exc:
            raise ConfigError(self._where("run", key) + str(exc)) from None

    def number(self, key, default, kind=float):
        raw = self.run.get(key)
        if raw is None:
            return default
        try:
            return kind(raw)
        except ValueError:
            raise ConfigError(self._where("run", key) + f"{key} = {raw!r} is not a valid number") from None

    def ladder(self, default):
        raw = self.run.get("trunc")
        if raw is None:
            return tuple(default)
        try:
            out = tuple(int(t) for t in raw.split(","))
        except ValueError:
            raise ConfigError(self._where("run", "trunc") + f"bad truncation ladder {raw!r}") from None
        if not out or min(out) < 1:
            raise ConfigError(self._where("run", "trunc") + "truncations must be positive")
        return out

    def corpus(self, omega):
        if self.corpus_paths is None:
            return default_corpus(omega)
        return [load(path) for _, path in self.corpus_paths]

    def digest(self):
        payload = json.dumps({"weights": {k: v.descriptor() for k, v in self.weights.items()},
                              "run": self.run, "corpus": self.corpus_paths}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def _where(self, section, key):
        for lineno, line in enumerate(self.text.splitlines(), 1):
            if line.split("=", 1)[0].strip() == key:
                return f"{self.source}:{lineno}: "
        return f"{self.source}: [{section}] "


def load_config(path=None, overrides=None):
    cfg = ScenarioConfig(source=path or "<defaults>")
    if path is not None:
        try:
            with open(path) as fh:
                cfg.text = fh.read()
        except OSError as exc:
            raise ConfigError(f"{path}: {exc.strerror}") from None
        parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
        try:
            parser.read_string(cfg.text, source=path)
        except configparser.Error as exc:
            raise ConfigError(str(exc)) from None
        unknown = set(parser.sections()) - {"weights", "run", "corpus"}
        if unknown:
            raise ConfigError(f"{path}: unknown section(s) {sorted(unknown)}")
        if parser.has_section("weights"):
            for key, raw in parser.items("weights"):
                try:
                    cfg.weights[key] = parse_weight(raw)
                except ValueError as exc:
                    raise ConfigError(cfg._where("weights", key) + str(exc)) from None
        if parser.has_section("run"):
            cfg.run = dict(parser.items("run"))
        if parser.has_section("corpus"):
            base = os.path.dirname(os.path.abspath(path))
            cfg.corpus_paths = []
            for key, raw in parser.items("corpus"):
                full = raw if os.path.isabs(raw) else os.path.join(base, raw)
                if not os.path.exists(full):
                    raise ConfigError(cfg._where("corpus", key) + f"measure file {raw!r} does not exist")
                cfg.corpus_paths.append((key, full))
    for key, value in (overrides or {}).items():
        if value is not None:
            cfg.run[key] = str(value)
    return cfg


# -- suites ----------------------------------------------------------------------

@dataclass
class SuiteResult:
    name: str
    rows: list
    verdicts: dict
    summary: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.verdicts.values())


def _relerr(a, b):
    a, b = np.asarray(a), np.asarray(b)
    scale = np.where(np.abs(b) > 0, np.abs(b), 1.0)
    return float(np.max(np.abs(a - b) / scale))


def identity_weights(cfg):
    if cfg.weights:
        return list(cfg.weights.values())
    return [constant(), Standard(0.5), Standard(1.0), weight_W(2.0, constant())]


def suite_identities(cfg):
    """Coefficient identities of the multipliers, kernels and projections."""
    N = int(cfg.number("n", 256, int))
    tol = cfg.number("tol", 1e-13)
    rng = np.random.default_rng(cfg.number("seed", 0, int))
    ws = identity_weights(cfg)
    f = TaylorSeries(rng.standard_normal(N + 1) + 1j * rng.standard_normal(N + 1))
    a = 0.6 * np.exp(0.3j)
    mu = ComplexMeasure(((0.4, 1.0), (-0.5j, 0.5 - 0.25j)))
    rows = []

    def add(check, label, err):
        rows.append({"check": check, "weights": label, "rel_error": err, "passed": err <= tol})

    for i, w in enumerate(ws):
        add("D^w = R^(1,w+)", w.descriptor(), _relerr(D_upper_via_plus(w, f).coeffs, D_upper(w, f).coeffs))
        add("D_w D^w = I", w.descriptor(), _relerr(D_lower(w, D_upper(w, f)).coeffs, f.coeffs))
        for j, v in enumerate(ws):
            if i == j:
                continue
            label = f"{w.descriptor()} | {v.descriptor()}"
            add("R^(v,w) R^(w,v) = I", label, _relerr(frac_R(v, w, frac_R(w, v, f)).coeffs, f.coeffs))
            add("R^(w,v) B^w_a = B^v_a", label,
                _relerr(frac_R(w, v, kernel(w, a, N)).coeffs, kernel(v, a, N).coeffs))
            add("R^(w,v) P_w = P_v", label,
                _relerr(frac_R(w, v, project(w, mu, True, N)).coeffs, project(v, mu, True, N).coeffs))
            for k, eta in enumerate(ws):
                if k in (i, j):
                    continue
                add("R^(w,v) R^(v,e) = R^(w,e)", f"{label} | {eta.descriptor()}",
                    _relerr(frac_R(w, v, frac_R(v, eta, f)).coeffs, frac_R(w, eta, f).coeffs))
    for beta in (0.0, 0.5, 2.0):
        ref = binomial_series(2.0 + beta, 50) * np.conj(a) ** np.arange(51)
        err = _relerr(kernel(Standard(beta), a, 50).coeffs, ref)
        rows.append({"check": "standard kernel closed form", "weights": f"beta={beta}",
                     "rel_error": err, "passed": err <= 1e-12})
    grid = np.linspace(0.0, 0.99, 50)
    for x in (1.25, 2.0, 3.0):
        for base in (constant(), Standard(1.0)):
            W = weight_W(x, base)
            exact = base.tail(grid) ** x * (1.0 - grid) ** (x - 1.0)
            err = _relerr([W.tail_by_quadrature(r) for r in grid], exact)
            rows.append({"check": "W tail", "weights": W.descriptor(), "rel_error": err,
                         "passed": err <= 1e-9})
    verdicts = {}
    for r in rows:
        verdicts[r["check"]] = verdicts.get(r["check"], True) and bool(r["passed"])
    worst = max(r["rel_error"] for r in rows)
    return SuiteResult("identities", rows, verdicts, {"N": N, "max-rel-error": worst, "checks": len(rows)})


def random_polynomial(rng, degree):
    return TaylorSeries((rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1))
                        / np.sqrt(np.arange(1, degree + 2)))


def suite_duality(cfg):
    """Reproducing property, the A^2 pairing, and the dilated-projection lemma."""
    rng = np.random.default_rng(cfg.number("seed", 0, int))
    rows, verdicts = [], {}
    ok = True
    for w in (constant(), Standard(1.0)):
        for _ in range(20):
            f = random_polynomial(rng, int(rng.integers(1, 21)))
            a = 0.9 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            B = kernel(w, a, f.degree + 20)
            err = abs(inner_product(f, B, w) - f(a)) / max(1.0, abs(f(a)))
            ok &= err <= 1e-8
            rows.append({"check": "reproducing", "weight": w.descriptor(), "parameter": abs(a),
                         "value": err, "passed": err <= 1e-8})
    verdicts["reproducing"] = bool(ok)
    ok = True
    w = Standard(1.0)
    for rho in (0.5, 0.9, 0.99):
        f, g = random_polynomial(rng, 12), random_polynomial(rng, 12)
        res = pairing_omega_omega(f, g, w, rho)
        err = abs(res.series - res.quadrature) / abs(res.series)
        ok &= err <= 1e-8
        rows.append({"check": "pairing", "weight": w.descriptor(), "parameter": rho, "value": err,
                     "passed": err <= 1e-8})
    verdicts["pairing"] = bool(ok)
    nu = constant()
    polys = [TaylorSeries([0, 1]), TaylorSeries([1, 2, 0, 1]), random_polynomial(rng, 8)]
    atomic = [mu for mu in default_corpus(nu) if mu.density is None]
    decreasing, small = True, True
    for F in polys:
        for mu in atomic:
            res = [dilated_projection_residual(F, mu, nu, rho) for rho in (0.9, 0.99, 0.999)]
            # a residual already at rounding level for every rho is the exact limit
            exact = max(res) <= 1e-12 * np.sum(np.abs(F.coeffs))
            dec = exact or res[0] > res[1] > res[2]
            decreasing &= dec
            small &= res[2] < 1e-6
            rows.append({"check": "dilated projection", "weight": mu.label, "parameter": F.degree,
                         "value": res[2], "passed": dec and res[2] < 1e-6})
    verdicts["dilated projection decreasing"] = bool(decreasing)
    verdicts["dilated projection below 1e-6"] = bool(small)
    return SuiteResult("duality", rows, verdicts, {})


def polynomial_corpus(seed=0):
    """Twelve non-constant polynomials of varied degree and coefficient decay."""
    rng = np.random.default_rng(seed)
    fixed = [
        [0, 1], [0, 0, 1], [0, 0, 0, 1], TaylorSeries.monomial(6).coeffs, TaylorSeries.monomial(12).coeffs,
        [1, 1], [0, 1, -0.5], [1, 3, 3, 1], [0, 1j, 0, -0.25, 0.1], 0.8 ** np.arange(20),
    ]
    out = [TaylorSeries(c) for c in fixed]
    out += [random_polynomial(rng, 8), random_polynomial(rng, 16)]
    return out


def suite_kernel_norms(cfg):
    """Kernel-norm tail integral bands and the two-weight Bloch characterization."""
    ladder = np.linspace(0.5, 0.99, int(cfg.number("points", 12, int)))
    limit = cfg.number("band", 4.0)
    rows, verdicts = [], {}
    for omega, nu, p in ((constant(), constant(), 2.0), (Standard(1.0), constant(), 2.0),
                         (constant(), constant(), 1.0)):
        table = kernel_norm_comparison(omega, nu, p, ladder)
        b = band(r["ratio"] for r in table)
        label = f"{omega.descriptor()} | {nu.descriptor()} | p={p}"
        verdicts[f"kernel band {label}"] = b <= limit
        for r in table:
            rows.append({"table": "kernel-norm", "case": label, **{k: float(v) for k, v in r.items()}})
    polys = polynomial_corpus(cfg.number("seed", 0, int))
    omega = constant()
    for nu in (Power(1.0), weight_W(2.0, constant())):
        cond = bfrac_condition(omega, nu)
        label = f"{omega.descriptor()} | {nu.descriptor()}"
        ratios = [frac_bloch_sup(f, omega, nu) / bloch_norm(f) for f in polys]
        b = band(ratios)
        verdicts[f"condition {label}"] = bool(cond.holds)
        verdicts[f"bloch band {label}"] = b <= 10.0
        for i, r in enumerate(ratios):
            rows.append({"table": "frac-bloch", "case": label, "parameter": i, "ratio": float(r)})
    same = bfrac_condition(omega, omega)
    verdicts["condition fails for w = v"] = not same.holds
    return SuiteResult("kernel-norms", rows, verdicts, {})


DEFAULT_LADDER = {"I": (16, 32), "II": (16, 32, 64), "III": (32, 64)}


def _ascent_options(cfg):
    return {"restarts": int(cfg.number("restarts", 8, int)), "steps": int(cfg.number("steps", 200, int))}


def _symbols(cfg, omega):
    corpus = cfg.corpus(omega)
    if not corpus:
        raise ConfigError("no symbols")
    return corpus


def suite_theorem1(cfg):
    p, q = cfg.number("p", 4.0), cfg.number("q", 4.0)
    case = HankelFormSpec(ComplexMeasure.zero(), constant(), p, q).case
    omega = cfg.weight("weight", "standard:0")
    corpus = _symbols(cfg, omega)
    ladder = cfg.ladder(DEFAULT_LADDER[case])
    common = dict(N_ladder=ladder, seed=int(cfg.number("seed", 0, int)),
                  workers=int(cfg.number("workers", 1, int)), **_ascent_options(cfg))
    variants = ("default", "bloch") if case == "II" else ("default",)
    rows, verdicts, summary = [], {}, {}
    for variant in variants:
        res = theorem1_ratio_experiment(corpus, omega, p, q, variant=variant, **common)
        rows += [{**r, "variant": variant} for r in res.rows]
        verdicts[f"band {variant}"] = res.passed
        summary[variant] = res.summary()
    if case == "II":
        top = max(ladder)
        ratios = [d["dual"] / b["dual"] for d, b in zip(rows, rows[len(rows) // 2:])
                  if d["N"] == top and d["variant"] == "default"]
        summary["dual-equivalence-band"] = band(ratios)
        verdicts["dual equivalence"] = band(ratios) <= 10.0
    if case == "III":
        mu = corpus[1] if len(corpus) > 1 else corpus[0]
        N = max(ladder)
        opts = _ascent_options(cfg)
        one = form_norm_pq(HankelFormSpec(mu, omega, p, q), N, **opts).value
        two = form_norm_pq(HankelFormSpec(mu.scale(2.0), omega, p, q), N, **opts).value
        d1 = dual_norm(HankelFormSpec(mu, omega, p, q), N)
        d2 = dual_norm(HankelFormSpec(mu.scale(2.0), omega, p, q), N)
        summary["scaling"] = {"form": two / one, "dual": d2 / d1}
        verdicts["linear scaling"] = abs(two / one - 2.0) < 1e-6 and abs(d2 / d1 - 2.0) < 1e-9
    return SuiteResult("theorem1", rows, verdicts, summary)


def suite_theorem2(cfg):
    p, q = cfg.number("p", 2.0), cfg.number("q", 2.0)
    omega = cfg.weight("weight", "standard:0")
    corpus = _symbols(cfg, omega)
    ladder = cfg.ladder((16, 32, 64))
    res = theorem2_ratio_experiment(corpus, omega, p, q, N_ladder=ladder,
                                    seed=int(cfg.number("seed", 0, int)),
                                    workers=int(cfg.number("workers", 1, int)),
                                    **{k: v for k, v in _ascent_options(cfg).items()})
    rows = list(res.rows)
    verdicts = {"band": res.passed}
    # the divergent instance: its dual must keep growing along the ladder
    esc = escaping_atoms(p)
    spec = HankelFormSpec(esc, omega, p, q / (q - 1.0))
    duals = []
    for N in (64, 256, 1024):
        d = float(dual_norm(spec, N, "bloch" if spec.case == "II" else "default"))
        duals.append(d)
        rows.append({"symbol": esc.label, "N": N, "case": spec.case, "dual": d})
    verdicts["divergent dual grows"] = all(b > 1.2 * a for a, b in zip(duals, duals[1:]))
    return SuiteResult("theorem2", rows, verdicts, res.summary())


def suite_hankel_measure(cfg):
    omega = cfg.weight("weight", "standard:0")
    p = cfg.number("p", 2.0)
    beta = cfg.number("beta", 1.0)
    corpus = _symbols(cfg, omega)
    rows = []
    finite = True
    for mu in corpus:
        prof = hankel_measure_detector(mu, omega, p, beta)
        finite &= not prof.divergent
        rows.append({"symbol": mu.label, "value": prof.value, "divergent": prof.divergent})
    esc = escaping_atoms(p)
    prof = hankel_measure_detector(esc, omega, p, beta)
    rows.append({"symbol": esc.label, "value": prof.value, "divergent": prof.divergent})
    return SuiteResult("hankel-measure", rows,
                       {"finite on corpus": bool(finite), "escaping flagged": bool(prof.divergent)})


def suite_standard_criterion(cfg):
    alpha = cfg.number("alpha", 0.0)
    ts = (0.5, 1.0, 2.0)
    corpus = _symbols(cfg, Standard(alpha)) + [escaping_atoms(2.0)]
    rows, same, flagged = [], True, False
    for mu in corpus:
        verdicts = []
        for t in ts:
            prof = standard_criterion(mu, alpha, t)
            verdicts.append(prof.divergent)
            rows.append({"symbol": mu.label, "t": t, "value": prof.value, "divergent": prof.divergent})
        same &= len(set(verdicts)) == 1
        flagged |= all(verdicts)
    return SuiteResult("standard-criterion", rows, {"t-invariance": bool(same), "escaping flagged": bool(flagged)})


SUITE_FUNCS = {
    "identities": suite_identities, "duality": suite_duality, "kernel-norms": suite_kernel_norms,
    "theorem1": suite_theorem1, "theorem2": suite_theorem2, "hankel-measure": suite_hankel_measure,
    "standard-criterion": suite_standard_criterion,
}


def run_suite(name, cfg):
    return SUITE_FUNCS[name](cfg)


# -- artifacts -------------------------------------------------------------------

def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def write_artifacts(result, cfg, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    header = []
    for r in result.rows:
        header += [k for k in r if k not in header]
    csv_path = os.path.join(out_dir, f"{result.name}.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# hankelforms {__version__} config {cfg.digest()}\n")
        w = csv.DictWriter(fh, fieldnames=header)
        w.writeheader()
        for r in result.rows:
            w.writerow({k: repr(float(v)) if isinstance(v, float) else v for k, v in r.items()})
    doc = {"suite": result.name, "version": __version__, "config-hash": cfg.digest(),
           "seed": int(cfg.number("seed", 0, int)), "passed": result.passed,
           "verdicts": result.verdicts, "summary": result.summary}
    json_path = os.path.join(out_dir, f"{result.name}.json")
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(_plain(doc), fh, sort_keys=True, indent=2)
        fh.write("\n")
    return csv_path, json_path


# -- compute ---------------------------------------------------------------------

def parse_measure(text, omega=None):
    """A measure file, ``delta:z`` / ``delta:z:c``, ``escaping`` or ``corpus:i``."""
    if os.path.exists(text):
        return load(text)
    head, _, rest = text.partition(":")
    if head == "delta":
        parts = rest.split(":")
        c = complex(parts[1]) if len(parts) > 1 else 1.0
        return ComplexMeasure.delta(complex(parts[0]), c)
    if head == "escaping":
        return escaping_atoms()
    if head == "corpus":
        return default_corpus(omega or constant())[int(rest)]
    raise ValueError(f"cannot parse measure {text!r}")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ConfigError(f"compute {args.op} needs " + ", ".join("--" + n for n in missing))


def compute(args):
    """Return ``(value, provenance)``; may write a CSV when ``--out`` is given."""
    op = args.op
    w = parse_weight(args.weight) if args.weight else constant()
    N = args.trunc
    if op == "tail":
        _need(args, "rho")
        return w.tail(args.rho), {"weight": w.descriptor(), "rtol": 1e-10}
    if op == "moment":
        _need(args, "x")
        return w.moment(args.x), {"weight": w.descriptor(), "rtol": 1e-13}
    if op == "classify":
        rep = classify(w)
        return (f"upper={rep.is_upper} lower={rep.is_lower} gamma={rep.growth_exponent_gamma}",
                {"weight": w.descriptor(), "upper-constant": rep.upper_constant})
    if op in ("bloch", "garsia", "bergman", "bmoa", "d-omega-bmoa"):
        _need(args, "f")
        f = parse_series(args.f)
        if op == "bloch":
            return bloch_norm(f), {"degree": f.degree}
        if op == "garsia":
            return garsia_bmo(f), {"degree": f.degree}
        if op == "bmoa":
            return bmoa_infty_norm(f, w), {"degree": f.degree, "weight": w.descriptor()}
        if op == "d-omega-bmoa":
            return d_omega_bmoa_norm(f, w), {"degree": f.degree, "weight": w.descriptor()}
        p = args.p or 2.0
        val, err = bergman_norm(f, w, p, return_error=True)
        return val, {"degree": f.degree, "weight": w.descriptor(), "p": p, "error": err}
    if op == "kernel":
        _need(args, "a")
        B = kernel(w, complex(args.a), N or 256)
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            write_csv(B, os.path.join(args.out, "kernel.csv"))
        return B(complex(args.a)), {"truncation": B.degree, "weight": w.descriptor(), "shown": "B_a(a)"}
    if op == "dilate":
        _need(args, "f", "rho")
        return dilate(parse_series(args.f), args.rho).coeffs.tolist(), {}
    if op in ("form22", "form", "dual", "project", "detector"):
        _need(args, "measure")
        mu = parse_measure(args.measure, w)
        p, q = args.p or 2.0, args.q or 2.0
        N = N or 64
        if op == "form22":
            est = form_norm_22(HankelFormSpec(mu, w), N)
            return est.value, {"truncation": N, "kind": est.kind, "iterations": est.iterations}
        if op == "form":
            spec = HankelFormSpec(mu, w, p, q)
            est = form_norm_22(spec, N) if p == q == 2 else form_norm_pq(spec, N, seed=args.seed or 0)
            return est.value, {"truncation": N, "kind": est.kind, "p": p, "q": q}
        if op == "dual":
            spec = HankelFormSpec(mu, w, p, q)
            return dual_norm(spec, N), {"truncation": N, "case": spec.case, "p": p, "q": q}
        if op == "project":
            P = project(w, mu, True, N)
            if args.out:
                os.makedirs(args.out, exist_ok=True)
                write_csv(P, os.path.join(args.out, "projection.csv"))
            return P.coeffs[:min(8, N + 1)].tolist(), {"truncation": N, "weight": w.descriptor()}
        prof = hankel_measure_detector(mu, w, p, args.beta if args.beta is not None else 1.0)
        return prof.value, {"divergent": prof.divergent, "p": p}
    raise ConfigError(f"unknown op {op!r}")


COMPUTE_OPS = ("tail", "moment", "classify", "bloch", "garsia", "bergman", "bmoa", "d-omega-bmoa",
               "kernel", "dilate", "form22", "form", "dual", "project", "detector")


def _format(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        return repr(complex(value))
    return str(value)


# -- entry point -----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI scenario file")
    common.add_argument("--out", help="output directory for CSV/JSON artifacts")
    common.add_argument("--seed", type=int, help="seed for random restarts and test inputs")
    common.add_argument("--trunc", help="truncation degree (compute) or comma-separated ladder (verify)")
    common.add_argument("--p", type=float)
    common.add_argument("--q", type=float)
    common.add_argument("--weight", help="weight descriptor, e.g. const, standard:1, w:2:const")
    common.add_argument("--workers", type=int, help="processes for corpus members")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="hankelforms", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"hankelforms {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    c = sub.add_parser("compute", parents=[common], help="evaluate one quantity")
    c.add_argument("op", choices=COMPUTE_OPS)
    c.add_argument("--f", help="series: zN, comma-separated coefficients or a CSV path")
    c.add_argument("--rho", type=float)
    c.add_argument("--x", type=float)
    c.add_argument("--a", help="kernel point (complex literal)")
    c.add_argument("--measure", help="measure file, delta:z[:c], escaping or corpus:i")
    c.add_argument("--beta", type=float)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "compute":
            if args.trunc is not None:
                args.trunc = int(args.trunc)
            value, prov = compute(args)
            print(_format(value))
            print("# " + " ".join(f"{k}={_format(v)}" for k, v in sorted(prov.items())))
            return 0
        cfg = load_config(args.config, {"p": args.p, "q": args.q, "trunc": args.trunc,
                                        "seed": args.seed, "workers": args.workers,
                                        **({"weight": args.weight} if args.weight else {})})
        result = run_suite(args.suite, cfg)
        out = args.out or "hankelforms-out"
        csv_path, json_path = write_artifacts(result, cfg, out)
        for name, ok in sorted(result.verdicts.items()):
            print(f"{'PASS' if ok else 'FAIL'}  {args.suite}: {name}")
        print(f"artifacts: {csv_path} {json_path}")
        return 0 if result.passed else 1
    except (ConfigError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
