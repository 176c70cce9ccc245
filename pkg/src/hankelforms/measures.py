"""Complex measures on the disk: finite atoms plus anti-analytic densities.

A :class:`ComplexMeasure` is ``sum_j c_j delta_{z_j} + conj(h) dnu`` with
``h`` a polynomial and ``nu`` a radial weight. This class has exact moments,
which is all any Hankel-form computation needs.
"""
from dataclasses import dataclass, field

import numpy as np

from .analytic import TaylorSeries, as_series, binomial_series, dilate
from .weights import RadialWeight, parse_weight


@dataclass(frozen=True)
class ComplexMeasure:
    atoms: tuple = ()
    density: tuple = None  # (h: TaylorSeries, base: RadialWeight)
    label: str = field(default="", compare=False)

    def __post_init__(self):
        atoms = tuple((complex(z), complex(c)) for z, c in self.atoms)
        for z, _ in atoms:
            if abs(z) >= 1:
                raise ValueError(f"atom at {z} lies outside the open disk")
        object.__setattr__(self, "atoms", atoms)
        if self.density is not None:
            h, base = self.density
            object.__setattr__(self, "density", (as_series(h), base))

    @classmethod
    def delta(cls, z, c=1.0, label=""):
        return cls(atoms=((z, c),), label=label or f"delta({complex(z):.3g})")

    @classmethod
    def anti_analytic(cls, h, base, label=""):
        """``d mu = conj(h) d base``."""
        return cls(density=(as_series(h), base), label=label or "conj(h) dw")

    @classmethod
    def zero(cls):
        return cls(label="0")

    def __add__(self, other):
        if self.density is not None and other.density is not None:
            if self.density[1] is not other.density[1]:
                raise ValueError("densities against different weights cannot be merged")
            h = self.density[0] + other.density[0]
            density = (h, self.density[1])
        else:
            density = self.density if self.density is not None else other.density
        return ComplexMeasure(self.atoms + other.atoms, density)

    def scale(self, lam):
        lam = complex(lam)
        density = None
        if self.density is not None:
            # conj(h) scales by lam when h scales by conj(lam)
            density = (self.density[0] * np.conj(lam), self.density[1])
        return ComplexMeasure(tuple((z, lam * c) for z, c in self.atoms), density, self.label)

    __rmul__ = lambda self, lam: self.scale(lam)  # noqa: E731

    @property
    def total_atomic_mass(self):
        return sum(abs(c) for _, c in self.atoms)

    def transform(self, z, s):
        """``int (1 - conj(z) xi)**(-s) d mu(xi)`` evaluated exactly.

        Atoms contribute in closed form; the density part is the finite sum
        ``sum_k binom_k(s) conj(z)**k conj(h_k) 2 nu_{2k+1}``.
        """
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for zj, cj in self.atoms:
            out = out + cj * (1.0 - np.conj(z) * zj) ** (-s)
        if self.density is not None:
            h, base = self.density
            m = density_moments(h, base, h.degree)
            coeff = binomial_series(s, h.degree) * m
            zc = np.conj(z)
            acc = np.zeros(z.shape, dtype=complex)
            for c in coeff[::-1]:
                acc = acc * zc + c
            out = out + acc
        return out


def density_moments(h, base, K):
    """``int xi**k conj(h) d base = 2 base_{2k+1} conj(h_k)``, ``k = 0..K``."""
    hk = as_series(h).padded(K)
    return base.norm_constants(K) * np.conj(hk)


def moments(mu, K):
    """The moment sequence ``m_k = int xi**k d mu``, ``k = 0..K``."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    out = np.zeros(K + 1, dtype=complex)
    k = np.arange(K + 1)
    for z, c in mu.atoms:
        with np.errstate(under="ignore"):
            out += c * z ** k
    if mu.density is not None:
        out += density_moments(mu.density[0], mu.density[1], K)
    return out


def conjugate_moments(mu, K):
    """``int conj(xi)**k d mu``, ``k = 0..K``."""
    out = np.zeros(K + 1, dtype=complex)
    k = np.arange(K + 1)
    for z, c in mu.atoms:
        with np.errstate(under="ignore"):
            out += c * np.conj(z) ** k
    if mu.density is not None:
        # only conj(xi)**0 conj(h_0) survives the angular integration
        h, base = mu.density
        out[0] += 2.0 * base.moment(1.0) * np.conj(h.coeffs[0])
    return out


def project(nu, mu, conjugated=True, N=256):
    """Bergman projection onto ``A^2_nu``, truncated at degree ``N``.

    ``conjugated=True`` gives ``P_nu[conj(mu)]`` with coefficients
    ``conj(m_n) / sigma_n``; otherwise ``P_nu[mu]`` with
    ``int conj(xi)**n d mu / sigma_n``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    sigma = nu.norm_constants(N)
    if conjugated:
        return TaylorSeries(np.conj(moments(mu, N)) / sigma)
    return TaylorSeries(conjugate_moments(mu, N) / sigma)


def integrate_series(F, mu):
    """``int F d mu`` for a polynomial ``F``, exact from the moments."""
    F = as_series(F)
    return complex(np.dot(F.coeffs, moments(mu, F.degree)))


def dilated_projection_residual(F, mu, nu, rho, quad=None):
    """``|int F d mu - int F conj((P_nu[conj mu])_rho) d nu|``.

    The left side comes from the moments, the right side from area
    quadrature, so the two routes are independent.
    """
    from .norms import inner_product

    if not 0.0 <= rho < 1.0:
        raise ValueError("rho must lie in [0, 1)")
    F = as_series(F)
    P = project(nu, mu, conjugated=True, N=F.degree)
    rhs = inner_product(F, dilate(P, rho), nu, quad)
    return abs(integrate_series(F, mu) - rhs)


# -- text format -----------------------------------------------------------

def dumps(mu, coeffs_path=None):
    """Plain-text block: ``atom re(z) im(z) re(c) im(c)`` lines and an
    optional ``density weight=<descriptor> coeffs=<csv-path>`` line."""
    from .analytic import write_csv

    lines = [f"atom {z.real!r} {z.imag!r} {c.real!r} {c.imag!r}" for z, c in mu.atoms]
    if mu.density is not None:
        if coeffs_path is None:
            raise ValueError("a density needs a path for its coefficient CSV")
        h, base = mu.density
        write_csv(h, coeffs_path)
        lines.append(f"density weight={base.descriptor()} coeffs={coeffs_path}")
    return "\n".join(lines) + "\n"


def loads(text, label=""):
    from .analytic import read_csv

    atoms, density = [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "atom":
            parts = rest.split()
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: atom needs 4 numbers, got {len(parts)}")
            zr, zi, cr, ci = map(float, parts)
            atoms.append((complex(zr, zi), complex(cr, ci)))
        elif head == "density":
            if " coeffs=" not in rest or not rest.startswith("weight="):
                raise ValueError(f"line {lineno}: density needs weight=... coeffs=...")
            wtext, _, path = rest[len("weight="):].rpartition(" coeffs=")
            density = (read_csv(path.strip()), parse_weight(wtext))
        else:
            raise ValueError(f"line {lineno}: unknown record {head!r}")
    return ComplexMeasure(tuple(atoms), density, label=label)


def load(path):
    with open(path) as fh:
        return loads(fh.read(), label=str(path))


def as_weight(w):
    return w if isinstance(w, RadialWeight) else parse_weight(w)
