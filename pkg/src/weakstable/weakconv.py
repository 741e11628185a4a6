"""Generalized weak convolution and weakly infinitely divisible semigroups."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import families as fam
from .core import GammaRoot, MixingLaw, NegBinRoot, PointMass, SamplerLaw, coerce
from .families import WeaklyStableFamily
from .rngs import as_generator

CLOSED_FORM_STABLE = "closed-form-stable"
CLOSED_FORM_SPHERE_2 = "closed-form-sphere-2"
RADIAL_MONTE_CARLO = "radial-monte-carlo"

DETERMINISTIC_ROOT = "deterministic-root"
NEGATIVE_BINOMIAL_ROOT = "negative-binomial-root"
GAMMA_ROOT = "gamma-root"


@dataclass(frozen=True)
class ConvolutionRule:
    """How to realise Theta1 (+)_mu Theta2 for a given base family.

    ``exponent`` overrides the stable index in the power formula; it exists
    only so negative controls can build a deliberately wrong rule.
    ``n_samples`` is the default draw count used when this rule is verified.
    """

    family: WeaklyStableFamily
    method: str = CLOSED_FORM_STABLE
    n_samples: int = 100_000
    exponent: float | None = None

    def __post_init__(self):
        if self.n_samples < 0:
            raise ValueError(f"Monte Carlo sample count must be nonnegative, got {self.n_samples}")
        f = self.family
        if self.method == CLOSED_FORM_STABLE:
            if not f.is_stable:
                raise ValueError(f"{self.method} needs a stable family, got {f.describe()}")
        elif self.method == CLOSED_FORM_SPHERE_2:
            if f.kind != fam.SPHERE or f.dim != 2:
                raise ValueError(f"{self.method} needs sphere:2, got {f.describe()}")
        elif self.method == RADIAL_MONTE_CARLO:
            # Theta = ||Theta1 U' + Theta2 U''|| only holds when ||X|| = 1
            if f.kind != fam.SPHERE:
                raise ValueError(f"{self.method} needs a sphere family, got {f.describe()}")
        else:
            raise ValueError(f"unknown convolution method {self.method!r}")
        if self.exponent is not None and self.method != CLOSED_FORM_STABLE:
            raise ValueError("an exponent override only applies to the closed-form stable rule")

    @classmethod
    def for_family(cls, family: WeaklyStableFamily, **kw) -> "ConvolutionRule":
        if family.is_stable:
            return cls(family, CLOSED_FORM_STABLE, **kw)
        if family.dim == 2:
            return cls(family, CLOSED_FORM_SPHERE_2, **kw)
        return cls(family, RADIAL_MONTE_CARLO, **kw)

    @property
    def power_exponent(self) -> float:
        return float(self.exponent if self.exponent is not None else self.family.index)

    def combine(self, t1: np.ndarray, t2: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """Pointwise Theta1 (+) Theta2 for arrays of nonnegative draws."""
        if self.method == CLOSED_FORM_STABLE:
            a = self.power_exponent
            if a == 2.0:
                return np.hypot(t1, t2)
            if a == 1.0:
                return np.abs(t1) + np.abs(t2)
            return (np.abs(t1) ** a + np.abs(t2) ** a) ** (1.0 / a)
        if self.method == CLOSED_FORM_SPHERE_2:
            c = np.cos(rng.uniform(0.0, 2 * np.pi, np.shape(t1)))
            sq = t1 * t1 + t2 * t2 + 2.0 * t1 * t2 * c
            return np.sqrt(np.maximum(sq, 0.0))
        size = np.size(t1)
        u1 = fam.sample_sphere(self.family.dim, rng, size)
        u2 = fam.sample_sphere(self.family.dim, rng, size)
        v = t1[:, None] * u1 + t2[:, None] * u2
        return np.sqrt(np.einsum("ij,ij->i", v, v))


def convolve(rule: ConvolutionRule, law1: MixingLaw, law2: MixingLaw) -> MixingLaw:
    """law1 (+)_mu law2 as a sampler-backed law."""
    l1 = coerce(rule.family, law1)
    l2 = coerce(rule.family, law2)
    if rule.method == CLOSED_FORM_STABLE and isinstance(l1, PointMass) and isinstance(l2, PointMass):
        t = rule.combine(np.array([l1.c]), np.array([l2.c]), None)
        return PointMass(float(t[0]))

    def draw(rng, size):
        t1 = l1._draw(rng, size)
        t2 = l2._draw(rng, size)
        return rule.combine(np.asarray(t1, float), np.asarray(t2, float), rng)

    return SamplerLaw(draw, True, f"({getattr(l1, 'kind', '?')} (+) {getattr(l2, 'kind', '?')})")


@dataclass(frozen=True)
class SemigroupFamily:
    """{lambda^r : r >= 0} with lambda^r (+) lambda^s = lambda^(r+s) over a stable base."""

    kind: str
    alpha: float
    base: WeaklyStableFamily
    p: float | None = None
    rate: float | None = None

    def __post_init__(self):
        if self.kind not in (DETERMINISTIC_ROOT, NEGATIVE_BINOMIAL_ROOT, GAMMA_ROOT):
            raise ValueError(f"unknown semigroup kind {self.kind!r}")
        if not self.base.is_stable:
            raise ValueError(f"semigroups need a stable base family, got {self.base.describe()}")
        if self.base.index != self.alpha:
            raise ValueError(
                f"semigroup alpha={self.alpha:g} does not match base family alpha={self.base.index:g}")
        if self.kind == NEGATIVE_BINOMIAL_ROOT and not (self.p is not None and 0 < self.p < 1):
            raise ValueError(f"negative-binomial-root needs p in (0, 1), got {self.p}")
        if self.kind == GAMMA_ROOT and not (self.rate is not None and self.rate > 0):
            raise ValueError(f"gamma-root needs a positive rate, got {self.rate}")

    @classmethod
    def deterministic(cls, base: WeaklyStableFamily) -> "SemigroupFamily":
        return cls(DETERMINISTIC_ROOT, float(base.index), base)

    @classmethod
    def negative_binomial(cls, base: WeaklyStableFamily, p: float) -> "SemigroupFamily":
        return cls(NEGATIVE_BINOMIAL_ROOT, float(base.index), base, p=float(p))

    @classmethod
    def gamma(cls, base: WeaklyStableFamily, rate: float) -> "SemigroupFamily":
        return cls(GAMMA_ROOT, float(base.index), base, rate=float(rate))

    @property
    def rule(self) -> ConvolutionRule:
        return ConvolutionRule(self.base, CLOSED_FORM_STABLE)


def power(semi: SemigroupFamily, r: float) -> MixingLaw:
    r = float(r)
    if r < 0:
        raise ValueError(f"semigroup parameter must be nonnegative, got {r}")
    if r == 0:
        return PointMass(0.0)
    if semi.kind == DETERMINISTIC_ROOT:
        return PointMass(r ** (1.0 / semi.alpha))
    if semi.kind == NEGATIVE_BINOMIAL_ROOT:
        return NegBinRoot(r, semi.p, semi.alpha)
    return GammaRoot(r, semi.rate, semi.alpha)


def sample_power(semi: SemigroupFamily, r, src, size: int) -> np.ndarray:
    """One draw of lambda^r per entry, with ``r`` broadcast against ``size``."""
    rng = as_generator(src)
    r = np.broadcast_to(np.asarray(r, dtype=float), (size,))
    if np.any(r < 0):
        raise ValueError("semigroup parameter must be nonnegative")
    if semi.kind == DETERMINISTIC_ROOT:
        return r ** (1.0 / semi.alpha)
    if semi.kind == NEGATIVE_BINOMIAL_ROOT:
        lam = np.zeros(size)
        pos = r > 0
        lam[pos] = rng.gamma(r[pos], (1.0 - semi.p) / semi.p)
        k = rng.poisson(lam).astype(float)
    else:
        k = np.zeros(size)
        pos = r > 0
        k[pos] = rng.gamma(r[pos], 1.0 / semi.rate)
    return k if semi.alpha == 1.0 else k ** (1.0 / semi.alpha)
