"""Mixing laws and the rescaling / scale-mixture primitives.

A mixing law is anything with a vectorised ``sample(src, size)`` and a
``nonnegative`` support flag.  Laws are immutable; results of operations on
laws are new laws that wrap their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import families as fam
from .rngs import RandomSource, as_generator

REAL_LINE = "real-line"
NONNEGATIVE = "nonnegative-half-line"


class MixingLaw:
    kind: str = "abstract"
    nonnegative: bool = False

    @property
    def support(self) -> str:
        return NONNEGATIVE if self.nonnegative else REAL_LINE

    def sample(self, src, size: int) -> np.ndarray:
        return np.asarray(self._draw(as_generator(src), int(size)), dtype=float)

    def _draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class PointMass(MixingLaw):
    c: float
    kind = "point-mass"

    @property
    def nonnegative(self):
        return self.c >= 0

    def _draw(self, rng, size):
        return np.full(size, float(self.c))


@dataclass(frozen=True)
class GeneralizedGamma(MixingLaw):
    """Gamma(lam, p, a); (2, n, 2) is the norm of a standard Gaussian in R^n."""

    lam: float
    p: float
    a: float
    kind = "generalized-gamma"
    nonnegative = True

    def __post_init__(self):
        if min(self.lam, self.p, self.a) <= 0:
            raise ValueError(f"generalized gamma parameters must be positive, got {(self.lam, self.p, self.a)}")

    def _draw(self, rng, size):
        return fam.sample_generalized_gamma(self.lam, self.p, self.a, rng, size)


@dataclass(frozen=True)
class NegBinRoot(MixingLaw):
    """Law of Theta_r^(1/alpha), Theta_r negative binomial(r, p)."""

    r: float
    p: float
    alpha: float
    kind = "negative-binomial-root"
    nonnegative = True

    def __post_init__(self):
        if self.r < 0 or not (0 < self.p < 1) or self.alpha <= 0:
            raise ValueError(f"invalid negative-binomial-root parameters {(self.r, self.p, self.alpha)}")

    def _draw(self, rng, size):
        k = fam.sample_negative_binomial(self.r, self.p, rng, size).astype(float)
        return k if self.alpha == 1.0 else k ** (1.0 / self.alpha)


@dataclass(frozen=True)
class GammaRoot(MixingLaw):
    """Law of Q_r^(1/alpha), Q_r gamma with shape r and rate a."""

    r: float
    rate: float
    alpha: float
    kind = "gamma-root"
    nonnegative = True

    def __post_init__(self):
        if self.r < 0 or self.rate <= 0 or self.alpha <= 0:
            raise ValueError(f"invalid gamma-root parameters {(self.r, self.rate, self.alpha)}")

    def _draw(self, rng, size):
        if self.r == 0:
            return np.zeros(size)
        q = rng.gamma(self.r, 1.0 / self.rate, size)
        return q if self.alpha == 1.0 else q ** (1.0 / self.alpha)


@dataclass(frozen=True)
class PositiveStable(MixingLaw):
    beta: float
    kind = "positive-stable"
    nonnegative = True

    def __post_init__(self):
        if not (0 < self.beta < 1):
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")

    def _draw(self, rng, size):
        return fam.sample_positive_stable(self.beta, rng, size)


@dataclass(frozen=True)
class WeakCauchy(MixingLaw):
    """Radial part of the standard isotropic Cauchy vector in R^n (density f_{1,n})."""

    n: int
    kind = "weak-cauchy"
    nonnegative = True

    def _draw(self, rng, size):
        return fam.sample_weak_cauchy(self.n, rng, size)


@dataclass(frozen=True, eq=False)
class Empirical(MixingLaw):
    """Uniform resampling with replacement from a stored sample."""

    values: np.ndarray
    kind = "empirical"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size == 0:
            raise ValueError("empirical law needs at least one value")
        object.__setattr__(self, "values", v)

    @property
    def nonnegative(self):
        return bool(np.all(self.values >= 0))

    def _draw(self, rng, size):
        return self.values[rng.integers(0, self.values.size, size)]


@dataclass(frozen=True)
class Scaled(MixingLaw):
    inner: MixingLaw
    factor: float
    kind = "scaled"

    @property
    def nonnegative(self):
        return self.factor >= 0 and self.inner.nonnegative

    def _draw(self, rng, size):
        return self.factor * self.inner._draw(rng, size)


@dataclass(frozen=True)
class Absolute(MixingLaw):
    inner: MixingLaw
    kind = "abs"
    nonnegative = True

    def _draw(self, rng, size):
        return np.abs(self.inner._draw(rng, size))


@dataclass(frozen=True)
class Symmetrized(MixingLaw):
    inner: MixingLaw
    kind = "symmetrized"

    @property
    def nonnegative(self):
        return isinstance(self.inner, PointMass) and self.inner.c == 0

    def _draw(self, rng, size):
        x = self.inner._draw(rng, size)
        sign = np.where(rng.integers(0, 2, size) == 1, 1.0, -1.0)
        return sign * x


@dataclass(frozen=True)
class Root(MixingLaw):
    """Law of |Theta|^(1/alpha)."""

    inner: MixingLaw
    alpha: float
    kind = "root"
    nonnegative = True

    def _draw(self, rng, size):
        return np.abs(self.inner._draw(rng, size)) ** (1.0 / self.alpha)


@dataclass(frozen=True, eq=False)
class SamplerLaw(MixingLaw):
    """Law given only by a sampling closure ``draw(rng, size)``."""

    draw: Callable[[np.random.Generator, int], np.ndarray]
    nonneg: bool = True
    label: str = "convolution-result"
    kind = "convolution-result"

    @property
    def nonnegative(self):
        return self.nonneg

    def _draw(self, rng, size):
        return self.draw(rng, size)


# ---------------------------------------------------------------------------
# operations


def scale(law: MixingLaw, a: float) -> MixingLaw:
    """T_a: the law of a * Theta; a = 0 gives the point mass at 0."""
    a = float(a)
    if a == 0.0:
        return PointMass(0.0)
    if isinstance(law, PointMass):
        return PointMass(a * law.c)
    if isinstance(law, Scaled):
        return Scaled(law.inner, a * law.factor)
    return Scaled(law, a)


def abs_law(law: MixingLaw) -> MixingLaw:
    if isinstance(law, PointMass):
        return PointMass(abs(law.c))
    if law.nonnegative:
        return law
    return Absolute(law)


def symmetrize(law: MixingLaw) -> MixingLaw:
    if isinstance(law, PointMass) and law.c == 0:
        return law
    return Symmetrized(law)


def root(law: MixingLaw, alpha: float) -> MixingLaw:
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if isinstance(law, PointMass):
        return PointMass(abs(law.c) ** (1.0 / alpha))
    return Root(law, float(alpha))


def coerce(family, law: MixingLaw) -> MixingLaw:
    """Mixing law actually used against ``family``.

    Symmetric families only see |Theta|; the one-sided stable family needs a
    law on [0, inf) already.
    """
    if family.symmetric:
        return abs_law(law)
    if not law.nonnegative:
        raise ValueError(f"{family.describe()} requires a mixing law on [0, inf), got {law.kind}")
    return law


def mix(family, law: MixingLaw, src, size: int | None = None) -> np.ndarray:
    """Draws of Theta * X with Theta ~ law and X ~ family independent.

    Returns shape ``(dim,)`` when ``size`` is None, else ``(size, dim)``.
    """
    rng = as_generator(src)
    n = 1 if size is None else int(size)
    theta = coerce(family, law).sample(rng, n)
    x = family.sample(rng, n)
    out = theta[:, None] * x
    return out[0] if size is None else out
