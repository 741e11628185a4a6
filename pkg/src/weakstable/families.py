"""Samplers and characteristic functions.

Normalisations used throughout:

* symmetric stable:  E exp(itX) = exp(-|t|^alpha)
* positive stable:   E exp(-tX) = exp(-t^beta), beta in (0, 1)
* generalized gamma Gamma(lam, p, a): density proportional to
  x^(p-1) exp(-x^a / lam)
* negative binomial: P{k} = C(r+k-1, k) (1-p)^k p^r
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .rngs import as_generator

SPHERE = "sphere"
STABLE_ISOTROPIC = "stable-isotropic"
STABLE_IID = "stable-iid"
POSITIVE_STRICT = "positive-strict-stable"

_KINDS = (SPHERE, STABLE_ISOTROPIC, STABLE_IID, POSITIVE_STRICT)


# ---------------------------------------------------------------------------
# scalar samplers


def _check_size(size):
    return () if size is None else size


def sample_sphere(n, src, size=None):
    """Uniform points on the unit sphere S^{n-1} in R^n.

    Returns shape ``(n,)`` when ``size`` is None, else ``(size, n)``.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {n}")
    rng = as_generator(src)
    shape = (1, n) if size is None else (int(size), n)
    g = rng.standard_normal(shape)
    norms = np.sqrt(np.einsum("ij,ij->i", g, g))
    # zero norm has probability 0; resample defensively anyway
    bad = norms == 0.0
    while bad.any():
        g[bad] = rng.standard_normal((int(bad.sum()), n))
        norms = np.sqrt(np.einsum("ij,ij->i", g, g))
        bad = norms == 0.0
    u = g / norms[:, None]
    return u[0] if size is None else u


def sample_stable_symmetric(alpha, src, size=None):
    """Symmetric alpha-stable draws with characteristic function exp(-|t|^alpha).

    Chambers-Mallows-Stuck transform of a uniform angle and an exponential.
    """
    alpha = float(alpha)
    if not (0.0 < alpha <= 2.0):
        raise ValueError(f"alpha must lie in (0, 2], got {alpha}")
    rng = as_generator(src)
    shape = _check_size(size)
    v = rng.uniform(-np.pi / 2, np.pi / 2, shape)
    if alpha == 1.0:
        return np.tan(v)
    w = rng.standard_exponential(shape)
    return (np.sin(alpha * v) / np.cos(v) ** (1.0 / alpha)
            * (np.cos((1.0 - alpha) * v) / w) ** ((1.0 - alpha) / alpha))


def kanter_log_a(beta, u):
    """log of Kanter's function A(u) on (0, pi) for the one-sided beta-stable law."""
    u = np.asarray(u, dtype=float)
    return (beta * np.log(np.sin(beta * u))
            + (1.0 - beta) * np.log(np.sin((1.0 - beta) * u))
            - np.log(np.sin(u))) / (1.0 - beta)


def sample_positive_stable(beta, src, size=None):
    """Positive strictly beta-stable draws with Laplace transform exp(-t^beta).

    Kanter's representation (A(U)/E)^((1-beta)/beta), U ~ U(0, pi), E ~ Exp(1).
    """
    beta = float(beta)
    if not (0.0 < beta < 1.0):
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    rng = as_generator(src)
    shape = _check_size(size)
    u = rng.uniform(0.0, np.pi, shape)
    # uniform() is [0, pi); keep u away from the endpoint singularities
    u = np.where(u == 0.0, np.pi / 2, u)
    e = rng.standard_exponential(shape)
    return np.exp((kanter_log_a(beta, u) - np.log(e)) * (1.0 - beta) / beta)


def sample_generalized_gamma(lam, p, a, src, size=None):
    """Draws from Gamma(lam, p, a) as (lam * G)^(1/a), G ~ Gamma(shape p/a)."""
    lam, p, a = float(lam), float(p), float(a)
    if min(lam, p, a) <= 0:
        raise ValueError(f"generalized gamma parameters must be positive, got {(lam, p, a)}")
    rng = as_generator(src)
    g = rng.standard_gamma(p / a, _check_size(size))
    return (lam * g) ** (1.0 / a)


def sample_negative_binomial(r, p, src, size=None):
    """Negative binomial with real shape ``r`` via the gamma-Poisson mixture."""
    r, p = float(r), float(p)
    if r < 0 or not (0.0 < p < 1.0):
        raise ValueError(f"need r >= 0 and p in (0, 1), got r={r}, p={p}")
    rng = as_generator(src)
    shape = _check_size(size)
    if r == 0.0:
        return np.zeros(shape, dtype=np.int64)
    lam = rng.gamma(r, (1.0 - p) / p, shape)
    return rng.poisson(lam)


def sample_weak_cauchy(n, src, size=None):
    """Draws with density f_{1,n}(r) proportional to r^(n-1) / (1 + r^2)^((n+1)/2).

    Accept-reject in the angle r = tan(phi): phi has density proportional to
    sin(phi)^(n-1) on (0, pi/2), so a uniform proposal is accepted with
    probability sin(phi)^(n-1).
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    rng = as_generator(src)
    total = 1 if size is None else int(size)
    out = np.empty(total)
    filled = 0
    while filled < total:
        batch = max(2 * (total - filled), 64)
        phi = rng.uniform(0.0, np.pi / 2, batch)
        keep = rng.uniform(size=batch) < np.sin(phi) ** (n - 1)
        acc = np.tan(phi[keep])[: total - filled]
        out[filled:filled + acc.size] = acc
        filled += acc.size
    return out[0] if size is None else out


# ---------------------------------------------------------------------------
# characteristic functions


def sphere_cf(n, r):
    """Radial characteristic function of the uniform law on S^{n-1}.

    Omega_n(r) = Gamma(n/2) (2/r)^(n/2-1) J_{n/2-1}(r), with Omega_n(0) = 1.
    Below r = 1 the equivalent series 0F1(; n/2; -r^2/4) avoids 0 * inf.
    """
    r = np.abs(np.asarray(r, dtype=float))
    nu = n / 2.0 - 1.0
    out = np.ones_like(r)
    nz = r > 0
    rr = r[nz]
    if n == 1:
        out[nz] = np.cos(rr)
    elif n == 3:
        out[nz] = np.sin(rr) / rr
    else:
        small = rr < 1.0
        vals = special.hyp0f1(n / 2.0, -rr * rr / 4.0)
        big = rr[~small]
        logc = special.gammaln(n / 2.0) + nu * np.log(2.0 / big)
        vals[~small] = np.exp(logc) * special.jv(nu, big)
        out[nz] = vals
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class WeaklyStableFamily:
    """Base measure mu: the uniform law on a sphere or a stable law.

    ``index`` is the sphere dimension for ``sphere`` and the stability index
    otherwise.  Samples are multiplied by ``scale``.
    """

    kind: str
    index: float
    dim: int = 1
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.scale <= 0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if self.kind == SPHERE:
            if int(self.index) != self.index or self.index < 1:
                raise ValueError(f"sphere dimension must be an integer >= 1, got {self.index}")
            if self.dim != int(self.index):
                raise ValueError("sphere family dimension must equal n")
        elif self.kind == POSITIVE_STRICT:
            if not (0.0 < self.index < 1.0):
                raise ValueError(f"positive strictly stable index must lie in (0, 1), got {self.index}")
            if self.dim != 1:
                raise ValueError("positive strictly stable family is one-dimensional")
        else:
            if not (0.0 < self.index <= 2.0):
                raise ValueError(f"stability index must lie in (0, 2], got {self.index}")
            if self.dim < 1:
                raise ValueError(f"dimension must be >= 1, got {self.dim}")

    # constructors -----------------------------------------------------------

    @classmethod
    def sphere(cls, n: int) -> "WeaklyStableFamily":
        n = int(n)
        if n < 1:
            raise ValueError(f"sphere dimension must be >= 1, got {n}")
        return cls(SPHERE, n, n)

    @classmethod
    def stable_isotropic(cls, alpha: float, d: int = 1, scale: float = 1.0):
        return cls(STABLE_ISOTROPIC, float(alpha), int(d), float(scale))

    @classmethod
    def stable_iid(cls, alpha: float, d: int = 1, scale: float = 1.0):
        return cls(STABLE_IID, float(alpha), int(d), float(scale))

    @classmethod
    def positive_stable(cls, alpha: float, scale: float = 1.0):
        return cls(POSITIVE_STRICT, float(alpha), 1, float(scale))

    @classmethod
    def gaussian(cls, d: int = 1):
        """Standard N(0, I_d): the isotropic 2-stable law with scale 1/sqrt(2)."""
        return cls(STABLE_ISOTROPIC, 2.0, int(d), 1.0 / math.sqrt(2.0))

    # properties -------------------------------------------------------------

    @property
    def alpha(self) -> float | None:
        return None if self.kind == SPHERE else float(self.index)

    @property
    def symmetric(self) -> bool:
        return self.kind != POSITIVE_STRICT

    @property
    def rotationally_invariant(self) -> bool:
        return self.kind in (SPHERE, STABLE_ISOTROPIC) or (
            self.kind == STABLE_IID and (self.dim == 1 or self.index == 2.0))

    @property
    def is_stable(self) -> bool:
        return self.kind != SPHERE

    # sampling ---------------------------------------------------------------

    def sample(self, src, size: int) -> np.ndarray:
        """``size`` draws as an array of shape ``(size, dim)``."""
        rng = as_generator(src)
        size = int(size)
        if self.kind == SPHERE:
            x = sample_sphere(self.dim, rng, size)
        elif self.kind == STABLE_IID:
            x = sample_stable_symmetric(self.index, rng, (size, self.dim))
        elif self.kind == POSITIVE_STRICT:
            x = sample_positive_stable(self.index, rng, size)[:, None]
        else:
            # G sqrt(2 Theta_{alpha/2}) has characteristic function exp(-|xi|^alpha)
            g = rng.standard_normal((size, self.dim))
            if self.index == 2.0:
                mult = np.full(size, math.sqrt(2.0))
            else:
                mult = np.sqrt(2.0 * sample_positive_stable(self.index / 2.0, rng, size))
            x = g * mult[:, None]
        return x * self.scale if self.scale != 1.0 else x

    # characteristic function ------------------------------------------------

    def stability_functional(self, xi) -> complex:
        """R(xi) with E exp(i<xi, X>) = exp(-R(xi)); complex for the one-sided law."""
        xi = self._check_xi(xi)
        if self.kind == SPHERE:
            raise ValueError("the sphere family has no stability functional")
        s, a = self.scale, self.index
        if self.kind == STABLE_ISOTROPIC:
            return float((s * np.linalg.norm(xi)) ** a)
        if self.kind == STABLE_IID:
            return float(np.sum(np.abs(s * xi) ** a))
        t = float(s * xi[0])
        return abs(t) ** a * complex(math.cos(math.pi * a / 2), -math.copysign(1.0, t) * math.sin(math.pi * a / 2))

    def cf(self, xi) -> complex:
        xi = self._check_xi(xi)
        if not np.any(xi):
            return complex(1.0, 0.0)
        if self.kind == SPHERE:
            return complex(sphere_cf(self.dim, self.scale * np.linalg.norm(xi)), 0.0)
        return complex(np.exp(-self.stability_functional(xi)))

    def _check_xi(self, xi) -> np.ndarray:
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        if xi.shape != (self.dim,):
            raise ValueError(f"xi has shape {xi.shape}, family dimension is {self.dim}")
        return xi

    def describe(self) -> str:
        if self.kind == SPHERE:
            return f"sphere:{self.dim}"
        if self.kind == POSITIVE_STRICT:
            return f"posstable:{self.index:g}"
        tail = ":iid" if self.kind == STABLE_IID else ""
        return f"stable:{self.index:g}:d={self.dim}{tail}"


def cf_family(family: WeaklyStableFamily, xi) -> complex:
    return family.cf(xi)
