"""Mixing densities for the sphere family and the one-sided stable laws.

All Gamma-function factors go through ``gammaln``.  Densities return 0 for
nonpositive arguments.

Scale conventions.  ``positive_stable_density(beta, .)`` is the density of
the law with Laplace transform exp(-t^beta).  The closed form
``levy_half_density`` (x^{-3/2} e^{-1/(2x)} / sqrt(2 pi)) has Laplace transform
exp(-sqrt(2t)), i.e. it is the density of 2 * Theta_{1/2}.
``weak_stable_density(alpha, n, .)`` mixes the chi density with the law of
S = 2^{2/alpha - 1} Theta_{alpha/2}.  This makes it the radial density of the
rotationally invariant alpha-stable vector with characteristic function
exp(-2^{1-alpha} |xi|^alpha): for alpha = 2 the standard Gaussian (radial
density chi_n), for alpha = 1 the standard Cauchy (radial density f_{1,n}).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, special


QUAD_EPSABS = 1e-8


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach its tolerance."""


def _positive(x):
    x = np.asarray(x, dtype=float)
    pos = x > 0
    return x, pos, np.where(pos, x, 1.0)


def _finish(x, out):
    return float(out) if np.ndim(x) == 0 else out


def chi_density(n: int, r):
    """Density of ||X||_2 for X standard normal in R^n."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    r, pos, rs = _positive(r)
    logc = math.log(2.0) - (n / 2.0) * math.log(2.0) - special.gammaln(n / 2.0)
    out = np.where(pos, np.exp(logc + (n - 1) * np.log(rs) - rs * rs / 2.0), 0.0)
    return _finish(r, out)


def generalized_gamma_density(lam: float, p: float, a: float, x):
    if min(lam, p, a) <= 0:
        raise ValueError(f"generalized gamma parameters must be positive, got {(lam, p, a)}")
    x, pos, xs = _positive(x)
    logc = math.log(a) - special.gammaln(p / a) - (p / a) * math.log(lam)
    out = np.where(pos, np.exp(logc + (p - 1) * np.log(xs) - xs ** a / lam), 0.0)
    return _finish(x, out)


def generalized_gamma_cdf(lam: float, p: float, a: float, x):
    x = np.asarray(x, dtype=float)
    out = special.gammainc(p / a, np.maximum(x, 0.0) ** a / lam)
    return _finish(x, out)


def levy_half_density(x):
    """x^{-3/2} exp(-1/(2x)) / sqrt(2 pi): Laplace transform exp(-sqrt(2t))."""
    x, pos, xs = _positive(x)
    out = np.where(pos, xs ** -1.5 * np.exp(-0.5 / xs) / math.sqrt(2.0 * math.pi), 0.0)
    return _finish(x, out)


def levy_half_cdf(x):
    x, pos, xs = _positive(x)
    out = np.where(pos, special.erfc(np.sqrt(0.5 / xs)), 0.0)
    return _finish(x, out)


# ---------------------------------------------------------------------------
# one-sided stable density via Kanter's representation
#
#   P(Theta <= x) = (1/pi) int_0^pi exp(-z(u)) du,   z(u) = A(u) x^{-beta/(1-beta)}
#   f(x) = beta / ((1 - beta) pi x) int_0^pi z(u) exp(-z(u)) du
#
# A increases from A(0+) to infinity on (0, pi), so the integrand is a single
# bump whose location and width depend wildly on x and beta.  Panels are cut at
# fixed steps of w = log z (found from a cached table of log A), merged with a
# uniform grid in u, and each panel gets Gauss-Legendre nodes.  Everything is
# parametrised by v = pi - u so the far right tail (bump at tiny v) keeps its
# precision.

_GL_T, _GL_W = np.polynomial.legendre.leggauss(8)
# fine steps in w = log z around the bump, coarse where z e^{-z} ~ z is smooth
_W_GRID = np.concatenate([np.arange(-40.0, -10.0, 2.5), np.arange(-10.0, -4.0, 1.0),
                          np.arange(-4.0, 5.0 + 1e-9, 0.5)])
# left tail (z >= z_min >> 1): steps in z - z_min instead
_Z_LADDER = np.array([0, 1 / 16, 1 / 8, 1 / 4, 1 / 2, 1, 1.5, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96])
_V_GRID = np.linspace(0.0, np.pi, 17)
_CHUNK = 256


def _log_a_v(beta, v):
    # log A(pi - v).  sin u is taken as sin v where u is near pi, and from the same
    # rounded u as the numerator where u is near 0, so the ratio stays consistent
    u = np.pi - v
    sin_u = np.where(v < np.pi / 2, np.sin(v), np.sin(u))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (beta * np.log(np.sin(beta * u)) + (1.0 - beta) * np.log(np.sin((1.0 - beta) * u))
               - np.log(sin_u)) / (1.0 - beta)
    return np.where(u > 0.0, out, _log_a0(beta))


def _log_a0(beta):
    # A(0+) = (beta^beta (1-beta)^(1-beta))^(1/(1-beta))
    return (beta * math.log(beta) + (1.0 - beta) * math.log1p(-beta)) / (1.0 - beta)


@lru_cache(maxsize=64)
def _inverse_table(beta: float):
    lv = np.linspace(math.log(1e-300), math.log(math.pi), 6000)[::-1]
    la = _log_a_v(beta, np.exp(lv[1:]))
    la = np.concatenate([[_log_a0(beta)], la])
    for a in (lv, la):
        a.setflags(write=False)
    return la, lv  # la increasing


def _kanter_integrals(beta, logy):
    """(int z e^{-z} du, int e^{-z} du) over (0, pi) for each log y."""
    la, lv = _inverse_table(beta)
    wmin = logy + la[0]
    ladder = wmin[:, None] + np.log1p(_Z_LADDER[None, :] * np.exp(-np.maximum(wmin, 0.0))[:, None])
    ladder = np.concatenate([ladder, np.repeat(ladder[:, -1:], _W_GRID.size - _Z_LADDER.size, 1)], 1)
    w = np.where((wmin > 0.0)[:, None], ladder, _W_GRID[None, :])
    vw = np.exp(np.interp(w - logy[:, None], la, lv))
    edges = np.sort(np.concatenate([vw, np.broadcast_to(_V_GRID, (logy.size, _V_GRID.size))], 1), 1)
    h = np.diff(edges, axis=1) / 2.0
    mid = (edges[:, 1:] + edges[:, :-1]) / 2.0
    nodes = mid[..., None] + h[..., None] * _GL_T
    with np.errstate(over="ignore", divide="ignore"):
        wz = logy[:, None, None] + _log_a_v(beta, nodes)
        ez = np.exp(wz)
        bump = np.exp(wz - ez) @ _GL_W
        surv = np.exp(-ez) @ _GL_W
    return np.sum(bump * h, 1), np.sum(surv * h, 1)


def _kanter(beta, xs):
    logy = ((-beta / (1.0 - beta)) * np.log(np.atleast_1d(xs))).ravel()
    bump = np.empty_like(logy)
    surv = np.empty_like(logy)
    for lo in range(0, logy.size, _CHUNK):
        bump[lo:lo + _CHUNK], surv[lo:lo + _CHUNK] = _kanter_integrals(beta, logy[lo:lo + _CHUNK])
    return bump.reshape(np.shape(xs)), surv.reshape(np.shape(xs))


def _check_beta(beta):
    if not (0.0 < beta < 1.0):
        raise ValueError(f"beta must lie in (0, 1), got {beta}")


def positive_stable_density(beta: float, x):
    """Density of the positive stable law with Laplace transform exp(-t^beta)."""
    beta = float(beta)
    _check_beta(beta)
    x, pos, xs = _positive(x)
    if beta == 0.5:
        out = np.where(pos, xs ** -1.5 * np.exp(-0.25 / xs) / (2.0 * math.sqrt(math.pi)), 0.0)
        return _finish(x, out)
    bump, _ = _kanter(beta, xs)
    out = np.where(pos, (beta / (1.0 - beta)) / math.pi * bump / xs, 0.0)
    return _finish(x, out)


def positive_stable_cdf(beta: float, x):
    beta = float(beta)
    _check_beta(beta)
    x, pos, xs = _positive(x)
    if beta == 0.5:
        out = np.where(pos, special.erfc(np.sqrt(0.25 / xs)), 0.0)
        return _finish(x, out)
    _, surv = _kanter(beta, xs)
    out = np.where(pos, np.minimum(surv / math.pi, 1.0), 0.0)
    return _finish(x, out)


# ---------------------------------------------------------------------------
# sphere-family weakly stable radial densities


def subordinator_factor(alpha: float) -> float:
    """c with S = c * Theta_{alpha/2}; equals 2 at alpha = 1 and 1 at alpha = 2."""
    return 2.0 ** (2.0 / alpha - 1.0)


def _mixing_density(alpha: float, s):
    if alpha == 1.0:
        return levy_half_density(s)
    c = subordinator_factor(alpha)
    return positive_stable_density(alpha / 2.0, np.asarray(s) / c) / c


def _weak_stable_scalar(alpha, n, r):
    # integrate over y = log s; in s the mass sits between s ~ r^2 (chi factor)
    # and s ~ 1 (mixing law); below both the chi factor is doubly exponentially small,
    # above both the integrand decays like s^{-(n/2 + alpha/2)}
    def integrand(y):
        s = np.exp(y[:, 0])
        rs = np.sqrt(s)
        return chi_density(n, r / rs) * rs * _mixing_density(alpha, s)

    peak = 2.0 * math.log(r)
    lo, hi = min(peak, 0.0) - 20.0, max(peak, 0.0) + 80.0
    # vectorised Gauss-Kronrod: the mixing density is far cheaper per node in batches.
    # relative control keeps the power tail accurate where f is far below QUAD_EPSABS;
    # the absolute tolerance is what a result must meet to be accepted
    res = integrate.cubature(integrand, [lo], [hi], rtol=1e-9, atol=0.0, max_subdivisions=500,
                             points=[[p] for p in sorted({peak, 0.0})])
    val, err = float(res.estimate), float(res.error)
    if not math.isfinite(val) or not math.isfinite(err) or (res.status != "converged" and err > QUAD_EPSABS):
        raise QuadratureError(f"quadrature failed at r={r}: status {res.status}, value {val:.6g}, "
                              f"error estimate {err:.3g}")
    return val


def weak_stable_density(alpha: float, n: int, r):
    """Radial density f_{alpha,n} = int chi_n(r/sqrt(s)) s^{-1/2} g_alpha(s) ds.

    Raises :class:`QuadratureError` when the adaptive quadrature fails.
    """
    alpha = float(alpha)
    if not (0.0 < alpha <= 2.0):
        raise ValueError(f"alpha must lie in (0, 2], got {alpha}")
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if alpha == 2.0:
        return chi_density(n, r)
    r = np.asarray(r, dtype=float)
    flat = np.atleast_1d(r).ravel()
    out = np.array([_weak_stable_scalar(alpha, n, float(v)) if v > 0 else 0.0 for v in flat])
    return _finish(r, out.reshape(np.shape(r)))


def weak_cauchy_density(n: int, r):
    """f_{1,n}(r) = 2^{2-n} Gamma(n) / Gamma(n/2)^2 * r^{n-1} / (1 + r^2)^{(n+1)/2}."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    r, pos, rs = _positive(r)
    logc = (2 - n) * math.log(2.0) + special.gammaln(n) - 2.0 * special.gammaln(n / 2.0)
    out = np.where(pos, np.exp(logc + (n - 1) * np.log(rs) - (n + 1) / 2.0 * np.log1p(rs * rs)), 0.0)
    return _finish(r, out)


# ---------------------------------------------------------------------------
# tabulated densities


@dataclass(frozen=True, eq=False)
class DensityGrid:
    abscissae: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.abscissae, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.shape != v.shape or x.ndim != 1:
            raise ValueError("abscissae and values must be 1-d arrays of equal length")
        if x.size > 1 and np.any(np.diff(x) <= 0):
            raise ValueError("abscissae must be strictly increasing")
        if np.any(v < 0):
            raise ValueError("density values must be nonnegative")
        object.__setattr__(self, "abscissae", x)
        object.__setattr__(self, "values", v)

    @classmethod
    def tabulate(cls, density, xs) -> "DensityGrid":
        xs = np.asarray(xs, dtype=float)
        return cls(xs, np.asarray(density(xs), dtype=float))

    def integral(self) -> float:
        return float(np.trapezoid(self.values, self.abscissae))

    def cdf(self, x):
        """Trapezoid cumulative integral from the first abscissa, linearly interpolated."""
        cum = np.concatenate([[0.0], integrate.cumulative_trapezoid(self.values, self.abscissae)])
        return np.interp(x, self.abscissae, cum)

    def to_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "density"])
        for a, b in zip(self.abscissae, self.values):
            w.writerow([f"{a:.17g}", f"{b:.17g}"])
