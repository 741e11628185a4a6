"""Test statistics and the report record shared by every check.

Kolmogorov-Smirnov tests use the asymptotic Kolmogorov distribution.
Characteristic-function, moment and correlation checks are tolerance based
(3 standard errors); their ``p_value`` is the matching normal-theory tail
probability so that reports stay comparable.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

import numpy as np
from scipy import special

PASS = "pass"
FAIL = "fail"
SERIES_CUTOFF = 1e-10


@dataclass
class TestReport:
    name: str
    statistic: float
    p_value: float
    n1: int
    n2: int = 0
    seed: int | None = None
    verdict: str = PASS
    retried: bool = False
    test: str = "ks2"
    significance: float | None = None
    tolerance: float | None = None
    stream: int | None = None
    detail: str = ""

    __test__ = False  # not a pytest class

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self) -> str:
        d = asdict(self)
        for k in ("statistic", "p_value", "significance", "tolerance"):
            if d[k] is not None:
                d[k] = float(f"{d[k]:.17g}")
        return json.dumps(d, sort_keys=True)

    def line(self) -> str:
        extra = " (retried)" if self.retried else ""
        return (f"{self.verdict.upper():4s} {self.name}: {self.test} stat={self.statistic:.6g} "
                f"p={self.p_value:.4g}{extra}")


def write_jsonl(reports: Iterable[TestReport], fh) -> None:
    for r in reports:
        fh.write(r.to_json() + "\n")


# ---------------------------------------------------------------------------
# Kolmogorov distribution


def kolmogorov_sf(x: float) -> float:
    """P(K > x) for the limiting Kolmogorov distribution.

    Two series are used: the alternating one converges fast for large x,
    the Jacobi-theta form for small x.  Both stop once terms drop below 1e-10.
    """
    x = float(x)
    if x <= 0.0:
        return 1.0
    if x < 1.0:
        c = math.pi ** 2 / (8.0 * x * x)
        total, k = 0.0, 1
        while True:
            term = math.exp(-(2 * k - 1) ** 2 * c)
            total += term
            if term < SERIES_CUTOFF:
                break
            k += 1
        p = 1.0 - math.sqrt(2.0 * math.pi) / x * total
    else:
        total, k = 0.0, 1
        while True:
            term = math.exp(-2.0 * k * k * x * x)
            total += term if k % 2 else -term
            if term < SERIES_CUTOFF:
                break
            k += 1
        p = 2.0 * total
    return min(1.0, max(0.0, p))


def _clean(xs, name) -> np.ndarray:
    a = np.asarray(xs, dtype=float).ravel()
    if a.size == 0:
        raise ValueError(f"{name} is empty")
    if np.isnan(a).any():
        raise ValueError(f"{name} contains NaN")
    return a


def _round_sig(a: np.ndarray, digits: int) -> np.ndarray:
    with np.errstate(divide="ignore"):
        mag = np.floor(np.log10(np.abs(a)))
    mag = np.where(np.isfinite(mag), mag, 0.0)
    f = 10.0 ** (digits - 1 - mag)
    return np.round(a * f) / f


def ks_2samp_statistic(xs, ys) -> float:
    x = np.sort(xs)
    y = np.sort(ys)
    z = np.concatenate([x, y])
    fx = np.searchsorted(x, z, side="right") / x.size
    fy = np.searchsorted(y, z, side="right") / y.size
    return float(np.max(np.abs(fx - fy)))


def ks_two_sample(xs, ys, *, name: str = "ks_two_sample", significance: float = 0.01,
                  seed: int | None = None, digits: int | None = None) -> TestReport:
    """Two-sample KS test with asymptotic p-value.

    ``digits`` rounds both samples to that many significant digits first, so
    atoms computed along different floating-point paths still coincide.
    """
    x = _clean(xs, "first sample")
    y = _clean(ys, "second sample")
    if digits is not None:
        x, y = _round_sig(x, digits), _round_sig(y, digits)
    d = ks_2samp_statistic(x, y)
    en = math.sqrt(x.size * y.size / (x.size + y.size))
    p = kolmogorov_sf(en * d)
    return TestReport(name, d, p, x.size, y.size, seed, PASS if p >= significance else FAIL,
                      test="ks2", significance=significance)


def ks_vs_cdf(xs, cdf: Callable[[np.ndarray], np.ndarray], *, name: str = "ks_vs_cdf",
              significance: float = 0.01, seed: int | None = None) -> TestReport:
    x = np.sort(_clean(xs, "sample"))
    n = x.size
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    d = float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))
    p = kolmogorov_sf(math.sqrt(n) * d)
    return TestReport(name, d, p, n, 0, seed, PASS if p >= significance else FAIL,
                      test="ks1", significance=significance)


# ---------------------------------------------------------------------------
# characteristic functions


def ecf(xs, xi) -> complex:
    """Empirical characteristic function of vector samples ``xs`` (N, d) at ``xi``."""
    xs = np.asarray(xs, dtype=float)
    if xs.ndim == 1:
        xs = xs[:, None]
    proj = xs @ np.atleast_1d(np.asarray(xi, dtype=float))
    return complex(np.mean(np.cos(proj)), np.mean(np.sin(proj)))


def ecf_compare(xs, cf: Callable[[np.ndarray], complex], grid, *, name: str = "ecf_compare",
                k: float = 3.0, seed: int | None = None) -> TestReport:
    """Max over ``grid`` of |ECF - cf|; pass iff every deviation <= k / sqrt(N).

    The reported p-value is exp(-N dev^2), the tail of |ECF - cf| for a
    complex normal error of total variance 1/N (the worst case per point).
    """
    xs = np.asarray(xs, dtype=float)
    grid = [np.atleast_1d(np.asarray(g, dtype=float)) for g in grid]
    if not grid:
        raise ValueError("grid is empty")
    n = xs.shape[0]
    devs = [abs(ecf(xs, g) - complex(cf(g))) for g in grid]
    dev = max(devs)
    tol = k / math.sqrt(n)
    return TestReport(name, dev, math.exp(-n * dev * dev), n, 0, seed,
                      PASS if dev <= tol else FAIL, test="ecf", tolerance=tol,
                      detail=f"max |ECF-cf| over {len(grid)} points")


# ---------------------------------------------------------------------------
# moments and correlations


def mean_check(values, target: float, *, name: str = "mean_check", k: float = 3.0,
               se: float | None = None, seed: int | None = None) -> TestReport:
    """|mean - target| <= k standard errors (estimated from the sample unless given)."""
    v = _clean(values, "sample")
    if se is None:
        se = float(np.std(v, ddof=1) / math.sqrt(v.size)) if v.size > 1 else 0.0
    dev = abs(float(np.mean(v)) - target)
    if se == 0.0:
        ok, p = dev == 0.0, 1.0 if dev == 0.0 else 0.0
    else:
        ok, p = dev <= k * se, float(special.erfc(dev / se / math.sqrt(2.0)))
    return TestReport(name, dev, p, v.size, 0, seed, PASS if ok else FAIL, test="mean",
                      tolerance=k * se, detail=f"target {target:.10g}")


def correlation_check(a, b, *, expect: str = "zero", name: str = "correlation_check",
                      k: float = 3.0, seed: int | None = None) -> TestReport:
    """Sample correlation against the +-k/sqrt(N) band.

    ``expect="zero"`` passes inside the band; ``expect="positive"`` (a
    positive control) passes only above it.
    """
    a = _clean(a, "first sample")
    b = _clean(b, "second sample")
    if a.size != b.size:
        raise ValueError("correlation needs paired samples")
    n = a.size
    if np.std(a) == 0 or np.std(b) == 0:
        rho = 0.0
    else:
        rho = float(np.corrcoef(a, b)[0, 1])
    tol = k / math.sqrt(n)
    z = rho * math.sqrt(n)
    if expect == "zero":
        ok, p = abs(rho) <= tol, float(special.erfc(abs(z) / math.sqrt(2.0)))
    elif expect == "positive":
        ok, p = rho > tol, float(0.5 * special.erfc(z / math.sqrt(2.0)))
    else:
        raise ValueError(f"expect must be 'zero' or 'positive', got {expect!r}")
    return TestReport(name, rho, p, n, n, seed, PASS if ok else FAIL,
                      test=f"corr-{expect}", tolerance=tol)


def exact_check(values, target: float, *, name: str = "exact_check", rtol: float = 1e-12,
                seed: int | None = None) -> TestReport:
    """Every value equals ``target`` to relative tolerance ``rtol``."""
    v = _clean(values, "sample")
    dev = float(np.max(np.abs(v - target)))
    ok = dev <= rtol * max(1.0, abs(target))
    return TestReport(name, dev, 1.0 if ok else 0.0, v.size, 0, seed, PASS if ok else FAIL,
                      test="exact", tolerance=rtol * max(1.0, abs(target)))


def numeric_check(value: float, target: float, tol: float, *, name: str = "numeric_check",
                  detail: str = "") -> TestReport:
    dev = abs(float(value) - float(target))
    ok = dev <= tol
    return TestReport(name, dev, 1.0 if ok else 0.0, 1, 0, None, PASS if ok else FAIL,
                      test="numeric", tolerance=tol, detail=detail)


def bounded_norm(y, clip: float = 2.0) -> np.ndarray:
    """min(||y||, clip) over the last axis: a bounded functional for dependence checks."""
    return np.minimum(np.linalg.norm(np.asarray(y, dtype=float), axis=-1), clip)
