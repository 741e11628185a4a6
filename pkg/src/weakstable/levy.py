"""(lambda, mu)-weakly stable Levy processes on a time grid.

The increment over (t_{i-1}, t_i] is Theta_i X_i with
Theta_i ~ lambda^{m(t_{i-1}, t_i]} and X_i ~ mu, all independent; the path is
the running sum starting from 0.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .rngs import as_generator
from .weakconv import SemigroupFamily, sample_power

LEBESGUE = "lebesgue"
PIECEWISE = "piecewise-constant"


@dataclass(frozen=True, eq=False)
class TimeMeasure:
    """Lebesgue measure, or a measure with a piecewise-constant rate.

    For the piecewise form, ``rates[i]`` applies on
    ``[breakpoints[i], breakpoints[i+1])`` and the last rate on
    ``[breakpoints[-1], inf)``.  ``breakpoints[0]`` must be 0.
    """

    representation: str = LEBESGUE
    breakpoints: np.ndarray = field(default_factory=lambda: np.zeros(1))
    rates: np.ndarray = field(default_factory=lambda: np.ones(1))

    def __post_init__(self):
        if self.representation not in (LEBESGUE, PIECEWISE):
            raise ValueError(f"unknown time measure {self.representation!r}")
        b = np.asarray(self.breakpoints, dtype=float).ravel()
        r = np.asarray(self.rates, dtype=float).ravel()
        if self.representation == PIECEWISE:
            if b.size == 0 or b.size != r.size:
                raise ValueError("need one rate per breakpoint")
            if b[0] != 0.0 or np.any(np.diff(b) <= 0):
                raise ValueError("breakpoints must start at 0 and increase strictly")
            if np.any(r < 0) or not np.all(np.isfinite(r)):
                raise ValueError("rates must be finite and nonnegative")
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "rates", r)

    @classmethod
    def lebesgue(cls) -> "TimeMeasure":
        return cls()

    @classmethod
    def piecewise(cls, breakpoints, rates) -> "TimeMeasure":
        return cls(PIECEWISE, np.asarray(breakpoints, float), np.asarray(rates, float))

    def cumulative(self, t):
        """m[0, t]."""
        t = np.asarray(t, dtype=float)
        if self.representation == LEBESGUE:
            return t
        b, r = self.breakpoints, self.rates
        widths = np.diff(b)
        base = np.concatenate([[0.0], np.cumsum(widths * r[:-1])])
        idx = np.clip(np.searchsorted(b, t, side="right") - 1, 0, b.size - 1)
        return base[idx] + r[idx] * (t - b[idx])


def measure_of(m: TimeMeasure, s: float, t: float) -> float:
    if s > t:
        raise ValueError(f"need s <= t, got s={s}, t={t}")
    if s < 0:
        raise ValueError(f"times must be nonnegative, got s={s}")
    if s == t:
        return 0.0
    return float(m.cumulative(t) - m.cumulative(s))


@dataclass(frozen=True, eq=False)
class PathSample:
    """``states`` has shape (len(times), d) for one path or (n_paths, len(times), d)."""

    times: np.ndarray
    states: np.ndarray

    def to_csv(self, fh, path: int = 0) -> None:
        st = self.states if self.states.ndim == 2 else self.states[path]
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t"] + [f"x{j}" for j in range(st.shape[1])])
        for t, row in zip(self.times, st):
            w.writerow([f"{t:.17g}"] + [f"{v:.17g}" for v in row])

    def increments(self) -> np.ndarray:
        return np.diff(self.states, axis=-2)


def check_grid(grid) -> np.ndarray:
    g = np.asarray(grid, dtype=float).ravel()
    if g.size < 1 or g[0] != 0.0:
        raise ValueError("time grid must start at 0")
    if np.any(np.diff(g) <= 0):
        raise ValueError("time grid must be strictly increasing")
    return g


def simulate_levy(semi: SemigroupFamily, m: TimeMeasure, grid, src,
                  n_paths: int | None = None) -> PathSample:
    """Simulate one path (``n_paths=None``) or a batch of independent paths."""
    g = check_grid(grid)
    rng = as_generator(src)
    n = 1 if n_paths is None else int(n_paths)
    d = semi.base.dim
    states = np.zeros((n, g.size, d))
    cum = m.cumulative(g)
    dm = np.diff(cum)
    for i, mass in enumerate(dm, start=1):
        theta = sample_power(semi, mass, rng, n)
        x = semi.base.sample(rng, n)
        states[:, i, :] = states[:, i - 1, :] + theta[:, None] * x
    return PathSample(g, states[0] if n_paths is None else states)


def cf_negbin_levy(R, p: float, m: float):
    """(p / (1 - (1-p) e^{-R}))^m; R may be complex for one-sided bases."""
    if not (0 < p < 1) or m < 0:
        raise ValueError(f"need p in (0, 1) and m >= 0, got p={p}, m={m}")
    # 1 - (1-p) e^{-R} written as p + (1-p)(1 - e^{-R}): exact at R = 0
    return (p / (p - (1.0 - p) * np.expm1(-np.asarray(R)))) ** m


def cf_gamma_levy(R, a: float, m: float):
    """(a / (a + R))^m."""
    if a <= 0 or m < 0:
        raise ValueError(f"need a > 0 and m >= 0, got a={a}, m={m}")
    return (a / (a + np.asarray(R))) ** m
