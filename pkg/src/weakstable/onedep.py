"""One-dependent sequences built from weakly stable mixtures.

Both constructions return an array of shape (length, d), or
(replications, length, d) when ``replications`` is given; replications are
independent copies, which is what the dependence checks consume.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import MixingLaw
from .families import WeaklyStableFamily
from .rngs import as_generator
from .weakconv import SemigroupFamily, sample_power

CONSTANT = "constant"
IID = "iid"
TWO_BLOCK = "two-block"


def cell_masses(masses) -> np.ndarray:
    m = np.asarray(masses, dtype=float).ravel()
    if not np.all(np.isfinite(m)) or np.any(m < 0):
        raise ValueError("cell masses must be finite and nonnegative")
    return m


def simulate_additive_onedep(semi: SemigroupFamily, masses, length: int, src,
                             replications: int | None = None) -> np.ndarray:
    """Y_n = Z_n X_n + Z_{n+1} X_{n+1}, Z_n ~ lambda^{m(A_n)} independent."""
    m = cell_masses(masses)
    length = int(length)
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    if m.size < length + 1:
        raise ValueError(f"need at least {length + 1} cell masses, got {m.size}")
    rng = as_generator(src)
    reps = 1 if replications is None else int(replications)
    d = semi.base.dim
    terms = np.empty((reps, length + 1, d))
    for j in range(length + 1):
        z = sample_power(semi, m[j], rng, reps)
        terms[:, j, :] = z[:, None] * semi.base.sample(rng, reps)
    y = terms[:, :-1, :] + terms[:, 1:, :]
    return y[0] if replications is None else y


@dataclass(frozen=True)
class MixingProcessSpec:
    """Nonnegative one-dependent mixing sequence Z_n.

    ``constant``: Z_n = c.  ``iid``: Z_n ~ law.  ``two-block``:
    Z_n = combiner(W_n, W_{n+1}) with W_n iid from ``law``.
    """

    kind: str
    c: float = 1.0
    law: MixingLaw | None = None
    combiner: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        if self.kind == CONSTANT:
            if self.c < 0:
                raise ValueError("constant mixing value must be nonnegative")
        elif self.kind in (IID, TWO_BLOCK):
            if self.law is None or not self.law.nonnegative:
                raise ValueError(f"{self.kind} mixing needs a law on [0, inf)")
            if self.kind == TWO_BLOCK and self.combiner is None:
                raise ValueError("two-block mixing needs a combiner")
        else:
            raise ValueError(f"unknown mixing process kind {self.kind!r}")

    @classmethod
    def constant(cls, c: float = 1.0):
        return cls(CONSTANT, c=float(c))

    @classmethod
    def iid(cls, law: MixingLaw):
        return cls(IID, law=law)

    @classmethod
    def two_block(cls, law: MixingLaw, combiner=np.maximum):
        return cls(TWO_BLOCK, law=law, combiner=combiner)

    def sample(self, rng, length: int, reps: int) -> np.ndarray:
        if self.kind == CONSTANT:
            return np.full((reps, length), self.c)
        if self.kind == IID:
            return self.law.sample(rng, reps * length).reshape(reps, length)
        w = self.law.sample(rng, reps * (length + 1)).reshape(reps, length + 1)
        z = np.asarray(self.combiner(w[:, :-1], w[:, 1:]), dtype=float)
        if np.any(z < 0):
            raise ValueError("combiner produced negative mixing values")
        return z


def simulate_substable_onedep(p: float, zspec: MixingProcessSpec, length: int, src,
                              d: int = 1, replications: int | None = None,
                              isotropic: bool = True) -> np.ndarray:
    """Y_n = X_n Z_n^{1/p} with X_n iid symmetric p-stable in R^d."""
    p = float(p)
    if not (0.0 < p <= 2.0):
        raise ValueError(f"p must lie in (0, 2], got {p}")
    length = int(length)
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    rng = as_generator(src)
    reps = 1 if replications is None else int(replications)
    base = (WeaklyStableFamily.stable_isotropic(p, d) if isotropic
            else WeaklyStableFamily.stable_iid(p, d))
    z = zspec.sample(rng, length, reps)
    x = base.sample(rng, reps * length).reshape(reps, length, d)
    y = x * (z ** (1.0 / p))[:, :, None]
    return y[0] if replications is None else y


def write_sequence_csv(seq: np.ndarray, fh) -> None:
    seq = np.asarray(seq, dtype=float)
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["n"] + [f"y{j}" for j in range(seq.shape[1])])
    for i, row in enumerate(seq, start=1):
        w.writerow([i] + [f"{v:.17g}" for v in row])
