"""Deterministic random sources.

A :class:`RandomSource` is a ``(seed, stream)`` pair.  Every draw in the
package goes through a numpy ``Generator`` built from it, so identical pairs
give identical sequences and distinct streams are statistically independent
(numpy's ``SeedSequence`` spawn-key mechanism).
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RandomSource:
    seed: int
    stream: int = 0

    def __post_init__(self):
        if not (0 <= self.seed <= _MASK64):
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if not (0 <= self.stream <= _MASK64):
            raise ValueError(f"stream must fit in 64 unsigned bits, got {self.stream}")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))

    def substream(self, key: int | str) -> "RandomSource":
        """Child source; ``key`` may be an int or a name (hashed with crc32)."""
        if isinstance(key, str):
            key = zlib.crc32(key.encode("utf-8"))
        mixed = np.random.SeedSequence((self.stream, int(key))).generate_state(1, np.uint64)[0]
        return RandomSource(self.seed, int(mixed))


def as_generator(src) -> np.random.Generator:
    """Accept a RandomSource, a Generator, or an int seed."""
    if isinstance(src, np.random.Generator):
        return src
    if isinstance(src, RandomSource):
        return src.generator()
    if isinstance(src, (int, np.integer)):
        return RandomSource(int(src)).generator()
    raise TypeError(f"cannot build a generator from {type(src).__name__}")
