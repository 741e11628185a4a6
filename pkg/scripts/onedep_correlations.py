"""Lag correlations of clipped norms for the two one-dependent constructions.

Prints corr(g(Y_1), g(Y_{1+k})) for k = 1..4 next to the +-3/sqrt(N) band;
lag 1 should sit above the band, every other lag inside it.

    python3 scripts/onedep_correlations.py --n 100000
"""

import argparse
import math

import numpy as np

from weakstable.core import GeneralizedGamma
from weakstable.families import WeaklyStableFamily
from weakstable.onedep import MixingProcessSpec, simulate_additive_onedep, simulate_substable_onedep
from weakstable.rngs import RandomSource
from weakstable.stats import bounded_norm
from weakstable.weakconv import SemigroupFamily


def lag_corr(y, max_lag):
    g = bounded_norm(y)
    return [float(np.corrcoef(g[:, 0], g[:, k])[0, 1]) for k in range(1, max_lag + 1)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000, help="independent replications")
    ap.add_argument("--max-lag", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    root = RandomSource(args.seed)
    length = args.max_lag + 1
    semi = SemigroupFamily.gamma(WeaklyStableFamily.stable_isotropic(1.5, 2), 1.0)
    rows = {
        "additive (gamma root, equal masses)":
            simulate_additive_onedep(semi, np.ones(length + 1), length, root.substream("additive"), args.n),
        "substable (two-block max of exponentials)":
            simulate_substable_onedep(1.5, MixingProcessSpec.two_block(GeneralizedGamma(1, 1, 1)), length,
                                      root.substream("two-block"), d=2, replications=args.n),
        "substable (iid exponential mixing)":
            simulate_substable_onedep(1.5, MixingProcessSpec.iid(GeneralizedGamma(1, 1, 1)), length,
                                      root.substream("iid"), d=2, replications=args.n),
    }
    band = 3.0 / math.sqrt(args.n)
    print(f"band +-{band:.4f}")
    print(f"{'construction':45s}" + "".join(f"   lag{k}" for k in range(1, args.max_lag + 1)))
    for name, y in rows.items():
        print(f"{name:45s}" + "".join(f" {c:7.4f}" for c in lag_corr(y, args.max_lag)))


if __name__ == "__main__":
    main()
