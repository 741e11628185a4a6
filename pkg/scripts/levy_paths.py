"""Export sample paths of weakly stable Levy processes, one CSV per semigroup.

    python3 scripts/levy_paths.py --paths 5 --steps 200 --outdir paths
"""

import argparse
import csv
import os

import numpy as np

from weakstable.families import WeaklyStableFamily
from weakstable.levy import TimeMeasure, simulate_levy
from weakstable.rngs import RandomSource
from weakstable.weakconv import SemigroupFamily


def semigroups(alpha, d):
    iso = WeaklyStableFamily.stable_isotropic(alpha, d)
    return {
        "brownian": SemigroupFamily.deterministic(WeaklyStableFamily.gaussian(d)),
        "deterministic": SemigroupFamily.deterministic(iso),
        "negbin": SemigroupFamily.negative_binomial(iso, 0.5),
        "gamma": SemigroupFamily.gamma(iso, 1.0),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=1.5)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--t", type=float, default=1.0)
    ap.add_argument("--steps", type=int, default=200)
    ap.add_argument("--paths", type=int, default=5)
    ap.add_argument("--piecewise", action="store_true", help="rate 1 on [0, t/2), rate 4 after")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--outdir", default="paths")
    args = ap.parse_args(argv)

    os.makedirs(args.outdir, exist_ok=True)
    grid = np.linspace(0.0, args.t, args.steps + 1)
    m = (TimeMeasure.piecewise([0.0, args.t / 2], [1.0, 4.0]) if args.piecewise
         else TimeMeasure.lebesgue())
    root = RandomSource(args.seed)
    for name, semi in semigroups(args.alpha, args.d).items():
        ps = simulate_levy(semi, m, grid, root.substream(name), n_paths=args.paths)
        path = os.path.join(args.outdir, f"{name}.csv")
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["path", "t", *[f"x{j}" for j in range(args.d)]])
            for k in range(args.paths):
                for t, row in zip(grid, ps.states[k]):
                    w.writerow([k, f"{t:.17g}", *[f"{v:.17g}" for v in row]])
        jumps = np.max(np.linalg.norm(ps.increments(), axis=-1))
        print(f"{name:14s} -> {path}  largest increment {jumps:.3g}")


if __name__ == "__main__":
    main()
