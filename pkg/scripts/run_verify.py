"""Run verification suites with per-suite timing and a JSON-lines report.

    python3 scripts/run_verify.py --suites lemma1 lemma2 example3 levy onedep --seed 42 --out reports.jsonl
"""

import argparse
import sys
import time

from weakstable import verify as V
from weakstable.stats import write_jsonl


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suites", nargs="+", default=list(V.ALL), choices=[*V.SUITES, "all"])
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--n", type=int, default=V.DEFAULT_N)
    ap.add_argument("--significance", type=float, default=V.SIGNIFICANCE)
    ap.add_argument("--out", default="reports.jsonl")
    args = ap.parse_args(argv)

    bad = 0
    with open(args.out, "w", encoding="utf-8") as fh:
        for suite in args.suites:
            t0 = time.perf_counter()
            reps = V.run_suite(suite, seed=args.seed, n=args.n, significance=args.significance)
            write_jsonl(reps, fh)
            failed = [r.name for r in reps if not r.passed]
            retried = sum(r.retried for r in reps)
            print(f"{suite:10s} {len(reps) - len(failed):4d}/{len(reps):<4d} passed  "
                  f"{retried:3d} retried  {time.perf_counter() - t0:6.1f}s")
            for name in failed:
                print(f"    FAIL {name}")
            bad += len(failed)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
