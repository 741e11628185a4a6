"""Command-line front end: ``weakstable <command> [options]``.

Spec strings::

    family    := sphere:<n> | stable:<alpha>[:d=<d>][:iid] | posstable:<alpha> | gaussian[:d=<d>]
    law       := point:<c> | gengamma:<lam>,<p>,<a> | negbinroot:<r>,<p>,<alpha>
               | gammaroot:<r>,<a>,<alpha> | posstable:<beta>
    semigroup := det:<alpha> | negbin:<p>,<alpha> | gamma:<a>,<alpha>
    measure   := lebesgue | piecewise:<b0>,<b1>,...;<r0>,<r1>,...
    grid      := <start>:<stop>:<k>      (k equal steps, k + 1 points)
    mixing    := constant:<c> | iid:<law> | two-block:<law>

Output goes to ``--out`` (stdout by default).  Floats are written with 17
significant digits so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import densities as dens
from . import verify as ver
from .core import (GammaRoot, GeneralizedGamma, MixingLaw, NegBinRoot, PointMass, PositiveStable,
                   coerce, mix)
from .families import WeaklyStableFamily
from .levy import TimeMeasure, simulate_levy
from .onedep import (MixingProcessSpec, simulate_additive_onedep, simulate_substable_onedep,
                     write_sequence_csv)
from .rngs import RandomSource
from .stats import write_jsonl
from .weakconv import (CLOSED_FORM_SPHERE_2, CLOSED_FORM_STABLE, RADIAL_MONTE_CARLO, ConvolutionRule,
                       SemigroupFamily, convolve)

ENV_N = "WEAKSTABLE_N"
FALLBACK_N = 10_000
DENSITIES = ("chi", "gengamma", "posstable", "weak-stable", "weak-cauchy", "levy-half")
METHODS = (CLOSED_FORM_STABLE, CLOSED_FORM_SPHERE_2, RADIAL_MONTE_CARLO)


class SpecError(ValueError):
    """A spec string or option value that cannot be turned into a domain object."""


@dataclass
class RunConfig:
    seed: int = 0
    samples: int = FALLBACK_N
    out: str = "-"
    fmt: str = "csv"
    family: str | None = None
    laws: list[str] = field(default_factory=list)


def default_n() -> int:
    raw = os.environ.get(ENV_N)
    if raw is None:
        return FALLBACK_N
    try:
        n = int(raw)
    except ValueError:
        raise SpecError(f"{ENV_N}={raw!r} is not an integer") from None
    if n < 1:
        raise SpecError(f"{ENV_N}={raw!r} must be positive")
    return n


# ---------------------------------------------------------------------------
# spec parsing


def _num(text: str, what: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise SpecError(f"{what}: {text!r} is not a number") from None
    if not np.isfinite(v):
        raise SpecError(f"{what}: {text!r} is not finite")
    return v


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise SpecError(f"{what}: {text!r} is not an integer") from None


def _args(body: str, k: int, spec: str) -> list[float]:
    parts = body.split(",") if body else []
    if len(parts) != k:
        raise SpecError(f"{spec!r} needs {k} comma-separated parameter(s)")
    return [_num(p, spec) for p in parts]


def parse_family(spec: str) -> WeaklyStableFamily:
    head, _, rest = spec.partition(":")
    opts = rest.split(":") if rest else []
    try:
        if head == "sphere":
            if len(opts) != 1:
                raise SpecError(f"family {spec!r}: expected sphere:<n>")
            n = _int(opts[0], f"family {spec!r}")
            if n < 1:
                raise SpecError(f"family {spec!r}: sphere dimension must be >= 1, got {n}")
            return WeaklyStableFamily.sphere(n)
        if head == "stable":
            if not opts:
                raise SpecError(f"family {spec!r}: expected stable:<alpha>[:d=<d>][:iid]")
            alpha = _num(opts[0], f"family {spec!r}")
            d, iid = 1, False
            for o in opts[1:]:
                if o.startswith("d="):
                    d = _int(o[2:], f"family {spec!r}")
                elif o == "iid":
                    iid = True
                else:
                    raise SpecError(f"family {spec!r}: unknown option {o!r}")
            ctor = WeaklyStableFamily.stable_iid if iid else WeaklyStableFamily.stable_isotropic
            return ctor(alpha, d)
        if head == "posstable":
            if len(opts) != 1:
                raise SpecError(f"family {spec!r}: expected posstable:<alpha>")
            return WeaklyStableFamily.positive_stable(_num(opts[0], f"family {spec!r}"))
        if head == "gaussian":
            d = 1
            for o in opts:
                if not o.startswith("d="):
                    raise SpecError(f"family {spec!r}: unknown option {o!r}")
                d = _int(o[2:], f"family {spec!r}")
            return WeaklyStableFamily.gaussian(d)
    except SpecError:
        raise
    except ValueError as e:
        raise SpecError(f"family {spec!r}: {e}") from None
    raise SpecError(f"family {spec!r}: unknown family {head!r}")


def parse_law(spec: str) -> MixingLaw:
    head, _, body = spec.partition(":")
    try:
        if head == "point":
            return PointMass(*_args(body, 1, f"law {spec}"))
        if head == "gengamma":
            return GeneralizedGamma(*_args(body, 3, f"law {spec}"))
        if head == "negbinroot":
            return NegBinRoot(*_args(body, 3, f"law {spec}"))
        if head == "gammaroot":
            return GammaRoot(*_args(body, 3, f"law {spec}"))
        if head == "posstable":
            return PositiveStable(*_args(body, 1, f"law {spec}"))
    except SpecError:
        raise
    except ValueError as e:
        raise SpecError(f"law {spec!r}: {e}") from None
    raise SpecError(f"law {spec!r}: unknown law {head!r}")


def parse_semigroup(spec: str, base: WeaklyStableFamily) -> SemigroupFamily:
    head, _, body = spec.partition(":")
    if head == "det":
        (alpha,), extra = _args(body, 1, f"semigroup {spec}"), {}
    elif head == "negbin":
        p, alpha = _args(body, 2, f"semigroup {spec}")
        extra = {"p": p}
    elif head == "gamma":
        a, alpha = _args(body, 2, f"semigroup {spec}")
        extra = {"rate": a}
    else:
        raise SpecError(f"semigroup {spec!r}: unknown semigroup {head!r}")
    if not base.is_stable:
        raise SpecError(f"semigroup {spec!r}: base family {base.describe()} is not stable")
    if alpha != base.index:
        raise SpecError(f"semigroup {spec!r}: alpha={alpha:g} does not match family alpha={base.index:g}")
    try:
        if head == "det":
            return SemigroupFamily.deterministic(base)
        if head == "negbin":
            return SemigroupFamily.negative_binomial(base, extra["p"])
        return SemigroupFamily.gamma(base, extra["rate"])
    except ValueError as e:
        raise SpecError(f"semigroup {spec!r}: {e}") from None


def parse_measure(spec: str) -> TimeMeasure:
    if spec == "lebesgue":
        return TimeMeasure.lebesgue()
    head, _, body = spec.partition(":")
    if head != "piecewise" or ";" not in body:
        raise SpecError(f"measure {spec!r}: expected lebesgue or piecewise:<b0>,...;<r0>,...")
    b, r = body.split(";", 1)
    try:
        return TimeMeasure.piecewise([_num(x, f"measure {spec!r}") for x in b.split(",")],
                                     [_num(x, f"measure {spec!r}") for x in r.split(",")])
    except SpecError:
        raise
    except ValueError as e:
        raise SpecError(f"measure {spec!r}: {e}") from None


def parse_grid(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise SpecError(f"grid {spec!r}: expected <start>:<stop>:<k>")
    a, b = _num(parts[0], f"grid {spec!r}"), _num(parts[1], f"grid {spec!r}")
    k = _int(parts[2], f"grid {spec!r}")
    if k < 1 or not b > a:
        raise SpecError(f"grid {spec!r}: need stop > start and k >= 1")
    return np.linspace(a, b, k + 1)


def parse_mixing(spec: str) -> MixingProcessSpec:
    head, _, body = spec.partition(":")
    try:
        if head == "constant":
            return MixingProcessSpec.constant(*_args(body, 1, f"mixing {spec}"))
        if head == "iid":
            return MixingProcessSpec.iid(parse_law(body))
        if head == "two-block":
            return MixingProcessSpec.two_block(parse_law(body))
    except SpecError:
        raise
    except ValueError as e:
        raise SpecError(f"mixing {spec!r}: {e}") from None
    raise SpecError(f"mixing {spec!r}: unknown mixing process {head!r}")


# ---------------------------------------------------------------------------
# output


def _open(path: str):
    return sys.stdout if path == "-" else open(path, "w", newline="", encoding="utf-8")


def _emit_matrix(cfg: RunConfig, arr: np.ndarray, cols: list[str], meta: dict) -> None:
    fh = _open(cfg.out)
    try:
        if cfg.fmt == "json":
            doc = dict(meta, columns=cols, rows=[[float(f"{v:.17g}") for v in row] for row in arr])
            fh.write(json.dumps(doc, sort_keys=True) + "\n")
        else:
            fh.write(",".join(cols) + "\n")
            for row in arr:
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


def _xcols(d: int, prefix: str = "x") -> list[str]:
    return [f"{prefix}{j}" for j in range(d)]


# ---------------------------------------------------------------------------
# commands


def cmd_sample(cfg: RunConfig, args) -> int:
    family = parse_family(args.family)
    law = parse_law(args.law)
    try:
        law = coerce(family, law)
    except ValueError as e:
        raise SpecError(f"law {args.law!r}: {e}") from None
    x = mix(family, law, RandomSource(cfg.seed).generator(), cfg.samples)
    _emit_matrix(cfg, x, _xcols(family.dim),
                 {"command": "sample", "family": args.family, "law": args.law, "seed": cfg.seed})
    return 0


def cmd_convolve(cfg: RunConfig, args) -> int:
    family = parse_family(args.family)
    l1, l2 = parse_law(args.law1), parse_law(args.law2)
    try:
        rule = (ConvolutionRule(family, args.method) if args.method
                else ConvolutionRule.for_family(family))
    except ValueError as e:
        raise SpecError(f"--method {args.method or 'default'} with family {args.family!r}: {e}") from None
    try:
        law = convolve(rule, l1, l2)
    except ValueError as e:
        raise SpecError(f"laws {args.law1!r}, {args.law2!r}: {e}") from None
    t = law.sample(RandomSource(cfg.seed).generator(), cfg.samples)
    _emit_matrix(cfg, np.asarray(t, float)[:, None], ["theta"],
                 {"command": "convolve", "family": args.family, "law1": args.law1, "law2": args.law2,
                  "method": rule.method, "seed": cfg.seed})
    return 0


def _density_fn(args):
    w = args.which
    need = {"chi": ("n",), "weak-cauchy": ("n",), "weak-stable": ("alpha", "n"),
            "gengamma": ("lam", "p", "a"), "posstable": ("beta",), "levy-half": ()}[w]
    for k in need:
        if getattr(args, k) is None:
            raise SpecError(f"density {w!r} needs --{k}")
    try:
        if w == "chi":
            dens.chi_density(args.n, 1.0)
            return lambda r: dens.chi_density(args.n, r)
        if w == "weak-cauchy":
            dens.weak_cauchy_density(args.n, 1.0)
            return lambda r: dens.weak_cauchy_density(args.n, r)
        if w == "weak-stable":
            dens.weak_stable_density(args.alpha, args.n, -1.0)
            return lambda r: dens.weak_stable_density(args.alpha, args.n, r)
        if w == "gengamma":
            dens.generalized_gamma_density(args.lam, args.p, args.a, 1.0)
            return lambda r: dens.generalized_gamma_density(args.lam, args.p, args.a, r)
        if w == "posstable":
            dens.positive_stable_density(args.beta, -1.0)
            return lambda r: dens.positive_stable_density(args.beta, r)
    except ValueError as e:
        raise SpecError(f"density {w!r}: {e}") from None
    return dens.levy_half_density


def cmd_density(cfg: RunConfig, args) -> int:
    f = _density_fn(args)
    xs = parse_grid(args.grid)
    grid = dens.DensityGrid(xs, np.asarray(f(xs), dtype=float))
    _emit_matrix(cfg, np.column_stack([grid.abscissae, grid.values]), ["x", "density"],
                 {"command": "density", "which": args.which})
    return 0


def cmd_levy(cfg: RunConfig, args) -> int:
    base = parse_family(args.family)
    semi = parse_semigroup(args.semigroup, base)
    m = parse_measure(args.measure)
    grid = parse_grid(args.grid)
    if grid[0] != 0.0:
        raise SpecError(f"grid {args.grid!r}: a path grid must start at 0")
    if args.paths < 1:
        raise SpecError(f"--paths must be >= 1, got {args.paths}")
    path = simulate_levy(semi, m, grid, RandomSource(cfg.seed).generator(), n_paths=args.paths)
    d = base.dim
    rows = [[k, t, *path.states[k, i]] for k in range(args.paths) for i, t in enumerate(grid)]
    _emit_matrix(cfg, np.asarray(rows, float), ["path", "t", *_xcols(d)],
                 {"command": "levy", "semigroup": args.semigroup, "family": args.family,
                  "measure": args.measure, "seed": cfg.seed})
    return 0


def cmd_onedep(cfg: RunConfig, args) -> int:
    if args.length < 1:
        raise SpecError(f"--length must be >= 1, got {args.length}")
    rng = RandomSource(cfg.seed).generator()
    if args.kind == "additive":
        if args.semigroup is None:
            raise SpecError("onedep additive needs --semigroup")
        base = parse_family(args.family)
        semi = parse_semigroup(args.semigroup, base)
        if args.masses is None:
            masses = np.ones(args.length + 1)
        else:
            masses = np.array([_num(v, f"--masses {args.masses!r}") for v in args.masses.split(",")])
            if masses.size != args.length + 1:
                raise SpecError(f"--masses {args.masses!r}: need length + 1 = {args.length + 1} values")
        try:
            y = simulate_additive_onedep(semi, masses, args.length, rng)
        except ValueError as e:
            raise SpecError(f"--masses {args.masses!r}: {e}") from None
    else:
        if args.p is None or args.mixing is None:
            raise SpecError("onedep substable needs --p and --mixing")
        if not (0 < args.p <= 2):
            raise SpecError(f"--p {args.p:g}: must lie in (0, 2]")
        if args.d < 1:
            raise SpecError(f"--d {args.d}: must be >= 1")
        y = simulate_substable_onedep(args.p, parse_mixing(args.mixing), args.length, rng, d=args.d)
    n = np.arange(1, y.shape[0] + 1, dtype=float)[:, None]
    if cfg.fmt == "csv":
        fh = _open(cfg.out)
        try:
            write_sequence_csv(y, fh)
        finally:
            if fh is not sys.stdout:
                fh.close()
    else:
        _emit_matrix(cfg, np.hstack([n, y]), ["n", *_xcols(y.shape[1], "y")],
                     {"command": "onedep", "kind": args.kind, "seed": cfg.seed})
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    if args.suite not in (*ver.SUITES, "all"):
        raise SpecError(f"--suite {args.suite!r}: choose from {', '.join([*ver.SUITES, 'all'])}")
    n = args.samples if args.samples is not None else ver.DEFAULT_N
    reports = ver.run_suite(args.suite, seed=cfg.seed, n=n, significance=args.significance,
                            retry=not args.no_retry)
    fh = _open(cfg.out)
    try:
        write_jsonl(reports, fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    failed = [r.name for r in reports if not r.passed]
    if not args.quiet:
        for r in reports:
            print(r.line(), file=sys.stderr)
    print(f"{len(reports) - len(failed)}/{len(reports)} passed", file=sys.stderr)
    if failed:
        print("failing tests:", file=sys.stderr)
        for name in failed:
            print(f"  {name}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _common(sample_count: bool = True) -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand from clobbering a value given before it
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="master seed (default 0)")
    if sample_count:
        p.add_argument("--n", dest="samples", type=int, default=argparse.SUPPRESS,
                       help=f"number of draws (default ${ENV_N} or {FALLBACK_N})")
    p.add_argument("--out", default=argparse.SUPPRESS, help="output path, '-' for stdout")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="weakstable", parents=[_common()],
                                  description="Weakly stable laws: sampling, weak convolution, "
                                              "densities, processes and verification.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[_common()], help="draws of Theta * X")
    p.add_argument("--family", required=True)
    p.add_argument("--law", required=True)

    p = sub.add_parser("convolve", parents=[_common()], help="draws of law1 (+) law2")
    p.add_argument("--family", required=True)
    p.add_argument("--law1", required=True)
    p.add_argument("--law2", required=True)
    p.add_argument("--method", choices=METHODS, default=None)

    p = sub.add_parser("density", parents=[_common(sample_count=False)], help="tabulate a density")
    p.add_argument("--which", required=True, choices=DENSITIES)
    p.add_argument("--grid", default="0:10:200")
    p.add_argument("--n", type=int, default=None, help="dimension for chi / weak-cauchy / weak-stable")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--lam", type=float, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--a", type=float, default=None)

    p = sub.add_parser("levy", parents=[_common(sample_count=False)], help="weakly stable Levy paths")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--measure", default="lebesgue")
    p.add_argument("--grid", default="0:1:100")
    p.add_argument("--paths", type=int, default=1)

    p = sub.add_parser("onedep", parents=[_common(sample_count=False)], help="one-dependent sequences")
    p.add_argument("--kind", choices=("additive", "substable"), required=True)
    p.add_argument("--length", type=int, default=100)
    p.add_argument("--semigroup")
    p.add_argument("--family", default="stable:1")
    p.add_argument("--masses", help="comma-separated cell masses (length + 1 values, default all 1)")
    p.add_argument("--p", type=float)
    p.add_argument("--mixing")
    p.add_argument("--d", type=int, default=1)

    p = sub.add_parser("verify", parents=[_common()], help="run a verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--significance", type=float, default=ver.SIGNIFICANCE)
    p.add_argument("--no-retry", action="store_true")
    p.add_argument("--quiet", action="store_true", help="only print the summary on stderr")
    return top


COMMANDS = {"sample": cmd_sample, "convolve": cmd_convolve, "density": cmd_density,
            "levy": cmd_levy, "onedep": cmd_onedep, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        samples = getattr(args, "samples", None)
        if samples is None and (args.command != "verify" or ENV_N in os.environ):
            samples = default_n()
        if samples is not None and samples < 1:
            raise SpecError(f"--n {samples}: must be >= 1")
        if args.command == "verify":
            args.samples = samples  # None means the suite default
        laws = [getattr(args, k) for k in ("law", "law1", "law2") if getattr(args, k, None)]
        cfg = RunConfig(seed=getattr(args, "seed", 0), samples=samples or FALLBACK_N,
                        out=getattr(args, "out", "-"), fmt=getattr(args, "fmt", "csv"),
                        family=getattr(args, "family", None), laws=laws)
        return COMMANDS[args.command](cfg, args)
    except SpecError as e:
        print(f"weakstable {args.command}: error: {e}", file=sys.stderr)
        return 2
    except dens.QuadratureError as e:
        print(f"weakstable {args.command}: quadrature failure: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"weakstable {args.command}: cannot write output: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
