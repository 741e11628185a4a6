import io
import json
import math

import numpy as np
import pytest

from conftest import N, SIG, passes_with_retry
from weakstable import densities as D
from weakstable import verify as V
from weakstable.core import GeneralizedGamma, PointMass, PositiveStable, WeakCauchy, root
from weakstable.families import WeaklyStableFamily
from weakstable.rngs import RandomSource
from weakstable.stats import TestReport, ks_vs_cdf, write_jsonl
from weakstable.weakconv import CLOSED_FORM_SPHERE_2, CLOSED_FORM_STABLE, ConvolutionRule


def test_suite_registry():
    assert set(V.ALL) == {"lemma1", "lemma2", "example3", "levy", "onedep"}
    assert "negative" in V.SUITES
    names = [c.name for c in V.suite_checks("all")]
    assert len(names) == len(set(names))
    with pytest.raises(ValueError, match="unknown suite"):
        V.suite_checks("lemma9")


def test_weak_stability_gaussian_point_masses():
    rule = ConvolutionRule(WeaklyStableFamily.stable_isotropic(2.0, 2), CLOSED_FORM_STABLE)
    assert passes_with_retry(lambda src: all(
        r.passed for r in V.weak_stability_check(rule, PointMass(1), PointMass(1), 3, src, N, SIG / 3)))


def test_weak_stability_sphere2():
    rule = ConvolutionRule(WeaklyStableFamily.sphere(2), CLOSED_FORM_SPHERE_2)
    assert passes_with_retry(lambda src: all(
        r.passed for r in V.weak_stability_check(rule, PointMass(1), PointMass(1), 3, src, N, SIG / 3)))


def test_wrong_exponent_fails():
    rule = ConvolutionRule(WeaklyStableFamily.stable_isotropic(1.0, 2), CLOSED_FORM_STABLE, exponent=2.0)
    reps = V.weak_stability_check(rule, PointMass(1), PointMass(1), 5, RandomSource(42), N, SIG / 5)
    assert any(not r.passed for r in reps)
    with pytest.raises(ValueError):
        V.weak_stability_check(rule, PointMass(1), PointMass(1), 0, RandomSource(42))


def test_strict_stability_examples():
    alpha, p = 1.5, 0.6
    cases = [
        (WeaklyStableFamily.stable_isotropic(alpha, 2), root(PositiveStable(p), alpha), alpha * p),
        (WeaklyStableFamily.sphere(3), GeneralizedGamma(2, 3, 2), 2.0),
        (WeaklyStableFamily.sphere(3), WeakCauchy(3), 1.0),
    ]
    for fam, law, target in cases:
        assert passes_with_retry(lambda src: V.strict_stability_check(fam, law, target, src, N, SIG))
    with pytest.raises(ValueError):
        V.strict_stability_check(WeaklyStableFamily.sphere(3), PointMass(1), 2.5, 0)


def test_strict_stability_detects_wrong_index():
    rep = V.strict_stability_check(WeaklyStableFamily.sphere(3), GeneralizedGamma(2, 3, 2), 1.0,
                                   RandomSource(42), N, SIG)
    assert not rep.passed


def test_gengamma_vs_integrated_chi_cdf():
    grid = D.DensityGrid.tabulate(lambda r: D.chi_density(3, r), np.linspace(0.0, 12.0, 24001))
    assert passes_with_retry(lambda src: ks_vs_cdf(GeneralizedGamma(2, 3, 2).sample(src, N), grid.cdf))


def test_sphere2_unit_cdf_and_cauchy_cdf():
    assert V.sphere2_unit_cdf(math.sqrt(2.0)) == pytest.approx(0.5, abs=1e-15)
    assert V.sphere2_unit_cdf(0.0) == 0.0 and V.sphere2_unit_cdf(2.0) == 1.0
    assert V.cauchy_cdf(0.0) == 0.5
    assert V.cauchy_cdf(2.0, 2.0) == pytest.approx(0.75, abs=1e-15)


def test_bonferroni_split_and_stream_per_check():
    reps = V.run_suite("negative", seed=42, n=20_000)
    k = sum(c.n_tests for c in V.suite_checks("negative"))
    assert all(r.significance in (None, pytest.approx(V.SIGNIFICANCE / k)) for r in reps)
    by_check = {}
    for r in reps:
        by_check.setdefault(r.name.split("[")[0], set()).add(r.stream)
    assert all(len(s) == 1 for s in by_check.values())


def test_negative_suite_fails_deterministically_after_retry():
    reps = V.run_suite("negative", seed=42)
    assert all(not r.passed for r in reps if r.name.startswith("negative.shifted"))
    assert any(not r.passed for r in reps if r.name.startswith("negative.wrong-exponent"))
    assert all(r.retried for r in reps)


def test_retry_uses_fresh_stream():
    calls = []

    def flaky(src, n, sig):
        calls.append(src.stream)
        ok = len(calls) > 1
        return [TestReport("flaky", 0.0, 1.0 if ok else 0.0, 1, verdict="pass" if ok else "fail")]

    out = V.run_check(V.Check("flaky", flaky), RandomSource(1), 10, 0.01)
    assert out[0].passed and out[0].retried and calls[0] != calls[1]
    calls.clear()
    out = V.run_check(V.Check("flaky", flaky), RandomSource(1), 10, 0.01, retry=False)
    assert not out[0].passed and len(calls) == 1


def test_lemma2_suite_reproducible_jsonl():
    def dump():
        buf = io.StringIO()
        write_jsonl(V.run_suite("lemma2", seed=42), buf)
        return buf.getvalue()

    a = dump()
    assert a == dump()
    rows = [json.loads(line) for line in a.splitlines()]
    assert rows and all(r["verdict"] == "pass" for r in rows)
