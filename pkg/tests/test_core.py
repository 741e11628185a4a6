import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from weakstable.core import (Empirical, GeneralizedGamma, PointMass, SamplerLaw, abs_law, coerce, mix,
                             root, scale, symmetrize)
from weakstable.families import WeaklyStableFamily
from weakstable.rngs import RandomSource, as_generator
from weakstable.stats import ks_two_sample, ks_vs_cdf

from conftest import N, SIG

finite = st.floats(-1e6, 1e6, allow_nan=False)


def test_scale_point_mass():
    assert scale(PointMass(3), 2) == PointMass(6)


@given(st.sampled_from([PointMass(2.0), GeneralizedGamma(1, 2, 1), Empirical(np.array([1.0, -2.0]))]))
def test_scale_zero_is_delta0(law):
    assert scale(law, 0) == PointMass(0.0)


def test_scale_symmetric_empirical_by_minus_one(rng):
    vals = rng.standard_normal(5000)
    law = Empirical(np.concatenate([vals, -vals]))
    a = law.sample(RandomSource(1), N)
    b = scale(law, -1).sample(RandomSource(2), N)
    assert ks_two_sample(a, b, significance=SIG).passed


def test_scale_composition():
    law = GeneralizedGamma(1, 2, 1)
    a = scale(scale(law, 2.0), 1.5).sample(RandomSource(3), N)
    b = scale(law, 3.0).sample(RandomSource(4), N)
    assert ks_two_sample(a, b, significance=SIG).passed


@given(finite, st.floats(-100, 100, allow_nan=False), st.floats(-100, 100, allow_nan=False))
def test_scale_composition_point_mass(c, a, b):
    assert scale(scale(PointMass(c), a), b).c == pytest.approx(scale(PointMass(c), a * b).c, rel=1e-12, abs=0)


@given(finite, st.integers(1, 50))
def test_point_mass_samples_exactly(c, k):
    assert np.all(PointMass(c).sample(RandomSource(0), k) == c)


def test_mix_sphere_point_one_is_unit_vector():
    x = mix(WeaklyStableFamily.sphere(3), PointMass(1), RandomSource(7), 1000)
    assert x.shape == (1000, 3)
    assert np.max(np.abs(np.linalg.norm(x, axis=1) - 1.0)) <= 1e-12


@pytest.mark.parametrize("family", [WeaklyStableFamily.sphere(4), WeaklyStableFamily.stable_iid(1.3, 2),
                                    WeaklyStableFamily.positive_stable(0.6)])
def test_mix_point_zero_is_zero(family):
    assert np.all(mix(family, PointMass(0), RandomSource(1), 100) == 0.0)


def test_mix_point_mass_scales_family_draws():
    fam = WeaklyStableFamily.stable_isotropic(1.5, 2)
    a = mix(fam, PointMass(2.5), RandomSource(5), 100)
    rng = RandomSource(5).generator()
    PointMass(2.5).sample(rng, 100)  # same consumption order as mix
    b = 2.5 * fam.sample(rng, 100)
    np.testing.assert_array_equal(a, b)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_mix_sphere_gengamma_is_gaussian(n):
    x = mix(WeaklyStableFamily.sphere(n), GeneralizedGamma(2, n, 2), RandomSource(11), N)
    for j in range(n):
        assert ks_vs_cdf(x[:, j], stats.norm.cdf, significance=SIG / n).passed


def test_mix_single_draw_shape():
    assert mix(WeaklyStableFamily.sphere(3), PointMass(1), RandomSource(0)).shape == (3,)


def test_abs_law():
    assert abs_law(PointMass(-2)) == PointMass(2)
    law = GeneralizedGamma(1, 2, 1)
    assert abs_law(law) is law


def test_abs_law_half_normal():
    law = SamplerLaw(lambda g, k: g.standard_normal(k), nonneg=False, label="normal")
    a = abs_law(law)
    assert a.nonnegative
    x = a.sample(RandomSource(9), N)
    assert x.min() >= 0
    assert ks_vs_cdf(x, stats.halfnorm.cdf, significance=SIG).passed


def test_symmetrize():
    assert symmetrize(PointMass(0)) == PointMass(0)
    x = symmetrize(PointMass(1)).sample(RandomSource(3), N)
    assert set(np.unique(x)) == {-1.0, 1.0}
    assert abs(np.mean(x == 1.0) - 0.5) <= 3 * 0.5 / math.sqrt(N)
    y = symmetrize(PointMass(5)).sample(RandomSource(4), N)
    assert abs(np.mean(y)) <= 3 * 5 / math.sqrt(N)


def test_nonnegative_laws_never_negative():
    for law in (GeneralizedGamma(1, 0.5, 0.7), root(GeneralizedGamma(1, 1, 1), 0.5), abs_law(Empirical([-1, 2]))):
        assert law.nonnegative
        assert law.sample(RandomSource(1), 10_000).min() >= 0


def test_coerce():
    fam = WeaklyStableFamily.sphere(2)
    assert coerce(fam, PointMass(-3)) == PointMass(3)
    pos = WeaklyStableFamily.positive_stable(0.5)
    with pytest.raises(ValueError, match="requires a mixing law"):
        coerce(pos, Empirical([-1.0, 1.0]))


def test_root_point_mass():
    assert root(PointMass(8.0), 3.0).c == pytest.approx(2.0, rel=1e-15)
    with pytest.raises(ValueError):
        root(PointMass(1.0), 0.0)


@given(st.integers(0, 2**64 - 1), st.integers(0, 2**64 - 1))
def test_random_source_determinism(seed, stream):
    a = RandomSource(seed, stream).generator().standard_normal(5)
    b = RandomSource(seed, stream).generator().standard_normal(5)
    np.testing.assert_array_equal(a, b)


def test_random_source_streams_differ():
    src = RandomSource(42)
    a = src.substream("x").generator().random(4)
    b = src.substream("y").generator().random(4)
    c = src.substream("x").generator().random(4)
    assert not np.array_equal(a, b)
    np.testing.assert_array_equal(a, c)


def test_random_source_validation():
    with pytest.raises(ValueError):
        RandomSource(-1)
    with pytest.raises(TypeError):
        as_generator("seed")


@given(st.sampled_from([WeaklyStableFamily.sphere(3), WeaklyStableFamily.stable_iid(0.7, 2),
                        WeaklyStableFamily.positive_stable(0.4)]), st.integers(0, 1000))
def test_mix_deterministic(family, seed):
    law = GeneralizedGamma(1, 2, 1)
    np.testing.assert_array_equal(mix(family, law, RandomSource(seed), 50),
                                  mix(family, law, RandomSource(seed), 50))
