import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special, stats

from weakstable import families as F
from weakstable.families import WeaklyStableFamily
from weakstable.rngs import RandomSource
from weakstable.stats import ecf_compare, ks_vs_cdf, mean_check

from conftest import N, SIG, passes_with_retry


@given(st.integers(1, 12), st.integers(0, 10_000))
def test_sphere_norm(n, seed):
    u = F.sample_sphere(n, RandomSource(seed), 200)
    assert u.shape == (200, n)
    assert np.max(np.abs(np.linalg.norm(u, axis=1) - 1.0)) <= 1e-12


def test_sphere_rejects_zero():
    with pytest.raises(ValueError, match="dimension"):
        F.sample_sphere(0, RandomSource(0))


def test_sphere1_signs():
    u = F.sample_sphere(1, RandomSource(1), N)[:, 0]
    assert set(np.unique(u)) == {-1.0, 1.0}
    assert abs(np.mean(u > 0) - 0.5) <= 3 * 0.5 / math.sqrt(N)


def test_sphere3_coordinate_means():
    u = F.sample_sphere(3, RandomSource(2), N)
    # Var(U_j) = 1/3
    assert np.all(np.abs(u.mean(axis=0)) <= 3 / math.sqrt(3 * N))


def test_stable_alpha2_is_normal_var2():
    x = F.sample_stable_symmetric(2.0, RandomSource(3), N)
    assert ks_vs_cdf(x, stats.norm(scale=math.sqrt(2)).cdf, significance=SIG).passed


def test_stable_alpha1_is_cauchy():
    x = F.sample_stable_symmetric(1.0, RandomSource(4), N)
    assert ks_vs_cdf(x, stats.cauchy.cdf, significance=SIG).passed


@pytest.mark.parametrize("alpha", [0.5, 1.2, 1.8])
def test_stable_matches_scipy_levy_stable(alpha):
    x = F.sample_stable_symmetric(alpha, RandomSource(5), 20_000)
    ref = stats.levy_stable(alpha, 0.0)
    assert ks_vs_cdf(x, ref.cdf, significance=SIG).passed


@pytest.mark.parametrize("alpha", [0.0, -1.0, 2.5])
def test_stable_rejects_alpha(alpha):
    with pytest.raises(ValueError):
        F.sample_stable_symmetric(alpha, RandomSource(0), 3)


@pytest.mark.parametrize("beta", [0.3, 0.5, 0.8])
def test_positive_stable_laplace(beta):
    x = F.sample_positive_stable(beta, RandomSource(6), N)
    assert x.min() > 0
    e = np.exp(-x)
    rep = mean_check(e, math.exp(-1.0))
    assert rep.passed, rep
    assert np.mean(np.exp(-0.0 * x)) == 1.0


def test_positive_stable_half_is_levy():
    # Laplace transform exp(-sqrt(t)) <=> Levy law with scale 1/2
    x = F.sample_positive_stable(0.5, RandomSource(7), N)
    assert ks_vs_cdf(x, stats.levy(scale=0.5).cdf, significance=SIG).passed


@pytest.mark.parametrize("beta", [0.0, 1.0])
def test_positive_stable_rejects(beta):
    with pytest.raises(ValueError):
        F.sample_positive_stable(beta, RandomSource(0))


@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_gengamma_is_chi(n):
    assert passes_with_retry(lambda src: ks_vs_cdf(F.sample_generalized_gamma(2, n, 2, src, N),
                                                   stats.chi(n).cdf, significance=SIG), seed=8)


def test_gengamma_a1_is_gamma():
    x = F.sample_generalized_gamma(1.7, 2.5, 1, RandomSource(9), N)
    assert ks_vs_cdf(x, stats.gamma(2.5, scale=1.7).cdf, significance=SIG).passed


def test_gengamma_rayleigh_median():
    x = F.sample_generalized_gamma(2, 2, 2, RandomSource(10), N)
    med = math.sqrt(2 * math.log(2))
    assert med == pytest.approx(1.17741, abs=1e-5)
    # median standard error 1/(2 f(m) sqrt(N)) with f(m) = m e^{-m^2/2}
    se = 1 / (2 * med * 0.5 * math.sqrt(N))
    assert abs(np.median(x) - med) <= 3 * se


def test_gengamma_rejects():
    with pytest.raises(ValueError):
        F.sample_generalized_gamma(0, 1, 1, RandomSource(0))


def test_negbin():
    assert np.all(F.sample_negative_binomial(0, 0.3, RandomSource(1), 100) == 0)
    k = F.sample_negative_binomial(1, 0.6, RandomSource(2), N)
    assert abs(np.mean(k == 0) - 0.6) <= 3 * math.sqrt(0.24 / N)
    k = F.sample_negative_binomial(2.5, 0.5, RandomSource(3), N)
    assert mean_check(k, 2.5).passed
    # brute-force sum of the mass function for the mean
    j = np.arange(0, 400)
    pmf = np.exp(special.gammaln(j + 2.5) - special.gammaln(2.5) - special.gammaln(j + 1)) * 0.5 ** 2.5 * 0.5 ** j
    assert float(np.sum(j * pmf)) == pytest.approx(2.5, rel=1e-12)
    with pytest.raises(ValueError):
        F.sample_negative_binomial(1, 1.0, RandomSource(0))


def test_negbin_matches_scipy():
    k = F.sample_negative_binomial(2.5, 0.4, RandomSource(4), N)
    ks = np.arange(0, 8)
    emp = np.array([np.mean(k == v) for v in ks])
    pmf = stats.nbinom(2.5, 0.4).pmf(ks)
    assert np.all(np.abs(emp - pmf) <= 4 * np.sqrt(pmf * (1 - pmf) / N))


@pytest.mark.parametrize("n", [1, 3])
def test_weak_cauchy_sampler(n):
    x = F.sample_weak_cauchy(n, RandomSource(5), N)
    if n == 1:
        cdf = lambda r: 2 / math.pi * np.arctan(r)
    else:
        cdf = lambda r: 2 / math.pi * (np.arctan(r) - r / (1 + r * r))
    assert ks_vs_cdf(x, cdf, significance=SIG).passed


FAMILIES = [WeaklyStableFamily.sphere(1), WeaklyStableFamily.sphere(3), WeaklyStableFamily.stable_isotropic(1.5, 2),
            WeaklyStableFamily.stable_iid(0.8, 2), WeaklyStableFamily.stable_isotropic(2.0, 3, 0.5),
            WeaklyStableFamily.positive_stable(0.6), WeaklyStableFamily.gaussian(2)]


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.describe())
def test_cf_at_zero(fam):
    assert fam.cf(np.zeros(fam.dim)) == 1


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.describe())
@given(xi=st.lists(st.floats(-50, 50, allow_nan=False), min_size=3, max_size=3))
def test_cf_bounded(fam, xi):
    assert abs(fam.cf(np.array(xi[:fam.dim]))) <= 1 + 1e-9


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.describe())
def test_ecf_matches_cf(fam):
    x = fam.sample(RandomSource(12), N)
    dirs = F.sample_sphere(fam.dim, RandomSource(13), 20)
    grid = [r * d for r, d in zip(np.linspace(0.1, 4.0, 20), dirs)]
    rep = ecf_compare(x, fam.cf, grid)
    assert rep.passed, rep


def test_cf_examples():
    assert F.cf_family(WeaklyStableFamily.sphere(1), [0.7]) == pytest.approx(math.cos(0.7), abs=1e-15)
    xi = np.array([0.6, 0.8, 0.0])
    assert F.cf_family(WeaklyStableFamily.stable_isotropic(2.0, 3), xi).real == pytest.approx(math.exp(-1), abs=1e-15)
    assert math.exp(-1) == pytest.approx(0.36788, abs=1e-5)
    with pytest.raises(ValueError, match="shape"):
        WeaklyStableFamily.sphere(3).cf([1.0, 2.0])


@given(st.integers(2, 9), st.floats(0.0, 40.0))
def test_sphere_cf_vs_quadrature(n, r):
    # E cos(r U_1) with U_1 density proportional to (1 - t^2)^{(n-3)/2}
    from scipy import integrate
    c = math.exp(special.gammaln(n / 2) - special.gammaln((n - 1) / 2) - 0.5 * math.log(math.pi))
    val = integrate.quad(lambda t: math.cos(r * t) * c * (1 - t * t) ** ((n - 3) / 2), -1, 1,
                         epsabs=1e-12, limit=200)[0]
    assert F.sphere_cf(n, r) == pytest.approx(val, abs=1e-8)


def test_family_validation():
    with pytest.raises(ValueError):
        WeaklyStableFamily.sphere(0)
    with pytest.raises(ValueError):
        WeaklyStableFamily.positive_stable(1.2)
    with pytest.raises(ValueError):
        WeaklyStableFamily.stable_isotropic(2.2)


def test_family_properties():
    assert WeaklyStableFamily.sphere(3).rotationally_invariant
    assert not WeaklyStableFamily.stable_iid(1.0, 2).rotationally_invariant
    assert WeaklyStableFamily.stable_iid(2.0, 2).rotationally_invariant
    assert not WeaklyStableFamily.positive_stable(0.5).symmetric
    assert WeaklyStableFamily.sphere(2).alpha is None
    assert WeaklyStableFamily.stable_isotropic(1.5, 2).describe() == "stable:1.5:d=2"


def test_gaussian_family_is_standard_normal():
    x = WeaklyStableFamily.gaussian(2).sample(RandomSource(14), N)
    for j in range(2):
        assert ks_vs_cdf(x[:, j], stats.norm.cdf, significance=SIG / 2).passed


@pytest.mark.parametrize("n", [2, 3])
def test_subordination_alpha_1p5(n):
    # U^n Gamma_n sqrt(Theta_{alpha/2}) is isotropic alpha-stable; here scale-matched
    from weakstable.core import GeneralizedGamma, PositiveStable, SamplerLaw, mix
    alpha = 1.5
    radial = SamplerLaw(lambda g, k: GeneralizedGamma(2, n, 2)._draw(g, k)
                        * np.sqrt(2 * PositiveStable(alpha / 2)._draw(g, k)), True)
    y = mix(WeaklyStableFamily.sphere(n), radial, RandomSource(15), N)
    ref = WeaklyStableFamily.stable_isotropic(alpha, n).sample(RandomSource(16), N)
    from weakstable.stats import ks_two_sample
    assert ks_two_sample(y[:, 0], ref[:, 0], significance=SIG).passed
