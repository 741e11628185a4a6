import io

import numpy as np
import pytest

from conftest import N, SIG, passes_with_retry
from weakstable import stats as S
from weakstable.core import GammaRoot, GeneralizedGamma, mix
from weakstable.families import WeaklyStableFamily, sample_sphere
from weakstable.onedep import (MixingProcessSpec, cell_masses, simulate_additive_onedep,
                               simulate_substable_onedep, write_sequence_csv)
from weakstable.rngs import as_generator
from weakstable.weakconv import SemigroupFamily, power

BASE = WeaklyStableFamily.stable_isotropic(1.5, 2)
SEMI = SemigroupFamily.gamma(BASE, 1.0)
E1 = np.array([1.0, 0.0])


def test_cell_mass_validation():
    np.testing.assert_array_equal(cell_masses([1, 2]), [1.0, 2.0])
    for bad in ([1.0, -0.1], [np.inf], [np.nan]):
        with pytest.raises(ValueError):
            cell_masses(bad)


def test_additive_argument_checks():
    with pytest.raises(ValueError, match="cell masses"):
        simulate_additive_onedep(SEMI, [1.0, 1.0], 2, 0)
    with pytest.raises(ValueError):
        simulate_additive_onedep(SEMI, [1.0, 1.0], 0, 0)


def test_shapes_and_determinism():
    y = simulate_additive_onedep(SEMI, np.ones(6), 5, 3)
    assert y.shape == (5, 2)
    yr = simulate_additive_onedep(SEMI, np.ones(6), 5, 3, replications=4)
    assert yr.shape == (4, 5, 2)
    assert np.array_equal(yr, simulate_additive_onedep(SEMI, np.ones(6), 5, 3, replications=4))
    z = simulate_substable_onedep(1.2, MixingProcessSpec.constant(), 3, 0, d=3)
    assert z.shape == (3, 3)


def test_mixing_spec_validation():
    with pytest.raises(ValueError):
        MixingProcessSpec.constant(-1.0)
    with pytest.raises(ValueError):
        MixingProcessSpec("iid")
    with pytest.raises(ValueError):
        MixingProcessSpec("markov")
    neg = MixingProcessSpec.two_block(GeneralizedGamma(1, 1, 1), lambda a, b: a - b - 10)
    with pytest.raises(ValueError, match="negative"):
        neg.sample(np.random.default_rng(0), 5, 3)
    with pytest.raises(ValueError):
        simulate_substable_onedep(2.5, MixingProcessSpec.constant(), 3, 0)


def test_additive_marginal_and_stationarity():
    masses = np.array([1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0])

    def check(src):
        rng = as_generator(src)
        y = simulate_additive_onedep(SEMI, masses, 6, rng, replications=N)
        ref = mix(BASE, power(SEMI, 2.0), rng, N) @ E1
        return (S.ks_two_sample(y[:, 1] @ E1, ref, significance=SIG / 2).passed
                and S.ks_two_sample(y[:, 0] @ E1, y[:, 5] @ E1, significance=SIG / 2).passed)

    assert passes_with_retry(check)


def test_additive_uneven_masses_marginal():
    masses = np.array([0.25, 2.0, 0.75])

    def check(src):
        rng = as_generator(src)
        y = simulate_additive_onedep(SEMI, masses, 2, rng, replications=N)
        ref = mix(BASE, power(SEMI, 2.75), rng, N) @ E1
        return S.ks_two_sample(y[:, 1] @ E1, ref, significance=SIG)

    assert passes_with_retry(check)


def test_additive_one_dependence():
    def check(src):
        y = simulate_additive_onedep(SEMI, np.ones(5), 4, src, replications=N)
        g = S.bounded_norm(y)
        return (S.correlation_check(g[:, 0], g[:, 1], expect="positive").passed
                and S.correlation_check(g[:, 0], g[:, 2]).passed
                and S.correlation_check(g[:, 0], g[:, 3]).passed)

    assert passes_with_retry(check)


def test_substable_constant_is_base():
    def check(src):
        rng = as_generator(src)
        y = simulate_substable_onedep(1.3, MixingProcessSpec.constant(1.0), 2, rng, d=2, replications=N)
        ref = WeaklyStableFamily.stable_isotropic(1.3, 2).sample(rng, N)
        return S.ks_two_sample(y[:, 1, 0], ref[:, 0], significance=SIG)

    assert passes_with_retry(check)


def test_substable_exponential_cf():
    a, p = 2.0, 1.5

    def check(src):
        rng = as_generator(src)
        z = MixingProcessSpec.iid(GammaRoot(1.0, a, 1.0))
        y = simulate_substable_onedep(p, z, 1, rng, d=2, replications=N)[:, 0]
        pts = [r * d for r, d in zip(np.linspace(0.1, 3.0, 10), sample_sphere(2, rng, 10))]
        return S.ecf_compare(y, lambda xi: a / (a + np.linalg.norm(xi) ** p), pts)

    assert passes_with_retry(check)


def test_two_block_dependence_and_mapped_closure():
    spec = MixingProcessSpec.two_block(GeneralizedGamma(1, 1, 1))

    def check(src):
        y = simulate_substable_onedep(1.5, spec, 4, src, d=2, replications=N)
        g = S.bounded_norm(y)
        f = np.tanh(np.abs(y[..., 0]))
        return (S.correlation_check(g[:, 1], g[:, 2], expect="positive").passed
                and S.correlation_check(g[:, 0], g[:, 2]).passed
                and S.correlation_check(g[:, 0], g[:, 3]).passed
                and S.correlation_check(f[:, 0], f[:, 2]).passed)

    assert passes_with_retry(check)


def test_csv_export():
    buf = io.StringIO()
    write_sequence_csv(np.array([[0.5, 1.0], [-2.0, 3.25]]), buf)
    assert buf.getvalue() == "n,y0,y1\n1,0.5,1\n2,-2,3.25\n"
