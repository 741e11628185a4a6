"""Weakly stable distributions, their generalized convolution, and processes built from them."""

from .core import (Absolute, Empirical, GammaRoot, GeneralizedGamma, MixingLaw, NegBinRoot, PointMass,
                   PositiveStable, Root, SamplerLaw, Scaled, Symmetrized, WeakCauchy, abs_law, coerce,
                   mix, root, scale, symmetrize)
from .densities import (DensityGrid, QuadratureError, chi_density, generalized_gamma_density,
                        levy_half_density, positive_stable_density, weak_cauchy_density,
                        weak_stable_density)
from .families import WeaklyStableFamily, cf_family
from .levy import PathSample, TimeMeasure, cf_gamma_levy, cf_negbin_levy, measure_of, simulate_levy
from .onedep import MixingProcessSpec, simulate_additive_onedep, simulate_substable_onedep
from .rngs import RandomSource
from .stats import TestReport
from .weakconv import ConvolutionRule, SemigroupFamily, convolve, power, sample_power

__version__ = "0.1.0"
