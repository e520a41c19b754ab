"""Median-of-means versus the empirical mean under contamination.

Corrupting fewer than K/2 blocks cannot drag the median of block means
beyond the spread of the clean blocks, while a single huge value is enough
to relocate the empirical mean anywhere.
"""

import numpy as np

from robustpac import DistributionSpec, empirical_mean, make_stream, median_of_means, sample
from robustpac.montecarlo import Contamination, CoverageConfig, coverage_experiment

spec = DistributionSpec.student_t(3.0)
N, K = 200, 20

print("single contaminated sample (t(3), N=200, 9 points replaced by 100):\n")
x = sample(spec, N, make_stream(7, 0))
bad = Contamination(fraction=0.045, value=100.0).apply(x)
print(f"  true mean          {spec.mean:8.3f}")
print(f"  empirical mean     clean {empirical_mean(x):8.3f}   contaminated {empirical_mean(bad):8.3f}")
print(f"  median of means    clean {median_of_means(x, K):8.3f}   contaminated {median_of_means(bad, K):8.3f}")

print("\ncoverage of fixed-width intervals over 2000 contaminated trials:\n")
contamination = Contamination(fraction=0.045, value=100.0)
mean_based = coverage_experiment(
    CoverageConfig(
        master_seed=7, trials=2000, n=N, distribution=spec,
        interval="chebyshev", delta=0.05, contamination=contamination,
    )
)
mom_based = coverage_experiment(
    CoverageConfig(
        master_seed=7, trials=2000, n=N, distribution=spec,
        interval="mom", k_blocks=K, contamination=contamination,
    )
)
print(f"  chebyshev around the empirical mean: {mean_based.coverage:6.1%}  (nominal {mean_based.nominal_level:.1%})")
print(f"  median-of-means interval (K={K}):    {mom_based.coverage:6.1%}  (nominal {mom_based.nominal_level:.1%})")
print("\nThe mean-centered interval never recovers: 4.5% of the mass sits at 100,")
print("shifting the center by ~4.5 while the half-width stays ~0.55.  The MoM")
print("center ignores the two spoiled blocks entirely.")
