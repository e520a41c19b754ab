"""Robust mean estimation, heavy-tail confidence intervals, f-divergences,
finite-ensemble generalisation bounds, and a deterministic Monte Carlo harness.
"""

from .distributions import DistributionSpec, RandomStream, make_stream, population_moments, sample
from .divergences import (
    D2_F,
    KL_F,
    DiscreteMeasure,
    FSpec,
    change_of_measure_gap,
    chi2_d2_discrete,
    f_divergence,
    gaussian_d2,
    gaussian_kl,
    kl_discrete,
    log_expectation_exp,
)
from .estimators import (
    BlockPartition,
    block_means,
    empirical_mean,
    median_of_means,
    partition_blocks,
)
from .intervals import (
    ConfidenceInterval,
    chebyshev_interval,
    mom_interval,
    subgaussian_interval,
    width_ratio,
    width_table,
)
from .montecarlo import (
    BoundViolationConfig,
    Contamination,
    CoverageConfig,
    CoverageReport,
    EnsembleSpec,
    GibbsComparisonConfig,
    GibbsComparisonReport,
    PosteriorSpec,
    UnionBlowupConfig,
    UnionBlowupReport,
    bound_violation_experiment,
    coverage_experiment,
    gibbs_comparison_experiment,
    preregistered_failure_probe_config,
    preregistered_gibbs_config,
    report_to_json,
    subgaussian_width_failure_probe,
    union_blowup_experiment,
)
from .pacbayes import (
    BoundReport,
    HypothesisEnsemble,
    aggregated,
    cheap_bound,
    dirac_collapse_argmin,
    empirical_risks,
    expensive_bound,
    gibbs_posterior,
    linear_loss_ensemble,
    location_squared_ensemble,
    optimal_lambda,
    robust_risk_estimates,
    sup_deviation,
)

__version__ = "0.1.0"
