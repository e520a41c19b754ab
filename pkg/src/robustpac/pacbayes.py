"""Generalisation bounds over finite hypothesis ensembles.

An ensemble bundles a per-hypothesis loss oracle with the exactly known true
risks of a synthetic learning problem, so Monte Carlo experiments can count
honest bound violations.  Two bound families are implemented, matching the two
modelling regimes of :mod:`robustpac.intervals`:

* the *expensive* bound (subgaussian losses, KL complexity):
  ``rho[R] <= rho[R_N] + (sigma/sqrt(N)) sqrt(2 (log(1/delta) + KL(rho, pi)))``
* the *cheap* bound (finite-variance losses, D2 complexity):
  ``rho[R] <= rho[R_N] + (sigma/sqrt(N)) sqrt((D2(rho, pi) + 1) / delta)``

With ``rho = pi`` the additive terms collapse to the subgaussian and Chebyshev
interval half-widths respectively.  An infinite divergence yields a vacuous
``+inf`` bound, not an error.

Gibbs posteriors ``rho proportional to pi * exp(-gamma * risk_estimates)``
interpolate between the prior (``gamma = 0``) and the Dirac mass at the
estimated-risk minimiser (``gamma -> inf``); any risk-estimate vector can be
plugged in, in particular median-of-means estimates instead of empirical means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .distributions import DistributionSpec
from .divergences import DiscreteMeasure, chi2_d2_discrete, kl_discrete
from .estimators import as_sample, partition_blocks

__all__ = [
    "HypothesisEnsemble",
    "linear_loss_ensemble",
    "location_squared_ensemble",
    "empirical_risks",
    "robust_risk_estimates",
    "aggregated",
    "optimal_lambda",
    "BoundReport",
    "expensive_bound",
    "cheap_bound",
    "gibbs_posterior",
    "sup_deviation",
    "dirac_collapse_argmin",
]


@dataclass(frozen=True)
class HypothesisEnsemble:
    """A finite hypothesis set with a loss oracle and known true risks.

    ``loss_oracle(i, data)`` returns the losses of hypothesis ``i`` on a data
    vector; it must be deterministic in ``(i, datum)``.  ``sigma`` is a bound
    with ``Var(loss_i) <= sigma**2`` for every hypothesis (and, for ensembles
    built on subgaussian data, also a valid subgaussian variance factor); it
    is ``None`` when no finite bound is available, in which case the bound
    computations cannot be applied to this ensemble.
    """

    loss_oracle: Callable[[int, np.ndarray], np.ndarray]
    true_risks: np.ndarray
    sigma: float | None = None
    matrix_oracle: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self) -> None:
        risks = np.asarray(self.true_risks, dtype=np.float64).copy()
        if risks.ndim != 1 or risks.size == 0 or not np.all(np.isfinite(risks)):
            raise ValueError("true_risks must be a non-empty finite vector")
        risks.setflags(write=False)
        object.__setattr__(self, "true_risks", risks)
        if self.sigma is not None and not (0 < self.sigma < math.inf):
            raise ValueError(f"sigma must be positive and finite, got {self.sigma}")

    @property
    def m(self) -> int:
        return int(self.true_risks.size)

    def loss_matrix(self, data) -> np.ndarray:
        """Losses of every hypothesis on every datum, shape ``(m, len(data))``."""
        x = as_sample(data)
        if self.matrix_oracle is not None:
            return self.matrix_oracle(x)
        return np.stack([np.asarray(self.loss_oracle(i, x), dtype=np.float64) for i in range(self.m)])


def linear_loss_ensemble(slopes, intercepts, spec: DistributionSpec) -> HypothesisEnsemble:
    """Hypotheses with losses ``intercept_i + slope_i * (x - mean)`` on draws of ``spec``.

    Centering makes the true risks equal the intercepts exactly, and each loss
    inherits the tail behaviour of ``spec`` scaled by its slope:
    ``Var(loss_i) = slope_i^2 * Var(spec)``, so ``sigma = max|slope| * std(spec)``
    is an exact variance bound (and an exact subgaussian variance factor when
    ``spec`` is Gaussian).
    """
    a = np.asarray(slopes, dtype=np.float64)
    b = np.asarray(intercepts, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1 or a.size == 0:
        raise ValueError("slopes and intercepts must be matching non-empty vectors")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("slopes and intercepts must be finite")
    if np.all(a == 0):
        raise ValueError("at least one slope must be nonzero (sigma > 0)")
    mean = spec.mean
    sigma = float(np.abs(a).max() * math.sqrt(spec.variance))

    def matrix(x: np.ndarray) -> np.ndarray:
        return b[:, None] + a[:, None] * (x - mean)[None, :]

    return HypothesisEnsemble(
        loss_oracle=lambda i, x: b[i] + a[i] * (np.asarray(x, dtype=np.float64) - mean),
        true_risks=b,
        sigma=sigma,
        matrix_oracle=matrix,
    )


def location_squared_ensemble(predictions, spec: DistributionSpec) -> HypothesisEnsemble:
    """Location guesses under squared loss ``(prediction_i - x)^2``.

    The true risk is exact from the population moments:
    ``R_i = (prediction_i - mean)^2 + variance``.  No finite loss-variance
    bound is recorded (heavy-tailed ``spec`` makes the squared loss's variance
    infinite), so this ensemble serves the risk-estimation and Gibbs
    experiments rather than the bound computations.
    """
    preds = np.asarray(predictions, dtype=np.float64)
    if preds.ndim != 1 or preds.size == 0 or not np.all(np.isfinite(preds)):
        raise ValueError("predictions must be a non-empty finite vector")
    risks = (preds - spec.mean) ** 2 + spec.variance

    def matrix(x: np.ndarray) -> np.ndarray:
        return (preds[:, None] - x[None, :]) ** 2

    return HypothesisEnsemble(
        loss_oracle=lambda i, x: (preds[i] - np.asarray(x, dtype=np.float64)) ** 2,
        true_risks=risks,
        sigma=None,
        matrix_oracle=matrix,
    )


def empirical_risks(ensemble: HypothesisEnsemble, data) -> np.ndarray:
    """Per-hypothesis empirical mean of the losses."""
    return ensemble.loss_matrix(data).mean(axis=1)


def robust_risk_estimates(ensemble: HypothesisEnsemble, data, k: int) -> np.ndarray:
    """Per-hypothesis median-of-means of the losses, sharing one block partition."""
    losses = ensemble.loss_matrix(data)
    n = losses.shape[1]
    part = partition_blocks(n, k)
    if n % k == 0:
        # pairwise summation, matching empirical_risks exactly when k = 1
        means = losses.reshape(ensemble.m, k, -1).mean(axis=2)
    else:
        means = np.add.reduceat(losses, part.offsets[:-1], axis=1) / part.sizes
    return np.median(means, axis=1)


def aggregated(measure: DiscreteMeasure, risks) -> float:
    """Risk aggregated under ``measure``: ``sum_i measure_i * risks_i``."""
    r = np.asarray(risks, dtype=np.float64)
    if r.shape != (measure.size,):
        raise ValueError(f"risks must have shape ({measure.size},), got {r.shape}")
    return float(np.dot(measure.weights, r))


def optimal_lambda(sigma: float, n: int, delta: float, kl: float) -> float:
    """The tilt parameter minimising the expensive bound:
    ``sqrt(2 N (log(1/delta) + KL)) / sigma``."""
    if sigma <= 0 or not math.isfinite(sigma):
        raise ValueError(f"sigma must be a positive finite real, got {sigma}")
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if not 0 <= kl < math.inf:
        raise ValueError(f"KL must be finite and nonnegative, got {kl}")
    return math.sqrt(2.0 * n * (math.log(1.0 / delta) + kl)) / sigma


@dataclass(frozen=True)
class BoundReport:
    """An evaluated generalisation bound."""

    model_tag: str  # "expensive" | "cheap"
    aggregated_empirical: float
    complexity: float  # KL or D2 value
    delta: float
    lam: float | None  # optimal tilt (expensive model only)
    bound_value: float

    def __post_init__(self) -> None:
        if self.bound_value < self.aggregated_empirical:
            raise ValueError("bound_value must dominate the aggregated empirical risk")

    def to_dict(self) -> dict:
        return {
            "model": self.model_tag,
            "rho_emp": self.aggregated_empirical,
            "complexity": self.complexity,
            "delta": self.delta,
            "lambda": self.lam,
            "bound": self.bound_value,
        }


def expensive_bound(
    rho: DiscreteMeasure,
    pi: DiscreteMeasure,
    emp_risks,
    sigma: float,
    n: int,
    delta: float,
) -> BoundReport:
    """KL-complexity bound for subgaussian losses (vacuous if ``KL = +inf``)."""
    kl = kl_discrete(rho, pi)
    rho_emp = aggregated(rho, emp_risks)
    if math.isinf(kl):
        return BoundReport("expensive", rho_emp, math.inf, delta, None, math.inf)
    lam = optimal_lambda(sigma, n, delta, kl)
    additive = sigma / math.sqrt(n) * math.sqrt(2.0 * (math.log(1.0 / delta) + kl))
    return BoundReport("expensive", rho_emp, kl, delta, lam, rho_emp + additive)


def cheap_bound(
    rho: DiscreteMeasure,
    pi: DiscreteMeasure,
    emp_risks,
    sigma: float,
    n: int,
    delta: float,
) -> BoundReport:
    """D2-complexity bound for finite-variance losses (vacuous if ``D2 = +inf``)."""
    if sigma <= 0 or not math.isfinite(sigma):
        raise ValueError(f"sigma must be a positive finite real, got {sigma}")
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    d2 = chi2_d2_discrete(rho, pi)
    rho_emp = aggregated(rho, emp_risks)
    if math.isinf(d2):
        return BoundReport("cheap", rho_emp, math.inf, delta, None, math.inf)
    additive = sigma / math.sqrt(n) * math.sqrt((d2 + 1.0) / delta)
    return BoundReport("cheap", rho_emp, d2, delta, None, rho_emp + additive)


def gibbs_posterior(pi: DiscreteMeasure, risk_estimates, gamma: float) -> DiscreteMeasure:
    """Exponentially tilted prior ``rho_i = pi_i e^{-gamma r_i} / normaliser``.

    Computed with a max shift so that large ``gamma`` underflows gracefully:
    at ``gamma = 0`` the prior is returned unchanged, and as ``gamma -> inf``
    all mass lands on the estimated-risk minimiser within the prior support.
    """
    r = np.asarray(risk_estimates, dtype=np.float64)
    if r.shape != (pi.size,):
        raise ValueError(f"risk_estimates must have shape ({pi.size},), got {r.shape}")
    if not np.all(np.isfinite(r)):
        raise ValueError("risk_estimates must be finite")
    if not 0 <= gamma < math.inf:
        raise ValueError(f"gamma must be finite and nonnegative, got {gamma}")
    if gamma == 0:
        return pi
    support = pi.weights > 0
    shift = float(r[support].min())
    w = np.zeros_like(pi.weights)
    w[support] = pi.weights[support] * np.exp(-gamma * (r[support] - shift))
    return DiscreteMeasure(w / w.sum())


def sup_deviation(true_risks, est_risks) -> float:
    """Worst-case estimation deficit ``max_i (true_i - est_i)``."""
    t = np.asarray(true_risks, dtype=np.float64)
    e = np.asarray(est_risks, dtype=np.float64)
    if t.shape != e.shape or t.ndim != 1 or t.size == 0:
        raise ValueError("risk vectors must be matching non-empty vectors")
    return float(np.max(t - e))


def dirac_collapse_argmin(est_risks) -> DiscreteMeasure:
    """Dirac mass at the first index attaining ``min(est_risks)``.

    This is the minimiser of ``aggregated(rho, est_risks) + const`` over all
    measures: linear objectives over the simplex are optimised at a vertex,
    which is why a posterior facing a rho-independent complexity term
    degenerates to estimated-risk minimisation.
    """
    r = np.asarray(est_risks, dtype=np.float64)
    if r.ndim != 1 or r.size == 0 or not np.all(np.isfinite(r)):
        raise ValueError("est_risks must be a non-empty finite vector")
    return DiscreteMeasure.point_mass(r.size, int(np.argmin(r)))
