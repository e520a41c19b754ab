"""Confidence intervals for the mean under three modelling assumptions.

All three constructions take the variance factor / variance bound ``sigma`` as
a known input; no variance estimation happens here.

* ``subgaussian_interval`` -- width ``(sigma/sqrt(N)) * sqrt(2 log(1/delta))``,
  valid when the law's centered moment generating function is dominated by
  ``exp(lambda^2 sigma^2 / 2)``.
* ``chebyshev_interval`` -- width ``(sigma/sqrt(N)) * sqrt(1/delta)``, valid
  whenever the variance is at most ``sigma^2``.
* ``mom_interval`` -- the median-of-means interval.  Its error threshold is
  an OUTPUT fixed by the block count: ``delta = exp(-K/8)``, width
  ``(sigma/sqrt(N)) * 4 sqrt(2 log(1/delta)) = (2 sigma/sqrt(N)) sqrt(K)``.
  It cannot be requested at an arbitrary level; the smallest attainable
  threshold is ``exp(-N/8)`` at ``K = N``.

``width_ratio`` compares the first two widths at a common ``delta``; it
diverges as ``delta -> 0``, which is the whole point of paying for the
stronger tail assumption.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .estimators import as_sample, median_of_means

__all__ = [
    "ConfidenceInterval",
    "subgaussian_interval",
    "chebyshev_interval",
    "mom_interval",
    "width_ratio",
    "width_table",
    "FIG1_HEADER",
]

# CSV schema for the width-comparison table (unit scale sigma=1, N=1).
FIG1_HEADER = "delta,width_subgaussian,width_chebyshev,ratio"

MODEL_TAGS = ("subgaussian", "chebyshev", "mom")


@dataclass(frozen=True)
class ConfidenceInterval:
    """``center +/- half_width`` at confidence level ``1 - delta``."""

    center: float
    half_width: float
    level: float
    model_tag: str

    def __post_init__(self) -> None:
        if self.half_width < 0:
            raise ValueError(f"half_width must be >= 0, got {self.half_width}")
        if not 0 < self.level < 1:
            raise ValueError(f"level must lie in (0, 1), got {self.level}")
        if self.model_tag not in MODEL_TAGS:
            raise ValueError(f"model_tag must be one of {MODEL_TAGS}, got {self.model_tag!r}")

    @property
    def lower(self) -> float:
        return self.center - self.half_width

    @property
    def upper(self) -> float:
        return self.center + self.half_width

    def contains(self, value: float) -> bool:
        return abs(value - self.center) <= self.half_width


def _check_domain(sigma: float, n: int, delta: float) -> None:
    if sigma <= 0 or not math.isfinite(sigma):
        raise ValueError(f"sigma must be a positive finite real, got {sigma}")
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")


def subgaussian_interval(center: float, sigma: float, n: int, delta: float) -> ConfidenceInterval:
    """Interval of half-width ``(sigma/sqrt(N)) sqrt(2 log(1/delta))``."""
    _check_domain(sigma, n, delta)
    hw = sigma / math.sqrt(n) * math.sqrt(2.0 * math.log(1.0 / delta))
    return ConfidenceInterval(center, hw, 1.0 - delta, "subgaussian")


def chebyshev_interval(center: float, sigma: float, n: int, delta: float) -> ConfidenceInterval:
    """Interval of half-width ``(sigma/sqrt(N)) sqrt(1/delta)``."""
    _check_domain(sigma, n, delta)
    hw = sigma / math.sqrt(n) * math.sqrt(1.0 / delta)
    return ConfidenceInterval(center, hw, 1.0 - delta, "chebyshev")


def mom_interval(sample, sigma: float, k: int) -> tuple[ConfidenceInterval, float]:
    """Median-of-means interval with its block-determined error threshold.

    Returns ``(interval, delta)`` where ``delta = exp(-k/8)`` and the interval
    is centered at the median of means with half-width
    ``(sigma/sqrt(N)) * 4 sqrt(2 log(1/delta))``.
    """
    x = as_sample(sample)
    delta = math.exp(-k / 8.0)
    _check_domain(sigma, x.size, delta)
    center = median_of_means(x, k)
    # log(1/delta) = k/8 exactly, so the half-width simplifies to 2 sigma sqrt(k/N)
    hw = sigma / math.sqrt(x.size) * 4.0 * math.sqrt(2.0 * (k / 8.0))
    return ConfidenceInterval(center, hw, 1.0 - delta, "mom"), delta


def width_ratio(delta: float) -> float:
    """Chebyshev-to-subgaussian half-width ratio at fixed ``sigma`` and ``N``.

    ``sqrt(1/delta) / sqrt(2 log(1/delta))``; diverges as ``delta -> 0``.
    Most informative for ``delta < 1/e`` where the ratio is decreasing in
    ``delta`` (its minimum sits at ``delta = 1/e``).
    """
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    log_inv = math.log(1.0 / delta)
    if log_inv <= 0:
        raise ValueError(f"log(1/delta) must be positive, got delta={delta}")
    return math.sqrt(1.0 / delta) / math.sqrt(2.0 * log_inv)


def width_table(delta_min: float = 1e-8, delta_max: float = 0.5, points: int = 200) -> np.ndarray:
    """Width-comparison table on a log-spaced ``delta`` grid, unit scale.

    Returns an array of shape ``(points, 4)`` with columns
    ``delta, width_subgaussian, width_chebyshev, ratio`` evaluated at
    ``sigma = 1, N = 1`` (both widths scale jointly by ``sigma/sqrt(N)``, so
    the ratio column is scale-invariant).
    """
    if not 0 < delta_min <= delta_max < 1:
        raise ValueError(f"need 0 < delta_min <= delta_max < 1, got [{delta_min}, {delta_max}]")
    if points < 1 or (points == 1 and delta_min != delta_max):
        raise ValueError("points must be >= 1, and == 1 only for a degenerate grid")
    grid = np.geomspace(delta_min, delta_max, points)
    log_inv = np.log(1.0 / grid)
    w_sub = np.sqrt(2.0 * log_inv)
    w_cheb = np.sqrt(1.0 / grid)
    return np.column_stack([grid, w_sub, w_cheb, w_cheb / w_sub])
