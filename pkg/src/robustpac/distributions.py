"""Seeded random streams and synthetic distribution families with known moments.

Streams are derived from ``(master_seed, stream_id)`` through a two-word
``SeedSequence`` (split-based derivation, not sequential reseeding), so any
trial of any experiment can rebuild its own generator independently of
execution order or worker count.

Distribution families cover the two modelling regimes used throughout the
library: laws with genuinely Gaussian-like tails (``gaussian``, bounded
``two_point``) and laws where only a finite variance is available
(``student_t``, ``pareto``, ``lognormal``).  Every family exposes its exact
mean and variance so Monte Carlo experiments have analytic ground truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FAMILIES",
    "RandomStream",
    "make_stream",
    "DistributionSpec",
    "sample",
    "population_moments",
]

FAMILIES = ("gaussian", "student_t", "pareto", "lognormal", "two_point")

_U64_MAX = 2**64 - 1


@dataclass
class RandomStream:
    """A single-owner random stream addressed by ``(master_seed, stream_id)``.

    The same pair always reproduces the same bit stream; distinct stream ids
    give statistically independent generators.  A stream must not be shared
    between concurrent tasks (the generator is stateful).
    """

    master_seed: int
    stream_id: int
    generator: np.random.Generator = field(repr=False)


def make_stream(master_seed: int, stream_id: int) -> RandomStream:
    """Derive the deterministic stream for ``(master_seed, stream_id)``."""
    for name, value in (("master_seed", master_seed), ("stream_id", stream_id)):
        if not 0 <= int(value) <= _U64_MAX:
            raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value!r}")
    seq = np.random.SeedSequence([int(master_seed), int(stream_id)])
    return RandomStream(int(master_seed), int(stream_id), np.random.Generator(np.random.PCG64(seq)))


# Required parameter names per family.
_PARAM_KEYS = {
    "gaussian": ("mean", "std"),
    "student_t": ("nu",),
    "pareto": ("alpha", "x_m"),
    "lognormal": ("mu", "sigma"),
    "two_point": ("low", "high", "p"),
}


@dataclass(frozen=True)
class DistributionSpec:
    """A data-generating law with analytically known mean and variance.

    ``params`` holds the family parameters:

    ==========  =======================  =========================
    family      params                   admissibility
    ==========  =======================  =========================
    gaussian    mean, std                std > 0
    student_t   nu                       nu > 2 (finite variance)
    pareto      alpha, x_m               alpha > 2, x_m > 0
    lognormal   mu, sigma                sigma > 0
    two_point   low, high, p             low <= high, 0 <= p <= 1
    ==========  =======================  =========================

    ``is_subgaussian`` is True only for the Gaussian family and the bounded
    two-point family; the heavy-tailed families satisfy only the
    finite-variance model, with variance factor ``variance``.
    """

    family: str
    params: dict

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        expected = _PARAM_KEYS[self.family]
        if set(self.params) != set(expected):
            raise ValueError(
                f"{self.family} requires params {expected}, got {tuple(sorted(self.params))}"
            )
        p = {k: float(v) for k, v in self.params.items()}
        if not all(math.isfinite(v) for v in p.values()):
            raise ValueError(f"{self.family} parameters must be finite, got {self.params}")
        object.__setattr__(self, "params", p)
        if self.family == "gaussian" and p["std"] <= 0:
            raise ValueError("gaussian requires std > 0")
        if self.family == "student_t" and p["nu"] <= 2:
            raise ValueError("student_t requires nu > 2 for a finite variance")
        if self.family == "pareto" and (p["alpha"] <= 2 or p["x_m"] <= 0):
            raise ValueError("pareto requires alpha > 2 (finite variance) and x_m > 0")
        if self.family == "lognormal" and p["sigma"] <= 0:
            raise ValueError("lognormal requires sigma > 0")
        if self.family == "two_point" and not (p["low"] <= p["high"] and 0 <= p["p"] <= 1):
            raise ValueError("two_point requires low <= high and p in [0, 1]")

    # -- analytic moments -------------------------------------------------

    @property
    def mean(self) -> float:
        p = self.params
        if self.family == "gaussian":
            return p["mean"]
        if self.family == "student_t":
            return 0.0
        if self.family == "pareto":
            return p["alpha"] * p["x_m"] / (p["alpha"] - 1.0)
        if self.family == "lognormal":
            return math.exp(p["mu"] + 0.5 * p["sigma"] ** 2)
        return p["low"] + (p["high"] - p["low"]) * p["p"]

    @property
    def variance(self) -> float:
        p = self.params
        if self.family == "gaussian":
            return p["std"] ** 2
        if self.family == "student_t":
            return p["nu"] / (p["nu"] - 2.0)
        if self.family == "pareto":
            a, xm = p["alpha"], p["x_m"]
            return a * xm**2 / ((a - 1.0) ** 2 * (a - 2.0))
        if self.family == "lognormal":
            return math.expm1(p["sigma"] ** 2) * math.exp(2.0 * p["mu"] + p["sigma"] ** 2)
        return p["p"] * (1.0 - p["p"]) * (p["high"] - p["low"]) ** 2

    @property
    def is_subgaussian(self) -> bool:
        return self.family in ("gaussian", "two_point")

    # -- constructors ------------------------------------------------------

    @classmethod
    def gaussian(cls, mean: float, std: float) -> "DistributionSpec":
        return cls("gaussian", {"mean": mean, "std": std})

    @classmethod
    def student_t(cls, nu: float) -> "DistributionSpec":
        return cls("student_t", {"nu": nu})

    @classmethod
    def pareto(cls, alpha: float, x_m: float = 1.0) -> "DistributionSpec":
        return cls("pareto", {"alpha": alpha, "x_m": x_m})

    @classmethod
    def lognormal(cls, mu: float, sigma: float) -> "DistributionSpec":
        return cls("lognormal", {"mu": mu, "sigma": sigma})

    @classmethod
    def two_point(cls, low: float, high: float, p: float) -> "DistributionSpec":
        return cls("two_point", {"low": low, "high": high, "p": p})

    # -- JSON config form --------------------------------------------------

    def to_dict(self) -> dict:
        return {"family": self.family, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, obj: dict) -> "DistributionSpec":
        if not isinstance(obj, dict) or set(obj) != {"family", "params"}:
            raise ValueError(f'distribution must be {{"family": ..., "params": ...}}, got {obj!r}')
        return cls(obj["family"], dict(obj["params"]))


def sample(spec: DistributionSpec, n: int, stream: RandomStream) -> np.ndarray:
    """Draw ``n`` iid values from ``spec``, consuming ``stream`` deterministically."""
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")
    gen = stream.generator
    p = spec.params
    if spec.family == "gaussian":
        return gen.normal(p["mean"], p["std"], n)
    if spec.family == "student_t":
        return gen.standard_t(p["nu"], n)
    if spec.family == "pareto":
        return p["x_m"] * (1.0 + gen.pareto(p["alpha"], n))
    if spec.family == "lognormal":
        return gen.lognormal(p["mu"], p["sigma"], n)
    # two_point: value `high` with probability p, else `low`
    return np.where(gen.random(n) < p["p"], p["high"], p["low"])


def population_moments(spec: DistributionSpec) -> tuple[float, float]:
    """Exact ``(mean, variance)`` of the law described by ``spec``."""
    return spec.mean, spec.variance
