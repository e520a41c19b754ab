"""f-divergences between discrete measures on a finite index set.

For a convex ``f`` with ``f(1) = 0`` the divergence of ``mu`` from ``nu`` is
``sum_i nu_i f(mu_i / nu_i)`` when ``mu`` is absolutely continuous with
respect to ``nu``, and ``+inf`` otherwise.  Two members matter here:
Kullback-Leibler (``f(x) = x log x``) and the chi-square flavour ``D2``
(``f(x) = x^2 - 1``), which penalises disagreement exponentially harder --
for unit-covariance Gaussians shifted by ``a``, ``KL = ||a||^2 / 2`` while
``D2 = exp(||a||^2) - 1``.

Conventions: ``0 log 0 = 0`` and ``0 f(0/0) = 0`` (terms with ``nu_i = 0``
contribute nothing once absolute continuity holds).  ``+inf`` is returned as
``math.inf`` deliberately, never as an overflowed float: an infinite
divergence is meaningful downstream (it makes a generalisation bound vacuous).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "DiscreteMeasure",
    "FSpec",
    "KL_F",
    "D2_F",
    "f_divergence",
    "kl_discrete",
    "chi2_d2_discrete",
    "gaussian_kl",
    "gaussian_d2",
    "log_expectation_exp",
    "change_of_measure_gap",
]

_SUM_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteMeasure:
    """A probability vector over a finite index set."""

    weights: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=np.float64).copy()
        if w.ndim != 1 or w.size == 0:
            raise ValueError(f"weights must form a non-empty vector, got shape {w.shape}")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise ValueError("weights must be finite and nonnegative")
        if abs(float(w.sum()) - 1.0) > _SUM_TOL:
            raise ValueError(f"weights must sum to 1 within {_SUM_TOL}, got {w.sum()!r}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def size(self) -> int:
        return int(self.weights.size)

    @classmethod
    def uniform(cls, m: int) -> "DiscreteMeasure":
        if m < 1:
            raise ValueError(f"index set size must be >= 1, got {m}")
        return cls(np.full(m, 1.0 / m))

    @classmethod
    def point_mass(cls, m: int, index: int) -> "DiscreteMeasure":
        """Dirac mass at ``index`` within an index set of size ``m``."""
        if not 0 <= index < m:
            raise ValueError(f"index {index} outside range(0, {m})")
        w = np.zeros(m)
        w[index] = 1.0
        return cls(w)


@dataclass(frozen=True)
class FSpec:
    """A convex divergence generator: vectorised ``fn`` with ``fn(1) = 0``."""

    name: str
    fn: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self) -> None:
        at_one = float(np.asarray(self.fn(np.ones(1)))[0])
        if abs(at_one) > _SUM_TOL:
            raise ValueError(f"divergence generator must satisfy f(1) = 0, got f(1) = {at_one}")


def _xlogx(x: np.ndarray) -> np.ndarray:
    # x log x with the 0 log 0 = 0 convention
    safe = np.where(x > 0, x, 1.0)
    return np.where(x > 0, x * np.log(safe), 0.0)


KL_F = FSpec("kl", _xlogx)
D2_F = FSpec("d2", lambda x: x * x - 1.0)


def _check_pair(mu: DiscreteMeasure, nu: DiscreteMeasure) -> None:
    if mu.size != nu.size:
        raise ValueError(f"measures live on different index sets ({mu.size} vs {nu.size})")


def f_divergence(fspec: FSpec, mu: DiscreteMeasure, nu: DiscreteMeasure) -> float:
    """``sum_i nu_i f(mu_i/nu_i)`` if ``mu << nu``, else ``+inf``."""
    _check_pair(mu, nu)
    support = nu.weights > 0
    if np.any(mu.weights[~support] > 0):
        return math.inf
    ratios = mu.weights[support] / nu.weights[support]
    return float(np.dot(nu.weights[support], fspec.fn(ratios)))


def kl_discrete(mu: DiscreteMeasure, nu: DiscreteMeasure) -> float:
    """Kullback-Leibler divergence ``KL(mu, nu)``."""
    return f_divergence(KL_F, mu, nu)


def chi2_d2_discrete(mu: DiscreteMeasure, nu: DiscreteMeasure) -> float:
    """Chi-square-type divergence ``D2(mu, nu) = sum nu_i (mu_i/nu_i)^2 - 1``."""
    return f_divergence(D2_F, mu, nu)


def gaussian_kl(a) -> float:
    """``KL(N(a, I), N(0, I)) = ||a||^2 / 2``."""
    v = np.asarray(a, dtype=np.float64).ravel()
    if not np.all(np.isfinite(v)):
        raise ValueError("shift vector must be finite")
    return 0.5 * float(np.dot(v, v))


def gaussian_d2(a) -> float:
    """``D2(N(a, I), N(0, I)) = exp(||a||^2) - 1``."""
    v = np.asarray(a, dtype=np.float64).ravel()
    if not np.all(np.isfinite(v)):
        raise ValueError("shift vector must be finite")
    with np.errstate(over="ignore"):
        return float(np.expm1(np.dot(v, v)))


def log_expectation_exp(pi: DiscreteMeasure, g) -> float:
    """``log pi[e^g]`` computed with a max shift (safe for large ``g``)."""
    values = np.asarray(g, dtype=np.float64)
    if values.shape != (pi.size,):
        raise ValueError(f"g must have shape ({pi.size},), got {values.shape}")
    if not np.all(np.isfinite(values)):
        raise ValueError("g must be finite")
    support = pi.weights > 0
    logs = np.log(pi.weights[support]) + values[support]
    shift = float(logs.max())
    return shift + math.log(float(np.exp(logs - shift).sum()))


def change_of_measure_gap(rho: DiscreteMeasure, pi: DiscreteMeasure, g) -> float:
    """Slack in ``rho[g] <= log pi[e^g] + KL(rho, pi)``.

    Always ``>= 0`` up to roundoff; equals 0 exactly when ``rho`` is the
    exponential tilt ``rho_i proportional to pi_i e^{g_i}``.  An infinite
    ``KL(rho, pi)`` is reported as an infinite gap.
    """
    _check_pair(rho, pi)
    kl = kl_discrete(rho, pi)
    if math.isinf(kl):
        return math.inf
    values = np.asarray(g, dtype=np.float64)
    return log_expectation_exp(pi, values) + kl - float(np.dot(rho.weights, values))
