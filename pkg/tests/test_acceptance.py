"""Acceptance suite: one test per criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Monte Carlo checks use 3-standard-error tolerance bands around the
nominal frequency; all runs are deterministic by seed, and every
report-producing criterion is re-executed with 8 workers to confirm
byte-identical JSON.
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from robustpac.distributions import DistributionSpec
from robustpac.divergences import (
    DiscreteMeasure,
    change_of_measure_gap,
    chi2_d2_discrete,
    gaussian_d2,
    gaussian_kl,
    kl_discrete,
)
from robustpac.intervals import chebyshev_interval, mom_interval, subgaussian_interval, width_ratio
from robustpac.montecarlo import (
    BoundViolationConfig,
    CoverageConfig,
    EnsembleSpec,
    PosteriorSpec,
    UnionBlowupConfig,
    _union_chunk,
    bound_violation_experiment,
    coverage_experiment,
    gibbs_comparison_experiment,
    preregistered_failure_probe_config,
    preregistered_gibbs_config,
    report_to_json,
    subgaussian_width_failure_probe,
    union_blowup_experiment,
)
from robustpac.pacbayes import (
    aggregated,
    cheap_bound,
    dirac_collapse_argmin,
    expensive_bound,
    gibbs_posterior,
)

GAUSSIAN = DistributionSpec.gaussian(0.0, 1.0)
T3 = DistributionSpec.student_t(3.0)

BOUND_ENSEMBLE = EnsembleSpec(
    "linear",
    slopes=tuple(np.linspace(0.5, 1.5, 5).tolist()),
    intercepts=tuple(np.linspace(0.0, 1.0, 5).tolist()),
)
UNION_ENSEMBLE = EnsembleSpec(
    "linear",
    slopes=tuple(np.linspace(0.5, 1.5, 256).tolist()),
    intercepts=tuple((np.arange(256) / 256.0).tolist()),
)
POSTERIORS = (
    PosteriorSpec("uniform"),
    PosteriorSpec("dirac", index=0),
    PosteriorSpec("gibbs", gamma=2.0),
)


def _announce(num: int, detail: str) -> None:
    print(f"ACCEPTANCE {num:02d} PASS: {detail}")


def _best_runtime(fn, repeats: int = 5) -> float:
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


# -- shared experiment runs (also re-used by the determinism criterion) -------


@pytest.fixture(scope="module")
def coverage_runs():
    configs = {
        "gaussian_subgaussian": CoverageConfig(101, 10_000, 100, GAUSSIAN, "subgaussian", 0.05),
        "t3_chebyshev": CoverageConfig(102, 10_000, 100, T3, "chebyshev", 0.05),
        "t3_mom": CoverageConfig(103, 10_000, 128, T3, "mom", None, 32),
    }
    return {name: (cfg, coverage_experiment(cfg)) for name, cfg in configs.items()}


@pytest.fixture(scope="module")
def probe_run():
    config = preregistered_failure_probe_config(trials=100_000)
    return config, subgaussian_width_failure_probe(config)


@pytest.fixture(scope="module")
def bound_runs():
    runs = {}
    for bound, dist in (("expensive", GAUSSIAN), ("cheap", T3)):
        for posterior in POSTERIORS:
            config = BoundViolationConfig(
                master_seed=104,
                trials=10_000,
                n=100,
                delta=0.05,
                bound=bound,
                distribution=dist,
                ensemble=BOUND_ENSEMBLE,
                posterior=posterior,
            )
            runs[f"{bound}/{posterior.kind}"] = (config, bound_violation_experiment(config))
    return runs


@pytest.fixture(scope="module")
def union_run():
    config = UnionBlowupConfig(
        master_seed=110,
        trials=1500,
        n=256,
        k_blocks=32,
        distribution=T3,
        ensemble=UNION_ENSEMBLE,
        k_hyp_grid=(1, 2, 4, 8, 16, 32, 64, 128, 256),
    )
    return config, union_blowup_experiment(config)


@pytest.fixture(scope="module")
def gibbs_run():
    config = preregistered_gibbs_config(trials=1000)
    return config, gibbs_comparison_experiment(config)


# -- criteria ------------------------------------------------------------------


def test_c01_subgaussian_width_value():
    expected = 1.0 / math.sqrt(100) * math.sqrt(2.0 * math.log(1.0 / 0.05))
    ci = subgaussian_interval(0.0, 1.0, 100, 0.05)
    assert ci.half_width == pytest.approx(expected, rel=1e-12)
    runtime = _best_runtime(lambda: subgaussian_interval(0.0, 1.0, 100, 0.05))
    assert runtime < 1e-3
    _announce(1, f"half_width={ci.half_width:.15f} (runtime {runtime * 1e6:.1f}us)")


def test_c02_chebyshev_width_and_ratio_values():
    expected = 1.0 / math.sqrt(100) * math.sqrt(1.0 / 0.05)
    ci = chebyshev_interval(0.0, 1.0, 100, 0.05)
    assert ci.half_width == pytest.approx(expected, rel=1e-12)
    ratio = width_ratio(0.05)
    assert ratio == pytest.approx(expected / subgaussian_interval(0.0, 1.0, 100, 0.05).half_width, rel=1e-10)
    assert ratio == pytest.approx(1.8270418733442704, rel=1e-10)
    runtime = _best_runtime(lambda: chebyshev_interval(0.0, 1.0, 100, 0.05))
    assert runtime < 1e-3
    _announce(2, f"half_width={ci.half_width:.15f}, ratio={ratio:.12f}")


def test_c03_mom_interval_algebra():
    x = np.linspace(-2.0, 2.0, 128)
    sigma = 1.3
    for k in (8, 16, 32, 64):
        ci, delta = mom_interval(x, sigma, k)
        assert delta == pytest.approx(math.exp(-k / 8.0), rel=1e-12)
        assert ci.half_width == pytest.approx(2.0 * sigma * math.sqrt(k) / math.sqrt(128), rel=1e-12)
    _announce(3, "delta = exp(-K/8) and half_width = (2 sigma/sqrt(N)) sqrt(K) for K in {8,16,32,64}")


def test_c04_coverage_expensive_model(coverage_runs):
    _, report = coverage_runs["gaussian_subgaussian"]
    floor = 0.95 - 3.0 * math.sqrt(0.95 * 0.05 / 10_000)
    assert report.coverage >= floor
    _announce(4, f"gaussian/subgaussian coverage {report.coverage:.4f} >= {floor:.4f}")


def test_c05_coverage_cheap_model(coverage_runs):
    _, report = coverage_runs["t3_chebyshev"]
    floor = 0.95 - 3.0 * math.sqrt(0.95 * 0.05 / 10_000)
    assert report.coverage >= floor
    _announce(5, f"student-t(3)/chebyshev coverage {report.coverage:.4f} >= {floor:.4f}")


def test_c06_coverage_mom(coverage_runs):
    _, report = coverage_runs["t3_mom"]
    nominal = 1.0 - math.exp(-4.0)
    floor = nominal - 3.0 * math.sqrt(nominal * (1.0 - nominal) / 10_000)
    assert report.nominal_level == pytest.approx(nominal, rel=1e-15)
    assert report.coverage >= floor
    _announce(6, f"student-t(3)/mom K=32 coverage {report.coverage:.4f} >= {floor:.4f}")


def test_c07_failure_probe_undercovers(probe_run):
    config, report = probe_run
    non_coverage = 1.0 - report.coverage
    assert config.delta == 1e-4
    assert non_coverage > config.delta
    _announce(
        7,
        f"two-point probe non-coverage {non_coverage:.5f} > delta={config.delta} "
        f"({report.trials - report.successes}/{report.trials} misses)",
    )


def test_c08_divergence_exactness():
    for m in (2, 10, 100):
        dirac, uniform = DiscreteMeasure.point_mass(m, 0), DiscreteMeasure.uniform(m)
        assert kl_discrete(dirac, uniform) == pytest.approx(math.log(m), rel=1e-12)
        assert chi2_d2_discrete(dirac, uniform) == pytest.approx(m - 1.0, rel=1e-12)

    def density(x, mu):
        return math.exp(-0.5 * (x - mu) ** 2) / math.sqrt(2.0 * math.pi)

    for shift in (0.1, 1.0):
        kl_quad = quad(lambda x: density(x, shift) * math.log(density(x, shift) / density(x, 0.0)), -30, 30)[0]
        d2_quad = quad(lambda x: density(x, shift) ** 2 / density(x, 0.0), -30, 30)[0] - 1.0
        assert gaussian_kl([shift]) == pytest.approx(kl_quad, abs=1e-8)
        assert gaussian_d2([shift]) == pytest.approx(d2_quad, abs=1e-8)
    _announce(8, "KL/D2 closed forms exact for M in {2,10,100}; Gaussian forms match quadrature to 1e-8")


def test_c09_change_of_measure_property_suite():
    rng = np.random.default_rng(2024)
    checked_tilts = 0
    for i in range(1000):
        m = int(rng.integers(2, 21))
        pi_w = rng.uniform(1e-3, 1.0, m)
        pi = DiscreteMeasure(pi_w / pi_w.sum())
        rho_w = rng.uniform(1e-3, 1.0, m)
        rho = DiscreteMeasure(rho_w / rho_w.sum())
        g = rng.uniform(-5.0, 5.0, m)
        assert change_of_measure_gap(rho, pi, g) >= -1e-10
        if i % 2 == 0:
            tilt = pi.weights * np.exp(g)
            gibbs_rho = DiscreteMeasure(tilt / tilt.sum())
            assert abs(change_of_measure_gap(gibbs_rho, pi, g)) <= 1e-10
            checked_tilts += 1
    _announce(9, f"1000 random triples: gap >= -1e-10; {checked_tilts} exponential tilts: |gap| <= 1e-10")


def test_c10_bound_interval_correspondence():
    pi = DiscreteMeasure.uniform(7)
    emp = np.zeros(7)
    exp_term = expensive_bound(pi, pi, emp, 1.0, 100, 0.05).bound_value
    cheap_term = cheap_bound(pi, pi, emp, 1.0, 100, 0.05).bound_value
    assert exp_term == pytest.approx(subgaussian_interval(0.0, 1.0, 100, 0.05).half_width, rel=1e-12)
    assert cheap_term == pytest.approx(chebyshev_interval(0.0, 1.0, 100, 0.05).half_width, rel=1e-12)
    _announce(10, "bounds at rho = pi reproduce the two interval widths to 1e-12")


def test_c11_bound_validity(bound_runs):
    budget = 0.05 + 3.0 * math.sqrt(0.05 * 0.95 / 10_000)
    details = []
    for name, (_, report) in bound_runs.items():
        violation = 1.0 - report.coverage
        assert violation <= budget, name
        details.append(f"{name}={violation:.4f}")
    _announce(11, f"violation freq <= {budget:.4f} for " + ", ".join(details))


def test_c12_union_blowup_monotone_and_vacuous_flags(union_run):
    config, report = union_run
    # per-seed monotonicity under common random numbers (per-trial indicators)
    per_trial = _union_chunk(config, 0, 200)
    assert np.all(per_trial[:, 1:] >= per_trial[:, :-1])
    fails = [row["joint_failure"] for row in report.rows]
    assert all(b >= a for a, b in zip(fails, fails[1:]))
    # the degenerate union (one hypothesis) stays within its own budget
    single = report.rows[0]
    assert single["k_hyp"] == 1
    assert single["joint_failure"] <= report.delta + 3.0 * math.sqrt(
        report.delta * (1.0 - report.delta) / config.trials
    )
    one_over_delta = 1.0 / report.delta
    for row in report.rows:
        assert row["vacuous"] == (row["k_hyp"] >= one_over_delta)
    flagged = [row["k_hyp"] for row in report.rows if row["vacuous"]]
    assert flagged == [64, 128, 256]  # 1/delta = e^4 ~ 54.6
    _announce(12, f"joint failure nondecreasing per-seed; vacuous flags at k_hyp >= 1/delta: {flagged}")


def test_c13_dirac_collapse_vertex_optimality():
    rng = np.random.default_rng(13)
    for _ in range(1000):
        v = rng.normal(0.0, 2.0, int(rng.integers(2, 16)))
        rho = dirac_collapse_argmin(v)
        assert aggregated(rho, v) == v.min()
        w = rng.uniform(1e-6, 1.0, v.size)
        other = DiscreteMeasure(w / w.sum())
        assert aggregated(rho, v) + 1.3 <= aggregated(other, v) + 1.3 + 1e-12
    _announce(13, "1000 random risk vectors: argmin Dirac attains the simplex minimum exactly")


def test_c14_gibbs_sanity():
    pi = DiscreteMeasure(np.array([0.2, 0.3, 0.5]))
    risks = np.array([2.0, 0.5, 1.0])
    assert np.array_equal(gibbs_posterior(pi, risks, 0.0).weights, pi.weights)
    concentrated = gibbs_posterior(DiscreteMeasure.uniform(5), np.array([3.0, 1.0, 2.0, 4.0, 5.0]), 1e6)
    assert concentrated.weights[1] >= 1.0 - 1e-9
    rng = np.random.default_rng(14)
    gammas = np.geomspace(1e-3, 1e3, 20)
    for _ in range(100):
        m = int(rng.integers(2, 12))
        prior = DiscreteMeasure(np.ones(m) / m)
        r = rng.normal(0.0, 1.0, m)
        values = [aggregated(gibbs_posterior(prior, r, g), r) for g in gammas]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))
    _announce(14, "gamma=0 returns the prior exactly; gamma=1e6 concentrates; estimate nonincreasing in gamma")


def test_c15_gibbs_robustness_directional(gibbs_run):
    config, report = gibbs_run
    mid = report.rows[10]
    assert mid["gamma"] == pytest.approx(1.0, rel=1e-12)  # mid-range of the 21-point grid
    assert mid["win_fraction"] > 0.5
    _announce(
        15,
        f"MoM-Gibbs wins {mid['win_fraction']:.1%} of {config.trials} contaminated trials at "
        f"gamma={mid['gamma']:.2f} (true risk {mid['risk_mom']:.2f} vs {mid['risk_emp']:.2f})",
    )


def test_c16_worker_count_determinism(coverage_runs, probe_run, bound_runs, union_run, gibbs_run):
    runs = []
    for name, (config, report) in coverage_runs.items():
        runs.append((f"coverage/{name}", config, report, coverage_experiment))
    runs.append(("probe", probe_run[0], probe_run[1], subgaussian_width_failure_probe))
    for name, (config, report) in bound_runs.items():
        runs.append((f"bound/{name}", config, report, bound_violation_experiment))
    runs.append(("union", union_run[0], union_run[1], union_blowup_experiment))
    runs.append(("gibbs", gibbs_run[0], gibbs_run[1], gibbs_comparison_experiment))
    for name, config, report, runner in runs:
        redo = runner(config, workers=8)
        assert report_to_json(redo) == report_to_json(report), name
    _announce(16, f"{len(runs)} experiment reports byte-identical for worker counts 1 and 8")
