import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from robustpac.divergences import (
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


def _measure_from_raw(raw):
    w = np.asarray(raw, dtype=float)
    return DiscreteMeasure(w / w.sum())


random_measures = st.integers(min_value=2, max_value=12).flatmap(
    lambda m: st.lists(
        st.floats(min_value=1e-3, max_value=1.0), min_size=m, max_size=m
    ).map(_measure_from_raw)
)


# -- measure validation ------------------------------------------------------


def test_measure_validation():
    DiscreteMeasure(np.array([0.5, 0.5]))
    with pytest.raises(ValueError):
        DiscreteMeasure(np.array([0.6, 0.5]))
    with pytest.raises(ValueError):
        DiscreteMeasure(np.array([1.5, -0.5]))
    with pytest.raises(ValueError):
        DiscreteMeasure(np.array([]))


def test_uniform_and_point_mass():
    u = DiscreteMeasure.uniform(10)
    assert u.size == 10 and u.weights[3] == 0.1
    d = DiscreteMeasure.point_mass(4, 2)
    assert d.weights.tolist() == [0.0, 0.0, 1.0, 0.0]
    with pytest.raises(ValueError):
        DiscreteMeasure.point_mass(4, 4)


def test_fspec_requires_f1_zero():
    FSpec("abs", lambda x: np.abs(x - 1.0))
    with pytest.raises(ValueError):
        FSpec("bad", lambda x: x)


# -- divergence values -------------------------------------------------------


def test_divergence_zero_on_identical_measures():
    mu = _measure_from_raw([3.0, 1.0, 2.0])
    assert kl_discrete(mu, mu) == 0.0
    assert chi2_d2_discrete(mu, mu) == 0.0
    assert f_divergence(KL_F, mu, mu) == 0.0


def test_divergence_infinite_without_absolute_continuity():
    mu = DiscreteMeasure(np.array([0.5, 0.5]))
    nu = DiscreteMeasure(np.array([1.0, 0.0]))
    assert kl_discrete(mu, nu) == math.inf
    assert chi2_d2_discrete(mu, nu) == math.inf
    # the reverse direction is finite: nu << mu
    assert math.isfinite(kl_discrete(nu, mu))


@pytest.mark.parametrize("m", [2, 10, 100])
def test_dirac_vs_uniform_closed_forms(m):
    dirac = DiscreteMeasure.point_mass(m, 0)
    uniform = DiscreteMeasure.uniform(m)
    assert kl_discrete(dirac, uniform) == pytest.approx(math.log(m), rel=1e-12)
    assert chi2_d2_discrete(dirac, uniform) == pytest.approx(m - 1.0, rel=1e-12)


def test_two_atom_hand_values():
    mu = DiscreteMeasure(np.array([0.9, 0.1]))
    nu = DiscreteMeasure(np.array([0.5, 0.5]))
    assert kl_discrete(mu, nu) == pytest.approx(
        0.9 * math.log(1.8) + 0.1 * math.log(0.2), rel=1e-12
    )
    assert chi2_d2_discrete(mu, nu) == pytest.approx(0.64, rel=1e-12)


def test_zero_mass_atoms_in_mu_contribute_nothing():
    mu = DiscreteMeasure(np.array([1.0, 0.0]))
    nu = DiscreteMeasure(np.array([0.5, 0.5]))
    assert kl_discrete(mu, nu) == pytest.approx(math.log(2.0), rel=1e-12)


def test_mismatched_index_sets_rejected():
    with pytest.raises(ValueError):
        kl_discrete(DiscreteMeasure.uniform(3), DiscreteMeasure.uniform(4))


@given(random_measures, st.data())
@settings(max_examples=80)
def test_divergences_nonnegative_and_zero_iff_equal(mu, data):
    nu = _measure_from_raw(
        data.draw(
            st.lists(
                st.floats(min_value=1e-3, max_value=1.0), min_size=mu.size, max_size=mu.size
            )
        )
    )
    kl = kl_discrete(mu, nu)
    d2 = chi2_d2_discrete(mu, nu)
    assert kl >= -1e-15 and d2 >= -1e-15
    if np.abs(mu.weights - nu.weights).max() < 1e-13:
        assert kl < 1e-12 and d2 < 1e-12


# -- Gaussian closed forms ---------------------------------------------------


def test_gaussian_divergences_at_zero_shift():
    assert gaussian_kl(np.zeros(3)) == 0.0
    assert gaussian_d2(np.zeros(3)) == 0.0


def test_gaussian_divergences_unit_shift():
    a = np.array([1.0, 0.0])
    assert gaussian_kl(a) == pytest.approx(0.5, rel=1e-15)
    assert gaussian_d2(a) == pytest.approx(math.e - 1.0, rel=1e-15)


@pytest.mark.parametrize("shift", [0.1, 0.7, 1.3])
def test_gaussian_closed_forms_match_quadrature(shift):
    def density(x, mu):
        return math.exp(-0.5 * (x - mu) ** 2) / math.sqrt(2 * math.pi)

    kl_quad = quad(
        lambda x: density(x, shift) * math.log(density(x, shift) / density(x, 0.0)), -30, 30
    )[0]
    d2_quad = quad(lambda x: density(x, shift) ** 2 / density(x, 0.0), -30, 30)[0] - 1.0
    assert gaussian_kl([shift]) == pytest.approx(kl_quad, abs=1e-8)
    assert gaussian_d2([shift]) == pytest.approx(d2_quad, abs=1e-8)


def test_d2_dominates_kl_for_gaussian_shifts():
    # exp(t) - 1 > t/2 for every t > 0: the chi-square flavour penalises
    # disagreement much harder than KL
    for t in np.geomspace(1e-6, 50.0, 40):
        a = np.array([math.sqrt(t)])
        assert gaussian_d2(a) > gaussian_kl(a)


# -- change of measure -------------------------------------------------------


def test_gap_with_constant_function_is_kl():
    rho = _measure_from_raw([1.0, 2.0, 3.0])
    pi = DiscreteMeasure.uniform(3)
    g = np.full(3, 4.2)
    assert change_of_measure_gap(rho, pi, g) == pytest.approx(kl_discrete(rho, pi), abs=1e-12)
    assert change_of_measure_gap(pi, pi, g) == pytest.approx(0.0, abs=1e-12)


def test_gap_at_rho_equals_pi_is_jensen_slack():
    pi = DiscreteMeasure.uniform(4)
    g = np.array([0.0, 1.0, -2.0, 0.5])
    gap = change_of_measure_gap(pi, pi, g)
    assert gap == pytest.approx(log_expectation_exp(pi, g) - float(pi.weights @ g), abs=1e-12)
    assert gap >= 0.0


def test_gap_infinite_when_kl_infinite():
    rho = DiscreteMeasure(np.array([0.5, 0.5]))
    pi = DiscreteMeasure(np.array([1.0, 0.0]))
    assert change_of_measure_gap(rho, pi, np.zeros(2)) == math.inf


def test_gap_property_over_random_triples():
    rng = np.random.default_rng(20240810)
    for _ in range(1000):
        m = int(rng.integers(2, 21))
        pi = _measure_from_raw(rng.uniform(1e-3, 1.0, m))
        rho = _measure_from_raw(rng.uniform(1e-3, 1.0, m))
        g = rng.uniform(-5.0, 5.0, m)
        assert change_of_measure_gap(rho, pi, g) >= -1e-10


def test_gap_vanishes_at_the_exponential_tilt():
    rng = np.random.default_rng(7)
    for _ in range(200):
        m = int(rng.integers(2, 21))
        pi = _measure_from_raw(rng.uniform(1e-3, 1.0, m))
        g = rng.uniform(-5.0, 5.0, m)
        tilt = pi.weights * np.exp(g)
        rho = DiscreteMeasure(tilt / tilt.sum())
        assert abs(change_of_measure_gap(rho, pi, g)) <= 1e-10


def test_log_expectation_exp_is_overflow_safe():
    pi = DiscreteMeasure.uniform(3)
    g = np.array([700.0, 710.0, 705.0])
    value = log_expectation_exp(pi, g)
    assert math.isfinite(value)
    assert value == pytest.approx(710.0 + math.log((math.exp(-10) + 1 + math.exp(-5)) / 3), rel=1e-12)


def test_d2_generator_value():
    assert float(D2_F.fn(np.array([3.0]))[0]) == 8.0
