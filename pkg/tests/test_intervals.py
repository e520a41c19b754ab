import math

import numpy as np
import pytest

from robustpac.intervals import (
    FIG1_HEADER,
    ConfidenceInterval,
    chebyshev_interval,
    mom_interval,
    subgaussian_interval,
    width_ratio,
    width_table,
)


def test_subgaussian_width_frozen_value():
    ci = subgaussian_interval(0.0, 1.0, 100, 0.05)
    assert ci.half_width == pytest.approx(math.sqrt(2 * math.log(20.0)) / 10, rel=1e-12)
    assert ci.level == 0.95
    assert ci.model_tag == "subgaussian"


def test_subgaussian_width_at_delta_one_over_e():
    ci = subgaussian_interval(0.0, 2.0, 25, 1 / math.e)
    assert ci.half_width == pytest.approx(2.0 / 5.0 * math.sqrt(2.0), rel=1e-12)


def test_subgaussian_width_halves_when_n_quadruples():
    a = subgaussian_interval(0.0, 1.0, 100, 0.05).half_width
    b = subgaussian_interval(0.0, 1.0, 400, 0.05).half_width
    assert b == pytest.approx(a / 2, rel=1e-12)


def test_chebyshev_width_frozen_values():
    assert chebyshev_interval(0.0, 1.0, 100, 0.05).half_width == pytest.approx(
        math.sqrt(20.0) / 10, rel=1e-12
    )
    assert chebyshev_interval(0.0, 1.0, 100, 0.0025).half_width == pytest.approx(2.0, rel=1e-12)


def test_chebyshev_width_tends_to_sigma_over_sqrt_n():
    hw = chebyshev_interval(0.0, 1.0, 100, 1 - 1e-12).half_width
    assert hw == pytest.approx(0.1, rel=1e-9)


def test_mom_interval_frozen_example():
    x = np.arange(100, dtype=float)
    ci, delta = mom_interval(x, 1.0, 32)
    assert delta == pytest.approx(math.exp(-4.0), rel=1e-15)
    assert ci.half_width == pytest.approx(4.0 * math.sqrt(8.0) / 10.0, rel=1e-12)
    assert ci.model_tag == "mom"
    assert ci.level == pytest.approx(1 - math.exp(-4.0), rel=1e-15)


def test_mom_delta_is_output_fixed_by_k():
    x = np.zeros(64) + 1.0
    _, delta = mom_interval(x, 1.0, 8)
    assert delta == pytest.approx(1 / math.e, rel=1e-15)
    # k = n reaches the smallest attainable threshold exp(-n/8)
    _, delta_min = mom_interval(x, 1.0, 64)
    assert delta_min == pytest.approx(math.exp(-8.0), rel=1e-15)


@pytest.mark.parametrize("k", [8, 16, 32, 64])
def test_mom_halfwidth_algebraic_identity(k):
    x = np.linspace(-1, 1, 128)
    ci, delta = mom_interval(x, 1.7, k)
    assert ci.half_width == pytest.approx(2.0 * 1.7 * math.sqrt(k) / math.sqrt(128), rel=1e-12)
    assert delta == math.exp(-k / 8.0)


def test_width_ratio_frozen_values():
    assert width_ratio(0.05) == pytest.approx(1.8270418733442704, rel=1e-10)
    assert width_ratio(1 / math.e) == pytest.approx(math.sqrt(math.e) / math.sqrt(2.0), rel=1e-12)


def test_width_ratio_diverges_for_small_delta():
    grid = [10.0**-e for e in range(1, 9)]
    ratios = [width_ratio(d) for d in grid]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] > 100


def test_chebyshev_wider_than_subgaussian_below_crossover():
    for d in [10.0**-e for e in range(1, 9)]:
        if d < math.exp(-2):
            cheb = chebyshev_interval(0.0, 1.0, 50, d).half_width
            sub = subgaussian_interval(0.0, 1.0, 50, d).half_width
            assert cheb > sub


@pytest.mark.parametrize("delta", [0.0, 1.0, 1.5, -0.1])
def test_interval_domain_errors(delta):
    with pytest.raises(ValueError):
        subgaussian_interval(0.0, 1.0, 10, delta)
    with pytest.raises(ValueError):
        chebyshev_interval(0.0, 1.0, 10, delta)
    with pytest.raises(ValueError):
        width_ratio(delta)


def test_interval_rejects_bad_sigma_and_n():
    with pytest.raises(ValueError):
        subgaussian_interval(0.0, 0.0, 10, 0.1)
    with pytest.raises(ValueError):
        chebyshev_interval(0.0, 1.0, 0, 0.1)
    with pytest.raises(ValueError):
        ConfidenceInterval(0.0, -1.0, 0.9, "mom")


def test_contains_is_inclusive():
    ci = ConfidenceInterval(1.0, 0.5, 0.9, "subgaussian")
    assert ci.contains(1.5) and ci.contains(0.5) and not ci.contains(1.51)
    assert ci.lower == 0.5 and ci.upper == 1.5


def test_width_table_shape_and_monotonicity():
    table = width_table(1e-8, 0.5, 200)
    assert table.shape == (200, 4)
    assert FIG1_HEADER.count(",") == 3
    delta = table[:, 0]
    assert delta[0] == pytest.approx(1e-8) and delta[-1] == pytest.approx(0.5)
    # the ratio is decreasing in delta up to its minimum at delta = 1/e
    below = delta <= 1 / math.e
    ratios = table[below, 3]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    # per-row consistency with the scalar function
    for row in table[::40]:
        assert row[3] == pytest.approx(width_ratio(row[0]), rel=1e-12)
        assert row[3] == pytest.approx(row[2] / row[1], rel=1e-12)


def test_width_table_single_point():
    table = width_table(0.05, 0.05, 1)
    assert table.shape == (1, 4)
    assert table[0, 3] == pytest.approx(1.8270418733442704, rel=1e-10)


def test_width_table_domain_errors():
    with pytest.raises(ValueError):
        width_table(1e-8, 1.0, 10)
    with pytest.raises(ValueError):
        width_table(0.5, 0.1, 10)
    with pytest.raises(ValueError):
        width_table(1e-8, 0.5, 0)
