import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from robustpac.estimators import (
    block_means,
    empirical_mean,
    median_of_means,
    partition_blocks,
)

finite_samples = arrays(
    np.float64,
    st.integers(min_value=1, max_value=60),
    elements=st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
)


def test_empirical_mean_hand_values():
    assert empirical_mean([1.0, 2.0, 3.0]) == 2.0
    assert empirical_mean([1, 2, 3, 4, 5, 6]) == 3.5


def test_empirical_mean_of_constant_vector():
    assert empirical_mean(np.full(17, 4.25)) == 4.25


def test_empirical_mean_rejects_empty_and_nonfinite():
    with pytest.raises(ValueError):
        empirical_mean([])
    with pytest.raises(ValueError):
        empirical_mean([1.0, np.nan])
    with pytest.raises(ValueError):
        empirical_mean(np.ones((2, 2)))


def test_partition_divisible():
    assert partition_blocks(6, 3).sizes.tolist() == [2, 2, 2]


def test_partition_remainder_goes_to_leading_blocks():
    assert partition_blocks(7, 3).sizes.tolist() == [3, 2, 2]


def test_partition_singleton_blocks():
    assert partition_blocks(5, 5).sizes.tolist() == [1, 1, 1, 1, 1]


@pytest.mark.parametrize("n,k", [(5, 6), (5, 0), (5, -1), (0, 1)])
def test_partition_domain_errors(n, k):
    with pytest.raises(ValueError):
        partition_blocks(n, k)


@given(st.integers(min_value=1, max_value=500), st.data())
def test_partition_covers_range_disjointly(n, data):
    k = data.draw(st.integers(min_value=1, max_value=n))
    part = partition_blocks(n, k)
    sizes = part.sizes
    assert sizes.sum() == n
    assert sizes.max() - sizes.min() <= 1
    assert part.offsets[0] == 0 and part.offsets[-1] == n


def test_block_means_hand_value():
    part = partition_blocks(6, 3)
    assert block_means([1, 2, 3, 4, 5, 6], part).tolist() == [1.5, 3.5, 5.5]


def test_mom_hand_values():
    assert median_of_means([1, 2, 3, 4, 5, 6], 3) == 3.5
    # even k: midpoint of the two central block means (2 and 5)
    assert median_of_means([1, 2, 3, 4, 5, 6], 2) == 3.5


def test_mom_constant_sample():
    assert median_of_means(np.full(10, 3.0), 4) == 3.0


@given(finite_samples)
def test_mom_with_one_block_is_the_empirical_mean(x):
    assert median_of_means(x, 1) == empirical_mean(x)


@given(finite_samples, st.data(), st.floats(min_value=-100, max_value=100, allow_nan=False))
@settings(max_examples=60)
def test_mom_translation_equivariance(x, data, c):
    k = data.draw(st.integers(min_value=1, max_value=len(x)))
    assert median_of_means(x + c, k) == pytest.approx(median_of_means(x, k) + c, abs=1e-7)


@given(finite_samples, st.data(), st.floats(min_value=1e-3, max_value=100, allow_nan=False))
@settings(max_examples=60)
def test_mom_scale_equivariance(x, data, a):
    k = data.draw(st.integers(min_value=1, max_value=len(x)))
    assert median_of_means(a * x, k) == pytest.approx(a * median_of_means(x, k), rel=1e-12, abs=1e-12)


def test_mom_robustness_witness():
    # corrupt 2 of 6 blocks (fewer than k/2 = 3), one entry per block, by
    # huge values: the estimate moves by at most the clean block-mean spread,
    # while the empirical mean is destroyed
    rng = np.random.default_rng(0)
    x = rng.normal(0.0, 1.0, 60)
    k = 6
    clean_means = block_means(x, partition_blocks(60, k))
    spread = clean_means.max() - clean_means.min()
    corrupted = x.copy()
    corrupted[0] = 1e12  # block 0
    corrupted[10] = -1e12  # block 1
    assert abs(median_of_means(corrupted, k) - median_of_means(x, k)) <= spread
    assert abs(empirical_mean(corrupted) - empirical_mean(x)) < 1e9  # sanity: they cancel here
    corrupted[10] = 1e12
    assert abs(empirical_mean(corrupted) - empirical_mean(x)) > 1e9
    assert abs(median_of_means(corrupted, k) - median_of_means(x, k)) <= spread
