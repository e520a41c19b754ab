"""Mean estimators: the empirical mean and the median-of-means.

The median-of-means estimator splits a sample into ``K`` contiguous blocks of
(near-)equal size, averages each block, and returns the median of the block
means.  Corrupting fewer than ``K/2`` blocks moves the estimate by at most the
spread of the clean block means, which is what buys robustness against heavy
tails and outliers that wreck the plain empirical mean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "as_sample",
    "empirical_mean",
    "BlockPartition",
    "partition_blocks",
    "block_means",
    "median_of_means",
]


def as_sample(values) -> np.ndarray:
    """Validate and return a 1-d float sample array (non-empty, finite)."""
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"sample must be 1-dimensional, got shape {x.shape}")
    if x.size == 0:
        raise ValueError("sample must not be empty")
    if not np.all(np.isfinite(x)):
        raise ValueError("sample must contain only finite values")
    return x


def empirical_mean(sample) -> float:
    """Arithmetic mean of the sample."""
    return float(np.mean(as_sample(sample)))


@dataclass(frozen=True)
class BlockPartition:
    """``k`` contiguous blocks covering ``range(n)``, sizes differing by at most 1.

    ``offsets`` has length ``k + 1``; block ``i`` is ``range(offsets[i], offsets[i+1])``.
    """

    n: int
    k: int
    offsets: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        sizes = np.diff(self.offsets)
        if (
            len(self.offsets) != self.k + 1
            or self.offsets[0] != 0
            or self.offsets[-1] != self.n
            or sizes.min() < 1
            or sizes.max() - sizes.min() > 1
        ):
            raise ValueError("offsets do not describe balanced contiguous blocks")
        self.offsets.setflags(write=False)

    @property
    def sizes(self) -> np.ndarray:
        return np.diff(self.offsets)


def partition_blocks(n: int, k: int) -> BlockPartition:
    """Split ``range(n)`` into ``k`` contiguous balanced blocks.

    When ``k`` divides ``n`` all blocks have size ``n // k``; otherwise the
    first ``n % k`` blocks are one element longer.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    base, rem = divmod(n, k)
    sizes = np.full(k, base, dtype=np.int64)
    sizes[:rem] += 1
    offsets = np.concatenate(([0], np.cumsum(sizes)))
    return BlockPartition(n=n, k=k, offsets=offsets)


def block_means(sample, partition: BlockPartition) -> np.ndarray:
    """Per-block means of the sample under the given partition."""
    x = as_sample(sample)
    if x.size != partition.n:
        raise ValueError(f"sample length {x.size} does not match partition over {partition.n}")
    if partition.n % partition.k == 0:
        # same pairwise summation as np.mean, so one block reproduces the
        # empirical mean bit for bit
        return x.reshape(partition.k, -1).mean(axis=1)
    sums = np.add.reduceat(x, partition.offsets[:-1])
    return sums / partition.sizes


def median_of_means(sample, k: int) -> float:
    """Median of the ``k`` block means (midpoint of the central pair for even ``k``).

    ``k = 1`` degenerates to the empirical mean.
    """
    x = as_sample(sample)
    return float(np.median(block_means(x, partition_blocks(x.size, k))))
