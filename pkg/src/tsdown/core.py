"""Shared domain types: validated series, configs, and bucket partitioning.

Series-level invariants (equal lengths, sorted x, finite values) are enforced
once, at :class:`TimeSeries` construction; the arrays are then frozen so a
series can be shared across threads without synchronization. ``validate``
checks a config against an already-constructed series and is O(1).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np

from .errors import (
    BadPreselectionRatio,
    InvalidPartition,
    NonFiniteValue,
    NonMonotonicX,
    NOutNotDivisibleBy4,
    NOutOfRange,
    NotParallelizable,
    OddNOut,
    RatioTooLargeForSeries,
)

__all__ = [
    "Algorithm",
    "TimeSeries",
    "DownsampleConfig",
    "BucketPartition",
    "partition",
    "validate",
]


class Algorithm(str, Enum):
    """Selection algorithms, keyed by their command-line names."""

    EVERY_NTH = "everynth"
    MINMAX = "minmax"
    M4 = "m4"
    LTTB = "lttb"
    MINMAXLTTB = "minmaxlttb"


def _frozen_f64(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)  # owning copy
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Immutable ordered (x, y) samples.

    Parameters
    ----------
    xs : array-like
        Sample positions, sorted non-decreasing, all finite.
    ys : array-like
        Sample values, same length as ``xs``, all finite.

    Raises
    ------
    NonMonotonicX
        If ``xs`` is not sorted non-decreasing.
    NonFiniteValue
        If any sample is NaN or infinite.
    ValueError
        On length mismatch or fewer than 2 samples.
    """

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = _frozen_f64(self.xs, "xs")
        ys = _frozen_f64(self.ys, "ys")
        if xs.shape[0] != ys.shape[0]:
            raise ValueError(
                f"xs and ys must have the same length, got {xs.shape[0]} and {ys.shape[0]}"
            )
        if xs.shape[0] < 2:
            raise ValueError("a series needs at least 2 samples")
        if not np.isfinite(xs).all() or not np.isfinite(ys).all():
            raise NonFiniteValue("series contains NaN or infinite values")
        if np.any(xs[1:] < xs[:-1]):
            raise NonMonotonicX("xs must be sorted in non-decreasing order")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def __len__(self) -> int:
        return self.xs.shape[0]

    @property
    def n(self) -> int:
        return self.xs.shape[0]

    def take(self, indices: np.ndarray) -> "TimeSeries":
        """Sub-series at the given strictly increasing indices."""
        return TimeSeries(self.xs[indices], self.ys[indices])


@dataclass(frozen=True)
class DownsampleConfig:
    """Algorithm choice plus its knobs.

    ``r_ps`` is the preselection ratio and only affects MinMaxLTTB; it must be
    1 (degenerates to MinMax) or an even integer >= 2. ``threads`` is only
    effective when ``parallel`` is set.
    """

    algorithm: Algorithm
    n_out: int
    r_ps: int = 4
    parallel: bool = False
    threads: int = 1

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))
        if self.n_out < 3:
            raise NOutOfRange(f"n_out must be at least 3, got {self.n_out}")
        if self.r_ps < 1 or (self.r_ps > 1 and self.r_ps % 2):
            raise BadPreselectionRatio(
                f"r_ps must be 1 or an even integer >= 2, got {self.r_ps}"
            )
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")


@dataclass(frozen=True)
class BucketPartition:
    """Contiguous equal-count buckets over an index range.

    ``boundaries`` holds k+1 ascending split positions; bucket b covers
    ``[boundaries[b], boundaries[b+1])``. Sizes differ by at most one.
    """

    boundaries: np.ndarray

    @property
    def num_buckets(self) -> int:
        return self.boundaries.shape[0] - 1

    def sizes(self) -> np.ndarray:
        return np.diff(self.boundaries)

    def __len__(self) -> int:
        return self.num_buckets

    def __iter__(self) -> Iterator[tuple[int, int]]:
        b = self.boundaries
        for i in range(b.shape[0] - 1):
            yield int(b[i]), int(b[i + 1])


def partition(range_start: int, range_end: int, k: int) -> BucketPartition:
    """Split ``[range_start, range_end)`` into k contiguous equal-count buckets.

    Bucket b spans ``[start + floor(b*L/k), start + floor((b+1)*L/k))`` with
    ``L = range_end - range_start``, which spreads any remainder so bucket
    sizes differ by at most one.
    """
    length = range_end - range_start
    if k < 1 or k > length:
        raise InvalidPartition(
            f"cannot split {length} indices into {k} non-empty buckets"
        )
    boundaries = range_start + (np.arange(k + 1, dtype=np.int64) * length) // k
    boundaries.flags.writeable = False
    return BucketPartition(boundaries)


def validate(series: TimeSeries, config: DownsampleConfig) -> None:
    """Check a config against a series; raises the named violation.

    Series-level invariants are already guaranteed by ``TimeSeries``
    construction, so this only has to check the config-to-series contract
    plus the chosen algorithm's divisibility rules. Returns None when valid.
    """
    n = len(series)
    if not 3 <= config.n_out <= n:
        raise NOutOfRange(f"n_out must be in [3, {n}], got {config.n_out}")
    algo = config.algorithm
    if algo is Algorithm.MINMAX and config.n_out % 2:
        raise OddNOut(f"minmax needs an even n_out, got {config.n_out}")
    if algo is Algorithm.M4 and config.n_out % 4:
        raise NOutNotDivisibleBy4(f"m4 needs n_out divisible by 4, got {config.n_out}")
    if algo is Algorithm.MINMAXLTTB:
        if config.r_ps == 1:
            if config.n_out % 2:
                raise OddNOut(
                    f"minmaxlttb with r_ps=1 runs minmax and needs an even n_out, got {config.n_out}"
                )
        else:
            sub_buckets = (config.n_out - 2) * (config.r_ps // 2)
            if sub_buckets > n - 2:
                raise RatioTooLargeForSeries(
                    f"{sub_buckets} sub-buckets exceed the {n - 2} interior samples"
                )
    if config.parallel and algo is Algorithm.LTTB:
        raise NotParallelizable("LTTB is not parallelizable")
