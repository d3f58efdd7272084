"""The five selection algorithms, sequential and parallel.

Every function returns strictly increasing int64 indices into the input
series; selected points are always original samples (no averaging). Inputs
are assumed validated (``TimeSeries`` enforces its invariants at
construction), so only O(1) configuration checks happen here.
"""
from __future__ import annotations

from contextlib import contextmanager

import numpy as np

from ._kernels import _extrema_by_bucket, _extrema_by_bucket_parallel, _lttb_select
from .core import Algorithm, DownsampleConfig, TimeSeries, partition, validate
from .errors import (
    BadPreselectionRatio,
    NotParallelizable,
    NOutNotDivisibleBy4,
    NOutOfRange,
    OddNOut,
    RatioTooLargeForSeries,
)

__all__ = [
    "every_nth",
    "minmax",
    "m4",
    "lttb",
    "minmax_preselect",
    "minmaxlttb",
    "run_parallel",
    "downsample",
]


def _check_n_out(series: TimeSeries, n_out: int) -> int:
    n = len(series)
    if not 3 <= n_out <= n:
        raise NOutOfRange(f"n_out must be in [3, {n}], got {n_out}")
    return n


def every_nth(series: TimeSeries, n_out: int) -> np.ndarray:
    """Select indices ``floor(i * N / n_out)`` for i in [0, n_out)."""
    n = _check_n_out(series, n_out)
    return (np.arange(n_out, dtype=np.int64) * n) // n_out


def _bucket_extrema(ys: np.ndarray, boundaries: np.ndarray, parallel: bool):
    """Per-bucket argmin/argmax of y, first occurrence on ties."""
    k = boundaries.shape[0] - 1
    idx_min = np.empty(k, dtype=np.int64)
    idx_max = np.empty(k, dtype=np.int64)
    kernel = _extrema_by_bucket_parallel if parallel else _extrema_by_bucket
    kernel(ys.view(np.int64), boundaries, idx_min, idx_max)
    return idx_min, idx_max


def _interleave_minmax(idx_min: np.ndarray, idx_max: np.ndarray) -> np.ndarray:
    """Sort each bucket's (min, max) pair by index and drop duplicates."""
    lo = np.minimum(idx_min, idx_max)
    hi = np.maximum(idx_min, idx_max)
    out = np.empty(2 * lo.shape[0], dtype=np.int64)
    out[0::2] = lo
    out[1::2] = hi
    keep = np.ones(out.shape[0], dtype=bool)
    keep[1::2] = hi != lo
    return out[keep]


def minmax(series: TimeSeries, n_out: int, parallel: bool = False) -> np.ndarray:
    """Vertical extrema per bucket.

    Partitions [0, N) into n_out/2 buckets and emits each bucket's argmin and
    argmax of y in index order (one index when they coincide).

    Parameters
    ----------
    series : TimeSeries
        Input samples.
    n_out : int
        Target output size; must be even.
    parallel : bool
        Distribute buckets over the active worker threads.
    """
    n = _check_n_out(series, n_out)
    if n_out % 2:
        raise OddNOut(f"minmax needs an even n_out, got {n_out}")
    boundaries = partition(0, n, n_out // 2).boundaries
    idx_min, idx_max = _bucket_extrema(series.ys, boundaries, parallel)
    return _interleave_minmax(idx_min, idx_max)


def m4(series: TimeSeries, n_out: int, parallel: bool = False) -> np.ndarray:
    """First, min, max, and last sample per bucket.

    Partitions [0, N) into n_out/4 buckets; per bucket the four extrema are
    emitted in index order with duplicates removed.
    """
    n = _check_n_out(series, n_out)
    if n_out % 4:
        raise NOutNotDivisibleBy4(f"m4 needs n_out divisible by 4, got {n_out}")
    boundaries = partition(0, n, n_out // 4).boundaries
    idx_min, idx_max = _bucket_extrema(series.ys, boundaries, parallel)
    quad = np.stack(
        [boundaries[:-1], idx_min, idx_max, boundaries[1:] - 1], axis=1
    )
    quad.sort(axis=1)
    keep = np.ones_like(quad, dtype=bool)
    keep[:, 1:] = quad[:, 1:] != quad[:, :-1]
    return quad[keep]


def lttb(series: TimeSeries, n_out: int) -> np.ndarray:
    """Largest-Triangle-Three-Buckets selection.

    Keeps the first and last sample and picks, per interior bucket, the point
    forming the largest triangle with the previously selected point and the
    next bucket's mean point. Ties go to the lowest index. The left-to-right
    dependency makes this inherently sequential.

    Returns
    -------
    np.ndarray
        Exactly ``n_out`` strictly increasing indices.
    """
    n = _check_n_out(series, n_out)
    boundaries = partition(1, n - 1, n_out - 2).boundaries
    out = np.empty(n_out, dtype=np.int64)
    _lttb_select(series.xs, series.ys, boundaries, out)
    return out


def minmax_preselect(
    series: TimeSeries, n_out: int, r_ps: int, parallel: bool = False
) -> np.ndarray:
    """MinMax candidate preselection for MinMaxLTTB.

    The interior range [1, N-1) is split into ``(n_out - 2) * r_ps / 2``
    sub-buckets (so each group of r_ps/2 sub-buckets tiles one LTTB bucket)
    and each sub-bucket contributes its vertical extrema. Indices 0 and N-1
    are always included. Auxiliary memory is proportional to ``r_ps * n_out``,
    never to N.
    """
    n = _check_n_out(series, n_out)
    if r_ps < 2 or r_ps % 2:
        raise BadPreselectionRatio(f"preselection needs an even r_ps >= 2, got {r_ps}")
    sub_buckets = (n_out - 2) * (r_ps // 2)
    if sub_buckets > n - 2:
        raise RatioTooLargeForSeries(
            f"{sub_buckets} sub-buckets exceed the {n - 2} interior samples"
        )
    boundaries = partition(1, n - 1, sub_buckets).boundaries
    idx_min, idx_max = _bucket_extrema(series.ys, boundaries, parallel)
    pairs = _interleave_minmax(idx_min, idx_max)
    out = np.empty(pairs.shape[0] + 2, dtype=np.int64)
    out[0] = 0
    out[1:-1] = pairs
    out[-1] = n - 1
    return out


def _minmax_with_endpoints(series: TimeSeries, n_out: int, parallel: bool) -> np.ndarray:
    # r_ps = 1 contract: plain MinMax with indices 0 and N-1 forced into the
    # output, replacing the first/last selection when there is no room left
    n = len(series)
    idx = minmax(series, n_out, parallel=parallel)
    if idx[0] != 0:
        if idx.shape[0] < n_out:
            idx = np.concatenate((np.array([0], dtype=np.int64), idx))
        else:
            idx[0] = 0
    if idx[-1] != n - 1:
        if idx.shape[0] < n_out:
            idx = np.concatenate((idx, np.array([n - 1], dtype=np.int64)))
        else:
            idx[-1] = n - 1
    return idx


def minmaxlttb(
    series: TimeSeries, n_out: int, r_ps: int = 4, parallel: bool = False
) -> np.ndarray:
    """Two-step selection: MinMax preselection, then LTTB on the candidates.

    Step one preselects about ``r_ps * n_out`` vertical extrema (plus both
    endpoints); step two runs plain LTTB over that sub-series, using the
    original x-values, and maps the picks back to input indices. With
    ``r_ps=1`` this degenerates to MinMax with forced endpoints.

    Parameters
    ----------
    series : TimeSeries
        Input samples.
    n_out : int
        Target output size.
    r_ps : int
        Preselection ratio: 1, or an even integer >= 2.
    parallel : bool
        Parallelize the preselection stage (the LTTB pass over the
        preselected points stays sequential).
    """
    if r_ps == 1:
        return _minmax_with_endpoints(series, n_out, parallel)
    preselected = minmax_preselect(series, n_out, r_ps, parallel)
    sub = series.take(preselected)
    positions = lttb(sub, n_out)
    return preselected[positions]


@contextmanager
def _worker_threads(requested: int):
    import numba

    previous = numba.get_num_threads()
    numba.set_num_threads(max(1, min(requested, numba.config.NUMBA_NUM_THREADS)))
    try:
        yield
    finally:
        numba.set_num_threads(previous)


def run_parallel(series: TimeSeries, config: DownsampleConfig) -> np.ndarray:
    """Run a parallelizable algorithm with the configured worker count.

    Output is byte-identical to the sequential run of the same config: work
    splits into disjoint buckets whose results land in disjoint output slots.
    LTTB is rejected because its selection depends on the previous bucket's
    pick. Requested threads are capped at the runtime's worker pool size.
    """
    if not config.parallel:
        raise ValueError("run_parallel needs a config with parallel=True")
    validate(series, config)
    if config.algorithm is Algorithm.LTTB:
        raise NotParallelizable("LTTB is not parallelizable")
    with _worker_threads(config.threads):
        if config.algorithm is Algorithm.EVERY_NTH:
            return every_nth(series, config.n_out)
        if config.algorithm is Algorithm.MINMAX:
            return minmax(series, config.n_out, parallel=True)
        if config.algorithm is Algorithm.M4:
            return m4(series, config.n_out, parallel=True)
        return minmaxlttb(series, config.n_out, config.r_ps, parallel=True)


def downsample(series: TimeSeries, config: DownsampleConfig) -> np.ndarray:
    """Dispatch a config to the matching algorithm (sequential or parallel)."""
    validate(series, config)
    if config.parallel:
        return run_parallel(series, config)
    if config.algorithm is Algorithm.EVERY_NTH:
        return every_nth(series, config.n_out)
    if config.algorithm is Algorithm.MINMAX:
        return minmax(series, config.n_out)
    if config.algorithm is Algorithm.M4:
        return m4(series, config.n_out)
    if config.algorithm is Algorithm.LTTB:
        return lttb(series, config.n_out)
    return minmaxlttb(series, config.n_out, config.r_ps)
