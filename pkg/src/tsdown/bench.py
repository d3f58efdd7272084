"""Runtime-scaling harness: medians over warm repetitions, linear fits, speedups.

One input series is generated per N and reused across configs so ratios
compare identical work. The harness itself is strictly serial; only the
measured algorithm may use worker threads.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import Algorithm, DownsampleConfig, TimeSeries
from .datagen import TemplateSpec, generate
from .downsamplers import downsample
from .errors import InsufficientData, OutOfMemory

__all__ = [
    "DEFAULT_N_GRID",
    "BenchResult",
    "ScalingFit",
    "ScalingReport",
    "default_bench_configs",
    "run_bench",
    "fit_and_report",
    "write_bench_csv",
]

DEFAULT_N_GRID = (100_000, 300_000, 1_000_000, 3_000_000, 10_000_000)

BENCH_FIELDS = (
    "algorithm", "parallel", "threads", "N", "n_out", "r_ps", "median_s", "iqr_s", "reps",
)

# reference speedup figures the report prints next to measured ratios
NOMINAL_SEQUENTIAL_SPEEDUP = 10.0
NOMINAL_PARALLEL_SPEEDUP = 30.0


@dataclass(frozen=True)
class BenchResult:
    """Median runtime of one (config, N) cell."""

    algorithm: str
    parallel: bool
    threads: int
    n: int
    n_out: int
    r_ps: int
    median_s: float
    iqr_s: float
    reps: int

    def config_key(self) -> tuple:
        return (self.algorithm, self.parallel, self.threads, self.n_out, self.r_ps)


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares runtime = slope * N + intercept for one config."""

    config_key: tuple
    slope: float
    intercept: float
    r_squared: float
    points: int
    error: str | None = None


@dataclass
class ScalingReport:
    fits: list[ScalingFit]
    speedups: dict[str, float] = field(default_factory=dict)
    speedup_n: int = 0

    def summary(self) -> str:
        lines = ["runtime scaling (least-squares fit of median runtime vs N):"]
        for f in self.fits:
            algo, parallel, threads, n_out, r_ps = f.config_key
            label = f"{algo}{' parallel' if parallel else ''} (threads={threads}, n_out={n_out}, r_ps={r_ps})"
            if f.error:
                lines.append(f"  {label}: {f.error} ({f.points} points)")
            else:
                lines.append(
                    f"  {label}: slope={f.slope:.3e} s/sample, intercept={f.intercept:.3e} s, R^2={f.r_squared:.4f}"
                )
        if "sequential" in self.speedups:
            lines.append(
                f"sequential speedup (MinMaxLTTB vs LTTB) at N={self.speedup_n}: "
                f"{self.speedups['sequential']:.2f}x "
                f"(nominal reference: {NOMINAL_SEQUENTIAL_SPEEDUP:.0f}x)"
            )
        if "parallel" in self.speedups:
            lines.append(
                f"parallel speedup (parallel MinMaxLTTB vs LTTB) at N={self.speedup_n}: "
                f"{self.speedups['parallel']:.2f}x "
                f"(nominal reference: {NOMINAL_PARALLEL_SPEEDUP:.0f}x)"
            )
        if "parallel_vs_sequential" in self.speedups:
            lines.append(
                f"parallel MinMaxLTTB vs sequential MinMaxLTTB at N={self.speedup_n}: "
                f"{self.speedups['parallel_vs_sequential']:.2f}x"
            )
        return "\n".join(lines)


def default_bench_configs(
    n_out: int = 2000, r_ps: int = 4, threads: int = 4
) -> list[DownsampleConfig]:
    """LTTB sequential, MinMaxLTTB sequential, MinMaxLTTB parallel."""
    return [
        DownsampleConfig(Algorithm.LTTB, n_out),
        DownsampleConfig(Algorithm.MINMAXLTTB, n_out, r_ps=r_ps),
        DownsampleConfig(Algorithm.MINMAXLTTB, n_out, r_ps=r_ps, parallel=True, threads=threads),
    ]


def _timed_run(series: TimeSeries, config: DownsampleConfig, reps: int) -> tuple[float, float]:
    # first (warm-up) run is discarded; it also validates the output so a
    # broken kernel cannot return garbage quickly
    times = []
    for rep in range(reps + 1):
        t0 = time.perf_counter()
        indices = downsample(series, config)
        elapsed = time.perf_counter() - t0
        if rep == 0:
            if not np.all(np.diff(indices) > 0):
                raise AssertionError(f"non-monotonic output for {config}")
        else:
            times.append(elapsed)
    q25, q50, q75 = np.percentile(times, [25, 50, 75])
    return float(q50), float(q75 - q25)


def run_bench(
    configs: Sequence[DownsampleConfig],
    n_grid: Sequence[int] = DEFAULT_N_GRID,
    reps: int = 5,
    seed: int = 0,
    kind: str = "white_noise",
) -> list[BenchResult]:
    """Measure every config on every N; one shared input per N.

    ``reps`` is the number of timed repetitions (at least 5) after the
    discarded warm-up run.
    """
    if reps < 5:
        raise ValueError(f"need at least 5 repetitions, got {reps}")
    results: list[BenchResult] = []
    for n in sorted(n_grid):
        try:
            series = generate(TemplateSpec(kind, n, seed))
        except MemoryError as exc:
            raise OutOfMemory(f"failed to allocate the N={n} input series") from exc
        for config in configs:
            try:
                median_s, iqr_s = _timed_run(series, config, reps)
            except MemoryError as exc:
                raise OutOfMemory(f"out of memory at N={n} for {config}") from exc
            results.append(
                BenchResult(
                    algorithm=config.algorithm.value,
                    parallel=config.parallel,
                    threads=config.threads,
                    n=n,
                    n_out=config.n_out,
                    r_ps=config.r_ps,
                    median_s=median_s,
                    iqr_s=iqr_s,
                    reps=reps,
                )
            )
        del series
    return results


def _linear_fit(ns: np.ndarray, ts: np.ndarray) -> tuple[float, float, float]:
    slope, intercept = np.polyfit(ns, ts, 1)
    predicted = slope * ns + intercept
    ss_res = float(((ts - predicted) ** 2).sum())
    ss_tot = float(((ts - ts.mean()) ** 2).sum())
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r_squared


def fit_and_report(results: Sequence[BenchResult]) -> ScalingReport:
    """Per-config linear fits plus MinMaxLTTB-vs-LTTB speedups.

    Configs with fewer than 3 distinct N get an ``InsufficientData`` marker;
    the error is only raised when no config can be fitted at all.
    """
    by_config: dict[tuple, list[BenchResult]] = {}
    for r in results:
        by_config.setdefault(r.config_key(), []).append(r)

    fits: list[ScalingFit] = []
    for key, rows in sorted(by_config.items()):
        rows = sorted(rows, key=lambda r: r.n)
        ns = np.array([r.n for r in rows], dtype=np.float64)
        ts = np.array([r.median_s for r in rows], dtype=np.float64)
        if len(set(r.n for r in rows)) < 3:
            fits.append(ScalingFit(key, float("nan"), float("nan"), float("nan"),
                                   len(rows), error="InsufficientData"))
            continue
        slope, intercept, r2 = _linear_fit(ns, ts)
        fits.append(ScalingFit(key, slope, intercept, r2, len(rows)))
    if fits and all(f.error for f in fits):
        raise InsufficientData("no config has measurements at 3 or more sizes")

    report = ScalingReport(fits=fits)

    def median_at(predicate, n):
        rows = [r for r in results if predicate(r) and r.n == n]
        return rows[0].median_s if rows else None

    lttb_seq = lambda r: r.algorithm == Algorithm.LTTB.value and not r.parallel
    mml_seq = lambda r: r.algorithm == Algorithm.MINMAXLTTB.value and not r.parallel
    mml_par = lambda r: r.algorithm == Algorithm.MINMAXLTTB.value and r.parallel
    common = sorted(
        {r.n for r in results if lttb_seq(r)} & {r.n for r in results if mml_seq(r)}
    )
    if common:
        n_ref = common[-1]
        report.speedup_n = n_ref
        t_lttb = median_at(lttb_seq, n_ref)
        t_seq = median_at(mml_seq, n_ref)
        t_par = median_at(mml_par, n_ref)
        if t_lttb and t_seq:
            report.speedups["sequential"] = t_lttb / t_seq
        if t_lttb and t_par:
            report.speedups["parallel"] = t_lttb / t_par
        if t_seq and t_par:
            report.speedups["parallel_vs_sequential"] = t_seq / t_par
    return report


def write_bench_csv(results: Sequence[BenchResult], path) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(BENCH_FIELDS)
        for r in results:
            writer.writerow(
                [r.algorithm, int(r.parallel), r.threads, r.n, r.n_out, r.r_ps,
                 repr(r.median_s), repr(r.iqr_s), r.reps]
            )
