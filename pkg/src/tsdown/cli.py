"""Command-line interface: downsample / evaluate / bench / generate.

Exit codes: 0 success, 1 I/O or resource error, 2 validation error,
3 evaluation finished with per-combination failures. Data goes to stdout or
files; diagnostics go to stderr.
"""
from __future__ import annotations

import functools
import os
import sys
import time

import click
import numpy as np

from .bench import (
    DEFAULT_N_GRID,
    default_bench_configs,
    fit_and_report,
    run_bench,
    write_bench_csv,
)
from .core import Algorithm, DownsampleConfig
from .datagen import KINDS, TemplateSpec, generate
from .downsamplers import downsample
from .errors import InsufficientData, OutOfMemory, ValidationError
from .evaluation import default_n_out_grid, run_evaluation
from .metrics import write_report_csv
from .seriesio import read_series, write_csv_points, write_series

_ALGO_NAMES = [a.value for a in Algorithm]


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _mapped_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ValidationError, InsufficientData) as exc:
            _fail(2, str(exc))
        except (OSError, OutOfMemory, MemoryError) as exc:
            _fail(1, str(exc))
        except ValueError as exc:
            _fail(2, str(exc))

    return wrapper


def _parse_int_list(text: str) -> list[int]:
    return [int(float(part)) for part in text.split(",") if part.strip()]


def _parse_canvas(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise ValueError(f"canvas must look like 800x400, got {text!r}") from None


@click.group()
def main():
    """Value-preserving time-series downsampling toolkit."""


@main.command(name="downsample")
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", type=click.Choice(_ALGO_NAMES), required=True, help="Selection algorithm.")
@click.option("--n-out", type=int, required=True, help="Target number of output points.")
@click.option("--ratio", type=int, default=4, show_default=True,
              help="Preselection ratio r_ps (minmaxlttb only).")
@click.option("--parallel", is_flag=True, help="Parallelize bucket work where the algorithm allows it.")
@click.option("--threads", type=int, default=0, help="Worker threads for --parallel (0 = all cores).")
@click.option("--format", "fmt", type=click.Choice(["auto", "csv", "bin"]), default="auto",
              show_default=True, help="Input file format.")
@click.option("--indices-only", is_flag=True, help="Write selected indices instead of points.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Output file (stdout when omitted).")
@_mapped_errors
def cmd_downsample(input_path, algo, n_out, ratio, parallel, threads, fmt, indices_only, output):
    """Select representative points from a series file."""
    series = read_series(input_path, fmt)
    config = DownsampleConfig(
        Algorithm(algo),
        n_out,
        r_ps=ratio,
        parallel=parallel,
        threads=threads if threads > 0 else (os.cpu_count() or 1),
    )
    t0 = time.perf_counter()
    indices = downsample(series, config)
    elapsed = time.perf_counter() - t0
    click.echo(
        f"selected {indices.shape[0]} of {len(series)} points in {elapsed:.4f} s",
        err=True,
    )
    if indices_only:
        lines = ["index"] + [str(i) for i in indices.tolist()]
        text = "\n".join(lines) + "\n"
        if output is None:
            click.echo(text, nl=False)
        else:
            with open(output, "w") as fh:
                fh.write(text)
    elif output is not None and fmt == "bin" and not output.endswith(".csv"):
        write_series(output, series.take(indices), fmt="bin")
    elif output is None:
        write_csv_points(sys.stdout, series.xs[indices], series.ys[indices])
    else:
        with open(output, "w", newline="") as fh:
            write_csv_points(fh, series.xs[indices], series.ys[indices])


@main.command(name="generate")
@click.option("--kind", type=click.Choice(list(KINDS)), required=True, help="Template kind.")
@click.option("--n", type=int, required=True, help="Series length.")
@click.option("--seed", type=int, default=0, show_default=True, help="PRNG seed.")
@click.option("--param", "params", multiple=True, metavar="NAME=VALUE",
              help="Kind-specific knob; repeatable.")
@click.option("--format", "fmt", type=click.Choice(["csv", "bin"]), default="csv", show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Output file (stdout CSV when omitted).")
@_mapped_errors
def cmd_generate(kind, n, seed, params, fmt, output):
    """Write a deterministic synthetic series."""
    knobs = {}
    for item in params:
        name, _, value = item.partition("=")
        if not _:
            raise ValueError(f"--param needs NAME=VALUE, got {item!r}")
        knobs[name.strip()] = float(value)
    series = generate(TemplateSpec(kind, n, seed, knobs))
    if output is None:
        if fmt == "bin":
            raise ValueError("binary output requires -o/--output")
        write_csv_points(sys.stdout, series.xs, series.ys)
    else:
        write_series(output, series, fmt=fmt)
        click.echo(f"wrote {len(series)} samples to {output}", err=True)


@main.command(name="evaluate")
@click.option("--templates", default=",".join(KINDS), show_default=True,
              help="Comma-separated template kinds.")
@click.option("--n", type=int, default=100_000, show_default=True, help="Template length.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--algos", default="lttb,minmaxlttb", show_default=True,
              help="Comma-separated algorithms to score.")
@click.option("--ratios", default="2,4,6", show_default=True,
              help="Comma-separated r_ps values for minmaxlttb.")
@click.option("--n-out-grid", default="default", show_default=True,
              help="Comma-separated output sizes, or 'default' for the log-spaced grid.")
@click.option("--canvas", default="800x400", show_default=True, help="Canvas as WIDTHxHEIGHT.")
@click.option("--mask-kernel", type=int, default=3, show_default=True,
              help="Odd dilation kernel for the conv-mask.")
@click.option("--dump-images", is_flag=True, help="Also write every rendering as PGM.")
@click.option("-o", "--output-dir", type=click.Path(file_okay=False), default="evaluation-out",
              show_default=True, help="Directory for metrics.csv (and image dumps).")
@_mapped_errors
def cmd_evaluate(templates, n, seed, algos, ratios, n_out_grid, canvas, mask_kernel,
                 dump_images, output_dir):
    """Score downsampled renderings against full-data references."""
    kinds = [k.strip() for k in templates.split(",") if k.strip()]
    specs = [TemplateSpec(kind, n, seed + i) for i, kind in enumerate(kinds)]
    grid = default_n_out_grid() if n_out_grid == "default" else _parse_int_list(n_out_grid)
    width, height = _parse_canvas(canvas)
    os.makedirs(output_dir, exist_ok=True)
    reports, failures = run_evaluation(
        specs,
        [Algorithm(a.strip()) for a in algos.split(",") if a.strip()],
        n_out_grid=grid,
        r_ps_list=_parse_int_list(ratios),
        canvas_size=(width, height),
        mask_kernel=mask_kernel,
        dump_dir=output_dir if dump_images else None,
    )
    csv_path = os.path.join(output_dir, "metrics.csv")
    write_report_csv(reports, csv_path)
    click.echo(f"wrote {len(reports)} metric rows to {csv_path}", err=True)
    if failures:
        for f in failures:
            click.echo(
                f"failed: {f.template_id} {f.algorithm} n_out={f.n_out} r_ps={f.r_ps}: {f.error}",
                err=True,
            )
        sys.exit(3)


@main.command(name="bench")
@click.option("--grid", default="default", show_default=True,
              help="Comma-separated series sizes N, or 'default'.")
@click.option("--n-out", type=int, default=2000, show_default=True)
@click.option("--ratio", type=int, default=4, show_default=True, help="r_ps for minmaxlttb.")
@click.option("--threads", type=int, default=0, help="Threads for the parallel config (0 = all cores).")
@click.option("--reps", type=int, default=5, show_default=True,
              help="Timed repetitions per cell (after one discarded warm-up).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Also write per-cell results as CSV.")
@_mapped_errors
def cmd_bench(grid, n_out, ratio, threads, reps, seed, output):
    """Measure runtime scaling of LTTB vs MinMaxLTTB and print the summary."""
    n_grid = DEFAULT_N_GRID if grid == "default" else _parse_int_list(grid)
    configs = default_bench_configs(
        n_out=n_out, r_ps=ratio, threads=threads if threads > 0 else (os.cpu_count() or 1)
    )
    results = run_bench(configs, n_grid=n_grid, reps=reps, seed=seed)
    if output is not None:
        write_bench_csv(results, output)
        click.echo(f"wrote {len(results)} rows to {output}", err=True)
    click.echo(fit_and_report(results).summary())
