"""Value-preserving time-series downsampling with a visual-fidelity harness.

Five selection algorithms (EveryNth, MinMax, M4, LTTB, MinMaxLTTB) that
return indices into the original samples, plus the machinery to judge them:
a deterministic line-chart rasterizer, mask-scaled pixel metrics, synthetic
template generators, and a runtime-scaling benchmark.
"""
from .bench import (
    BenchResult,
    ScalingFit,
    ScalingReport,
    default_bench_configs,
    fit_and_report,
    run_bench,
    write_bench_csv,
)
from .core import Algorithm, BucketPartition, DownsampleConfig, TimeSeries, partition, validate
from .datagen import KINDS, TemplateSpec, generate
from .downsamplers import (
    downsample,
    every_nth,
    lttb,
    m4,
    minmax,
    minmax_preselect,
    minmaxlttb,
    run_parallel,
)
from .evaluation import default_n_out_grid, default_template_specs, run_evaluation
from .metrics import ConvMask, MetricReport, conv_mask, dssim, mse, pem, write_report_csv
from .raster import Canvas, RasterImage, fit_canvas, rasterize, read_pgm, write_pgm
from .seriesio import read_series, write_series
from . import errors

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "BenchResult",
    "BucketPartition",
    "Canvas",
    "ConvMask",
    "DownsampleConfig",
    "KINDS",
    "MetricReport",
    "RasterImage",
    "ScalingFit",
    "ScalingReport",
    "TemplateSpec",
    "TimeSeries",
    "conv_mask",
    "default_bench_configs",
    "default_n_out_grid",
    "default_template_specs",
    "downsample",
    "dssim",
    "errors",
    "every_nth",
    "fit_and_report",
    "fit_canvas",
    "generate",
    "lttb",
    "m4",
    "minmax",
    "minmax_preselect",
    "minmaxlttb",
    "mse",
    "partition",
    "pem",
    "rasterize",
    "read_pgm",
    "read_series",
    "run_bench",
    "run_evaluation",
    "run_parallel",
    "validate",
    "write_bench_csv",
    "write_pgm",
    "write_report_csv",
    "write_series",
]
