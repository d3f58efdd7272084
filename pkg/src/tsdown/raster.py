"""Deterministic grayscale line-chart rasterization.

Renders a (sub)series as an anti-aliased polyline of stroke width 2 on a
fixed-size canvas: background 0, full ink 255, fractional pixel coverage in
between. Reference and downsampled renderings share one canvas so pixel
metrics compare like with like. Output is bit-identical across runs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import _draw_polyline
from .core import TimeSeries
from .errors import DegenerateRange

__all__ = ["Canvas", "RasterImage", "fit_canvas", "rasterize", "write_pgm", "read_pgm"]

_MIN_SIDE = 16


@dataclass(frozen=True)
class Canvas:
    """Pixel dimensions plus the data ranges they map to."""

    width: int
    height: int
    x_range: tuple[float, float]
    y_range: tuple[float, float]

    def __post_init__(self):
        if self.width < _MIN_SIDE or self.height < _MIN_SIDE:
            raise ValueError(f"canvas must be at least {_MIN_SIDE}x{_MIN_SIDE} pixels")
        if not self.x_range[1] > self.x_range[0]:
            raise DegenerateRange(f"x_range has no extent: {self.x_range}")
        if not self.y_range[1] > self.y_range[0]:
            raise DegenerateRange(f"y_range has no extent: {self.y_range}")


@dataclass(frozen=True, eq=False)
class RasterImage:
    """Row-major grayscale pixel grid, intensities 0..255."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.dtype != np.uint8:
            raise ValueError("pixels must be a 2-D uint8 array")
        px = px.copy()
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def ink_count(self) -> int:
        return int(np.count_nonzero(self.pixels))


def fit_canvas(series: TimeSeries, width: int, height: int) -> Canvas:
    """Canvas covering the series with 2% padding per side.

    A constant series (or constant x) gets an absolute +-0.5 pad instead so
    the range never degenerates.
    """

    def padded(lo: float, hi: float) -> tuple[float, float]:
        span = hi - lo
        pad = 0.02 * span if span > 0 else 0.5
        return lo - pad, hi + pad

    return Canvas(
        width,
        height,
        padded(float(series.xs[0]), float(series.xs[-1])),
        padded(float(series.ys.min()), float(series.ys.max())),
    )


def rasterize(
    series: TimeSeries, canvas: Canvas, indices: np.ndarray | None = None
) -> RasterImage:
    """Draw the (sub)series as a connected line chart.

    Parameters
    ----------
    series : TimeSeries
        Source samples.
    canvas : Canvas
        Target size and data ranges; geometry outside the canvas is clipped.
    indices : np.ndarray, optional
        Strictly increasing subset to draw; the full series when omitted.

    Returns
    -------
    RasterImage
        Anti-aliased rendering; identical inputs give bit-identical pixels.
    """
    if indices is None:
        xs, ys = series.xs, series.ys
    else:
        xs, ys = series.xs[indices], series.ys[indices]
    if xs.shape[0] < 2:
        raise ValueError("need at least 2 points to draw a line")
    x0, x1 = canvas.x_range
    y0, y1 = canvas.y_range
    us = (xs - x0) / (x1 - x0) * canvas.width
    vs = (y1 - ys) / (y1 - y0) * canvas.height  # row 0 is the top of the chart
    acc = np.zeros((canvas.height, canvas.width), dtype=np.float64)
    _draw_polyline(us, vs, acc)
    return RasterImage(np.minimum(np.rint(acc), 255.0).astype(np.uint8))


def write_pgm(image: RasterImage, path) -> None:
    """Write a binary PGM (P5, maxval 255)."""
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (image.width, image.height))
        fh.write(image.pixels.tobytes())


def read_pgm(path) -> RasterImage:
    """Read a binary PGM written by :func:`write_pgm`."""
    with open(path, "rb") as fh:
        data = fh.read()
    fields = data.split(maxsplit=4)
    if fields[0] != b"P5" or fields[3] != b"255":
        raise ValueError(f"{path} is not a maxval-255 binary PGM")
    width, height = int(fields[1]), int(fields[2])
    raw = data[len(data) - width * height :]
    pixels = np.frombuffer(raw, dtype=np.uint8).reshape(height, width)
    return RasterImage(pixels)
