"""Pixel metrics between a reference and a downsampled rendering.

All three metrics are restricted to a convolution mask: the union of both
images' ink pixels dilated by a small square kernel. Normalizing by the mask
size keeps values comparable across chart sizes and ignores the empty
background that dominates line charts.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import ndimage

from .errors import DimensionMismatch
from .raster import RasterImage

__all__ = [
    "ConvMask",
    "MetricReport",
    "conv_mask",
    "pem",
    "dssim",
    "mse",
    "write_report_csv",
    "read_report_csv",
]

REPORT_FIELDS = ("template_id", "algorithm", "n_out", "r_ps", "pem20", "dssim", "mse")

_SSIM_WINDOW = 8
_SSIM_C1 = (0.01 * 255.0) ** 2
_SSIM_C2 = (0.03 * 255.0) ** 2


@dataclass(frozen=True, eq=False)
class ConvMask:
    """Boolean pixel mask restricting metric computation."""

    pixels: np.ndarray

    @property
    def size(self) -> int:
        return int(np.count_nonzero(self.pixels))


@dataclass(frozen=True)
class MetricReport:
    """One evaluated (template, algorithm, n_out, r_ps) combination."""

    template_id: str
    algorithm: str
    n_out: int
    r_ps: int
    pem20: float
    dssim: float
    mse: float


def _pixel_pair(ref: RasterImage, cand: RasterImage) -> tuple[np.ndarray, np.ndarray]:
    a, b = ref.pixels, cand.pixels
    if a.shape != b.shape:
        raise DimensionMismatch(f"image shapes differ: {a.shape} vs {b.shape}")
    return a, b


def conv_mask(ref: RasterImage, cand: RasterImage, kernel: int = 3) -> ConvMask:
    """Dilate the union of both images' ink pixels by a kernel x kernel square.

    The kernel must be odd so the dilation is centered; dilation clips at the
    image borders.
    """
    a, b = _pixel_pair(ref, cand)
    if kernel < 1 or kernel % 2 == 0:
        raise ValueError(f"kernel must be a positive odd integer, got {kernel}")
    ink = (a > 0) | (b > 0)
    if kernel == 1:
        return ConvMask(ink)
    dilated = ndimage.binary_dilation(ink, structure=np.ones((kernel, kernel), bool))
    return ConvMask(dilated)


def pem(ref: RasterImage, cand: RasterImage, mask: ConvMask, margin: int = 20) -> float:
    """Pixel error with a margin: share of mask pixels differing by more than
    ``margin`` intensity levels. 0 on an empty mask."""
    a, b = _pixel_pair(ref, cand)
    if not 0 <= margin <= 255:
        raise ValueError(f"margin must be in [0, 255], got {margin}")
    if mask.size == 0:
        return 0.0
    diff = np.abs(a.astype(np.int16) - b.astype(np.int16))
    exceeded = int(np.count_nonzero(diff[mask.pixels] > margin))
    return exceeded / mask.size


def _ssim_map(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # per-pixel SSIM from 8x8 sliding-window moments (uniform window,
    # reflect-padded borders), standard stabilizing constants
    fa = a.astype(np.float64)
    fb = b.astype(np.float64)

    def win_mean(img: np.ndarray) -> np.ndarray:
        return ndimage.uniform_filter(img, size=_SSIM_WINDOW, mode="reflect")

    mu_a = win_mean(fa)
    mu_b = win_mean(fb)
    var_a = win_mean(fa * fa) - mu_a * mu_a
    var_b = win_mean(fb * fb) - mu_b * mu_b
    cov = win_mean(fa * fb) - mu_a * mu_b
    return ((2.0 * mu_a * mu_b + _SSIM_C1) * (2.0 * cov + _SSIM_C2)) / (
        (mu_a * mu_a + mu_b * mu_b + _SSIM_C1) * (var_a + var_b + _SSIM_C2)
    )


def dssim(ref: RasterImage, cand: RasterImage, mask: ConvMask) -> float:
    """Mean structural dissimilarity (1 - SSIM) / 2 over the mask pixels."""
    a, b = _pixel_pair(ref, cand)
    if mask.size == 0:
        return 0.0
    dssim_map = (1.0 - _ssim_map(a, b)) / 2.0
    return float(dssim_map[mask.pixels].mean())


def mse(ref: RasterImage, cand: RasterImage, mask: ConvMask) -> float:
    """Mean squared error over the mask, intensities scaled to [0, 1]."""
    a, b = _pixel_pair(ref, cand)
    if mask.size == 0:
        return 0.0
    diff = (a.astype(np.float64) - b.astype(np.float64)) / 255.0
    return float((diff[mask.pixels] ** 2).mean())


def write_report_csv(reports: Iterable[MetricReport], path) -> None:
    """Write metric rows as CSV with the canonical column order."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(REPORT_FIELDS)
        for r in reports:
            writer.writerow(
                [r.template_id, r.algorithm, r.n_out, r.r_ps,
                 repr(r.pem20), repr(r.dssim), repr(r.mse)]
            )


def read_report_csv(path) -> list[MetricReport]:
    """Read rows written by :func:`write_report_csv`."""
    out: list[MetricReport] = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != REPORT_FIELDS:
            raise ValueError(f"unexpected metrics CSV header in {path}")
        for row in reader:
            out.append(
                MetricReport(
                    template_id=row["template_id"],
                    algorithm=row["algorithm"],
                    n_out=int(row["n_out"]),
                    r_ps=int(row["r_ps"]),
                    pem20=float(row["pem20"]),
                    dssim=float(row["dssim"]),
                    mse=float(row["mse"]),
                )
            )
    return out


def _metric_triple(
    ref: RasterImage, cand: RasterImage, kernel: int = 3, margin: int = 20
) -> tuple[float, float, float]:
    """(pem, dssim, mse) for one image pair under a shared mask."""
    mask = conv_mask(ref, cand, kernel)
    return pem(ref, cand, mask, margin), dssim(ref, cand, mask), mse(ref, cand, mask)
