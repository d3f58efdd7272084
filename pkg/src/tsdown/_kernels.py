"""Compiled hot loops.

The extrema kernels compare float64 values through a monotone int64 bit
mapping (IEEE total order), which LLVM vectorizes where plain float min/max
reductions would stay scalar. Index recovery runs only when a block improves
the running extremum, so tie-breaking stays exactly first-occurrence.

The LTTB kernel is kept strict IEEE (no fastmath): bucket means accumulate
left to right and the triangle areas use one fixed expression, so its output
is bit-for-bit reproducible against a naive scalar reference.
"""
from __future__ import annotations

import numpy as np
from numba import njit, prange

# clears the sign bit; used to flip the magnitude bits of negative floats
_MAGNITUDE = np.int64(0x7FFFFFFFFFFFFFFF)
_BLOCK = 64


@njit(cache=True, inline="always")
def _order_key(bits):
    # monotone int64 key for a float64 bit pattern (finite values only)
    return bits ^ ((bits >> 63) & _MAGNITUDE)


@njit(cache=True)
def _argminmax_range(bits, lo, hi):
    """First-occurrence argmin/argmax over ``bits[lo:hi]`` in total order."""
    first = _order_key(bits[lo])
    mn = first
    mx = first
    imn = lo
    imx = lo
    j = lo + 1
    while j < hi:
        e = min(j + _BLOCK, hi)
        bmn = mn
        bmx = mx
        for t in range(j, e):
            key = _order_key(bits[t])
            bmn = min(bmn, key)
            bmx = max(bmx, key)
        # strict comparisons keep the earliest block; the scan inside keeps
        # the earliest index, so ties resolve to the first occurrence
        if bmn < mn:
            mn = bmn
            for t in range(j, e):
                if _order_key(bits[t]) == bmn:
                    imn = t
                    break
        if bmx > mx:
            mx = bmx
            for t in range(j, e):
                if _order_key(bits[t]) == bmx:
                    imx = t
                    break
        j = e
    return imn, imx


@njit(cache=True)
def _extrema_by_bucket(bits, bounds, out_min, out_max):
    for b in range(bounds.shape[0] - 1):
        imn, imx = _argminmax_range(bits, bounds[b], bounds[b + 1])
        out_min[b] = imn
        out_max[b] = imx


@njit(cache=True, parallel=True)
def _extrema_by_bucket_parallel(bits, bounds, out_min, out_max):
    # buckets are disjoint and each writes its own slots, so the result is
    # identical for every worker count
    for b in prange(bounds.shape[0] - 1):
        imn, imx = _argminmax_range(bits, bounds[b], bounds[b + 1])
        out_min[b] = imn
        out_max[b] = imx


@njit(cache=True)
def _lttb_select(xs, ys, bounds, out):
    """Largest-triangle selection over the interior buckets in ``bounds``.

    ``bounds`` has n_out-1 entries covering [1, n-1); ``out`` has n_out slots.
    The previously selected point anchors each triangle and the next bucket
    contributes its mean point (the final bucket uses the last sample).
    """
    n = xs.shape[0]
    k = bounds.shape[0] - 1
    out[0] = 0
    out[k + 1] = n - 1
    prev = 0
    for b in range(k):
        if b + 1 < k:
            nlo = bounds[b + 1]
            nhi = bounds[b + 2]
            sx = 0.0
            sy = 0.0
            for j in range(nlo, nhi):
                sx += xs[j]
                sy += ys[j]
            cx = sx / (nhi - nlo)
            cy = sy / (nhi - nlo)
        else:
            cx = xs[n - 1]
            cy = ys[n - 1]
        ax = xs[prev]
        ay = ys[prev]
        best = bounds[b]
        best_area = -1.0
        for j in range(bounds[b], bounds[b + 1]):
            # twice the triangle area; the factor 2 does not affect the argmax
            area = abs((ax - cx) * (ys[j] - ay) - (ax - xs[j]) * (cy - ay))
            if area > best_area:
                best_area = area
                best = j
        out[b + 1] = best
        prev = best


@njit(cache=True)
def _draw_polyline(us, vs, acc):
    """Accumulate a width-2 anti-aliased polyline onto ``acc`` (float64 HxW).

    Coverage falls linearly from 1 inside the stroke core (distance <= 0.5 of
    the centerline) to 0 at distance 1.5; each segment adds coverage * 255.
    Saturation to 255 happens in the caller and is order-independent because
    every contribution is non-negative.
    """
    h, w = acc.shape
    for s in range(us.shape[0] - 1):
        x0 = us[s]
        y0 = vs[s]
        x1 = us[s + 1]
        y1 = vs[s + 1]
        lox = max(int(np.floor(min(x0, x1) - 1.5)), 0)
        hix = min(int(np.ceil(max(x0, x1) + 1.5)), w - 1)
        loy = max(int(np.floor(min(y0, y1) - 1.5)), 0)
        hiy = min(int(np.ceil(max(y0, y1) + 1.5)), h - 1)
        dx = x1 - x0
        dy = y1 - y0
        seg2 = dx * dx + dy * dy
        for r in range(loy, hiy + 1):
            py = r + 0.5
            for c in range(lox, hix + 1):
                px = c + 0.5
                if seg2 > 0.0:
                    t = ((px - x0) * dx + (py - y0) * dy) / seg2
                    if t < 0.0:
                        t = 0.0
                    elif t > 1.0:
                        t = 1.0
                else:
                    t = 0.0
                qx = x0 + t * dx
                qy = y0 + t * dy
                d = np.sqrt((px - qx) ** 2 + (py - qy) ** 2)
                cov = 1.5 - d
                if cov > 0.0:
                    if cov > 1.0:
                        cov = 1.0
                    acc[r, c] += 255.0 * cov
