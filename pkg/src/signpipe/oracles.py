"""Brute-force reference implementations for cross-checking.

These deliberately avoid line buffers, merge tables, and pipelining so
that agreement with the streaming implementations is meaningful
verification rather than shared code agreeing with itself.
"""

import numpy as np

from .ccl import ComponentFeatures
from .image import ImageGray


def naive_classify(centers, x):
    """Full-scan argmin of Manhattan distance; ties to the smallest index."""
    best, best_d = 0, None
    for j, u in enumerate(centers):
        d = sum(abs(a - b) for a, b in zip(x, u))
        if best_d is None or d < best_d:
            best, best_d = j, d
    return best


def flood_fill_label(seg: ImageGray, skip=frozenset()):
    """Stack-based 4-connected flood fill, scanning in raster order.

    Returns (ImageGray of component ids 1..N, list of ComponentFeatures),
    the same contract as the single-pass labeler.
    """
    h, w = seg.height, seg.width
    src = seg.data
    labels = np.zeros((h, w), dtype=np.int32)
    feats = []
    next_id = 1
    for sy in range(h):
        for sx in range(w):
            if labels[sy, sx] != 0 or src[sy, sx] in skip:
                continue
            c = int(src[sy, sx])
            acc = ComponentFeatures(c, 0, sx, sy, sx, sy, 0, 0)
            stack = [(sx, sy)]
            labels[sy, sx] = next_id
            while stack:
                x, y = stack.pop()
                acc.area += 1
                acc.min_x = min(acc.min_x, x)
                acc.min_y = min(acc.min_y, y)
                acc.max_x = max(acc.max_x, x)
                acc.max_y = max(acc.max_y, y)
                acc.sum_x += x
                acc.sum_y += y
                for nx, ny in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)):
                    if (0 <= nx < w and 0 <= ny < h and labels[ny, nx] == 0
                            and src[ny, nx] == c):
                        labels[ny, nx] = next_id
                        stack.append((nx, ny))
            feats.append(acc)
            next_id += 1
    return ImageGray(w, h, labels), feats


def dense_convolve3x3(plane, kernel, divisor):
    """Direct 9-tap convolution with replicated borders, half-up rounding.

    plane is a 2-D integer array; kernel is 9 row-major taps.
    """
    arr = np.asarray(plane, dtype=np.int64)
    h, w = arr.shape
    padded = np.pad(arr, 1, mode="edge")
    out = np.zeros((h, w), dtype=np.int64)
    for dy in range(3):
        for dx in range(3):
            out += kernel[dy * 3 + dx] * padded[dy:dy + h, dx:dx + w]
    return (out + divisor // 2) // divisor


def dense_median3x3(plane):
    """Gather each 3x3 neighborhood by random access and sort it."""
    arr = np.asarray(plane)
    h, w = arr.shape
    padded = np.pad(arr, 1, mode="edge")
    out = np.empty((h, w), dtype=arr.dtype)
    for y in range(h):
        for x in range(w):
            out[y, x] = np.sort(padded[y:y + 3, x:x + 3], axis=None)[4]
    return out
