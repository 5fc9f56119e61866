"""Mean-shift clustering over chroma samples to train class centers.

Flat-kernel mode seeking: every seed iterates to the mean of the samples
within the bandwidth radius until the shift is below tolerance, then
nearby convergence points collapse into modes. Features are normalized to
[0, 1] before the bandwidth applies, so the bandwidth is dimensionless.
The algorithm is deterministic for a fixed sample order and seed stride.
"""

import json
import warnings
from dataclasses import dataclass

import numpy as np


@dataclass
class MeanShiftConfig:
    bandwidth: float = 0.4
    tolerance: float = 1e-4
    max_iterations: int = 500
    merge_radius: float = None  # defaults to bandwidth / 2
    seed_stride: int = 4

    def __post_init__(self):
        if self.merge_radius is None:
            self.merge_radius = self.bandwidth / 2
        if self.bandwidth <= 0 or self.tolerance <= 0 or self.merge_radius <= 0:
            raise ValueError("bandwidth, tolerance, and merge_radius must be > 0")
        if self.seed_stride < 1:
            raise ValueError("seed_stride must be >= 1")


@dataclass
class ClusterResult:
    modes: list      # [(cb, cr)] in 0..255 integer space
    support: list    # converged-seed count per mode

    def __post_init__(self):
        if len(self.modes) != len(self.support):
            raise ValueError("modes and support lengths differ")


def mean_shift(samples, config: MeanShiftConfig = None) -> ClusterResult:
    """Cluster (Cb, Cr) samples; returns modes sorted by descending support."""
    if config is None:
        config = MeanShiftConfig()
    pts = np.asarray(samples, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] != 2:
        raise ValueError("samples must be a non-empty list of (Cb, Cr) pairs")
    pts = pts / 255.0
    seeds = pts[::config.seed_stride]

    converged = np.empty_like(seeds)
    for i, seed in enumerate(seeds):
        y = seed
        for _ in range(config.max_iterations):
            d2 = ((pts - y) ** 2).sum(axis=1)
            inside = pts[d2 <= config.bandwidth ** 2]
            new = inside.mean(axis=0) if len(inside) else y
            shift = np.hypot(*(new - y))
            y = new
            if shift < config.tolerance:
                break
        converged[i] = y

    # greedy merge of convergence points within the merge radius,
    # support-weighted so dense basins dominate the mode position
    modes = []    # normalized running means
    support = []
    for y in converged:
        for k, m in enumerate(modes):
            if np.hypot(*(y - m)) <= config.merge_radius:
                modes[k] = (m * support[k] + y) / (support[k] + 1)
                support[k] += 1
                break
        else:
            modes.append(y.copy())
            support.append(1)

    order = sorted(range(len(modes)),
                   key=lambda k: (-support[k], modes[k][0], modes[k][1]))
    out_modes = [tuple(int(np.floor(v * 255.0 + 0.5)) for v in modes[k])
                 for k in order]
    return ClusterResult(out_modes, [support[k] for k in order])


def centers_to_file(result: ClusterResult, names, resolution_bits=8) -> str:
    """Serialize trained modes as classifier center-file JSON.

    Class order follows the result's descending-support order (ties break
    by ascending Cb, then Cr).
    """
    if len(names) != len(result.modes):
        raise ValueError(f"{len(names)} names for {len(result.modes)} modes")
    if len(result.modes) < 2:
        warnings.warn("fewer than 2 modes: the classifier will be degenerate")
    doc = {
        "resolution_bits": resolution_bits,
        "classes": [{"name": name, "center": list(mode)}
                    for name, mode in zip(names, result.modes)],
    }
    return json.dumps(doc, indent=2) + "\n"
