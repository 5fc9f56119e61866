"""Full-frame orchestration: segment, label, detect, report.

Mirrors the hardware chain: chroma conversion, optional Gaussian
pre-filter, per-pixel classification, optional median post-filter,
multi-class component labeling, and rule-based detection. The report
carries the latency and frame-rate figures of the cycle model so a
software run documents what the streaming design would deliver.
"""

from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import oracles
from .ccl import count_components, label_components
from .detector import DetectionRule, annotate, detect
from .filters import GAUSSIAN_DIVISOR, GAUSSIAN_KERNEL, gaussian3x3, median3x3
from .image import ImageCbCr, ImageGray, ImageRGB, rgb_to_cbcr
from .mdc import (ClassCenterFile, PipelineModel, centers_from_json,
                  classify_image, estimate_frame_rate)

DEFAULT_CLOCK_MHZ = 170.0


def default_centers() -> ClassCenterFile:
    """The shipped background/yellow/red center file."""
    text = (resources.files("signpipe") / "data" / "default_centers.json").read_text()
    return centers_from_json(text)


@dataclass
class PipelineConfig:
    centers: ClassCenterFile = field(default_factory=default_centers)
    gaussian: bool = True
    median: bool = True
    skip_classes: frozenset = frozenset({0})
    rule: DetectionRule = field(default_factory=DetectionRule)
    clock_mhz: float = DEFAULT_CLOCK_MHZ

    def __post_init__(self):
        if self.centers.dims != 2:
            raise ValueError("pipeline needs 2-dimensional (Cb, Cr) centers")
        self.skip_classes = frozenset(self.skip_classes)


@dataclass
class FrameReport:
    image: str
    width: int
    height: int
    class_pixels: list   # pixel count per class index, post-filter
    components: list     # ComponentFeatures
    detections: list
    latency_cycles: int
    est_fps: float

    def to_dict(self):
        return {
            "image": self.image,
            "width": self.width,
            "height": self.height,
            "classes": [{"index": i, "pixels": int(n)}
                        for i, n in enumerate(self.class_pixels)],
            "components": [
                {"id": i + 1, "class": c.class_index, "area": c.area,
                 "bbox": list(c.bbox),
                 "centroid": [c.centroid[0], c.centroid[1]]}
                for i, c in enumerate(self.components)],
            "detections": [
                {"component_id": d.component_id, "bbox": list(d.bbox),
                 "area": d.area, "centroid": [d.centroid[0], d.centroid[1]]}
                for d in self.detections],
            "latency_cycles": self.latency_cycles,
            "est_fps": self.est_fps,
        }


@dataclass
class FrameArtifacts:
    chroma: ImageCbCr
    seg: ImageGray          # class indices after the optional median filter
    components_img: ImageGray
    annotated: ImageRGB


def segment_frame(config: PipelineConfig, rgb: ImageRGB) -> tuple:
    """Run the front half of the chain; returns (chroma, class image)."""
    chroma = rgb_to_cbcr(rgb)
    if config.gaussian:
        chroma = gaussian3x3(chroma)
    seg = classify_image(config.centers, chroma)
    if config.median:
        seg = median3x3(seg)
    return chroma, seg


def run_pipeline(config: PipelineConfig, rgb: ImageRGB, image_name=""):
    """Full chain on one frame; returns (FrameReport, FrameArtifacts)."""
    chroma, seg = segment_frame(config, rgb)
    components_img, components = label_components(seg, config.skip_classes)
    detections = detect(components, config.rule)
    annotated = annotate(rgb, detections)

    counts = np.bincount(seg.data.reshape(-1),
                         minlength=config.centers.num_classes)
    model = PipelineModel(config.centers.dims, config.centers.num_classes,
                          config.centers.resolution_bits)
    fps = estimate_frame_rate(config.clock_mhz * 1e6, rgb.width, rgb.height)
    report = FrameReport(image_name, rgb.width, rgb.height,
                         [int(n) for n in counts], components, detections,
                         model.latency, fps)
    return report, FrameArtifacts(chroma, seg, components_img, annotated)


def ablation_stats(config: PipelineConfig, rgb: ImageRGB):
    """Component counts with both filters off versus both on.

    Returns (count_without, count_with, reduction_percent).
    """
    base = PipelineConfig(config.centers, False, False, config.skip_classes,
                          config.rule, config.clock_mhz)
    filt = PipelineConfig(config.centers, True, True, config.skip_classes,
                          config.rule, config.clock_mhz)
    without = count_components(segment_frame(base, rgb)[1], config.skip_classes)
    with_ = count_components(segment_frame(filt, rgb)[1], config.skip_classes)
    reduction = 100.0 * (without - with_) / without if without else 0.0
    return without, with_, reduction


# fixed palette for --color-labels rendering; cycles past 8 entries
_PALETTE = np.array([
    (0, 0, 0), (255, 214, 0), (220, 40, 40), (160, 40, 200),
    (40, 120, 220), (40, 200, 120), (240, 140, 40), (200, 200, 200),
], dtype=np.uint8)


def render_labels(labels: ImageGray, num_levels=None, color=False) -> ImageRGB:
    """Map label values to evenly spaced gray levels or a fixed palette."""
    if num_levels is None:
        num_levels = int(labels.data.max()) + 1
    num_levels = max(num_levels, 2)
    if color:
        rgb = _PALETTE[labels.data % len(_PALETTE)]
    else:
        gray = (labels.data * 255) // (num_levels - 1)
        gray = np.clip(gray, 0, 255).astype(np.uint8)
        rgb = np.repeat(gray[:, :, None], 3, axis=2)
    return ImageRGB(labels.width, labels.height, rgb)


def verify_frame(config: PipelineConfig, rgb: ImageRGB):
    """Cross-check one frame's streaming stages against the brute-force
    oracles. Returns a dict of stage name -> bool (True = match)."""
    chroma = rgb_to_cbcr(rgb)
    results = {}

    smoothed = gaussian3x3(chroma)
    ok = all(np.array_equal(
        smoothed.data[:, :, ch],
        oracles.dense_convolve3x3(chroma.data[:, :, ch].astype(np.int64),
                                  GAUSSIAN_KERNEL, GAUSSIAN_DIVISOR))
        for ch in range(2))
    results["gaussian"] = ok
    if config.gaussian:
        chroma = smoothed

    seg = classify_image(config.centers, chroma)
    centers = config.centers.centers()
    flat = chroma.data.reshape(-1, 2)
    expected = np.fromiter(
        (oracles.naive_classify(centers, tuple(int(v) for v in p)) for p in flat),
        dtype=np.int32, count=len(flat)).reshape(seg.data.shape)
    results["classify"] = bool(np.array_equal(seg.data, expected))

    filtered = median3x3(seg)
    results["median"] = bool(np.array_equal(
        filtered.data, oracles.dense_median3x3(seg.data)))
    if config.median:
        seg = filtered

    got_img, got_feats = label_components(seg, config.skip_classes)
    exp_img, exp_feats = oracles.flood_fill_label(seg, config.skip_classes)
    results["labeling"] = bool(
        np.array_equal(got_img.data, exp_img.data) and got_feats == exp_feats)
    return results
