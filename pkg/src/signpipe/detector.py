"""Rule-based sign detection over labeled components, plus annotation.

A component is a sign candidate when it has the target (yellow) class, a
bounding-box width/height ratio strictly inside (ratio_min, ratio_max),
and an area strictly above area_min. The ratio bounds exclude the inner
hole of digits like zero. Ratio comparisons are exact rationals so
components near the bounds never flip due to float rounding.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .image import ImageRGB

ANNOTATION_COLOR = (0, 255, 0)


def _as_fraction(v):
    # via str() so a literal like 0.7 means exactly 7/10
    return v if isinstance(v, Fraction) else Fraction(str(v))


@dataclass
class DetectionRule:
    target_class: int = 1
    ratio_min: Fraction = Fraction(7, 10)
    ratio_max: Fraction = Fraction(3)
    area_min: int = 200

    def __post_init__(self):
        self.ratio_min = _as_fraction(self.ratio_min)
        self.ratio_max = _as_fraction(self.ratio_max)
        if not 0 < self.ratio_min < self.ratio_max:
            raise ValueError("need 0 < ratio_min < ratio_max")
        if self.area_min < 1:
            raise ValueError("area_min must be >= 1")


@dataclass(frozen=True)
class Detection:
    component_id: int
    bbox: tuple  # (min_x, min_y, max_x, max_y)
    area: int
    centroid: tuple

    @property
    def width(self):
        return self.bbox[2] - self.bbox[0] + 1

    @property
    def height(self):
        return self.bbox[3] - self.bbox[1] + 1


def detect(components, rule: DetectionRule):
    """Filter components against the rule; ids are 1-based list positions."""
    out = []
    for i, comp in enumerate(components):
        if comp.class_index != rule.target_class:
            continue
        ratio = Fraction(comp.width, comp.height)
        if not rule.ratio_min < ratio < rule.ratio_max:
            continue
        if comp.area <= rule.area_min:
            continue
        out.append(Detection(i + 1, comp.bbox, comp.area, comp.centroid))
    return out


def annotate(img: ImageRGB, detections):
    """Draw a 1-pixel green rectangle on each detection's bounding box."""
    out = img.data.copy()
    color = np.array(ANNOTATION_COLOR, dtype=np.uint8)
    for det in detections:
        x0, y0, x1, y1 = det.bbox
        if not (0 <= x0 <= x1 < img.width and 0 <= y0 <= y1 < img.height):
            raise ValueError(f"bbox {det.bbox} out of bounds for "
                             f"{img.width}x{img.height} image")
        out[y0, x0:x1 + 1] = color
        out[y1, x0:x1 + 1] = color
        out[y0:y1 + 1, x0] = color
        out[y0:y1 + 1, x1] = color
    return ImageRGB(img.width, img.height, out)
