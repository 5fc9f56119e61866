"""Single-pass multi-class connected-component labeling with features.

One raster scan assigns provisional component ids by looking at the left
and above neighbors (4-connectivity); a union-find merge table resolves
equivalences discovered when two arms of a component meet. Area, bounding
box, and centroid sums are accumulated during the same scan and merged on
union, so no per-pixel revisit is needed for features.
"""

from dataclasses import dataclass

import numpy as np

from .image import ImageGray


class MergeTable:
    """Union-find over provisional ids with path compression."""

    def __init__(self):
        self.parent = [0]  # id 0 is reserved for skipped pixels

    def make(self):
        pid = len(self.parent)
        self.parent.append(pid)
        return pid

    def find(self, pid):
        root = pid
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[pid] != root:
            parent[pid], pid = root, parent[pid]
        return root

    def union(self, a, b):
        """Merge two sets; the smaller root survives. Returns (kept, absorbed)."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra, ra
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra, rb


@dataclass
class ComponentFeatures:
    class_index: int
    area: int
    min_x: int
    min_y: int
    max_x: int
    max_y: int
    sum_x: int
    sum_y: int

    @property
    def width(self):
        return self.max_x - self.min_x + 1

    @property
    def height(self):
        return self.max_y - self.min_y + 1

    @property
    def bbox(self):
        return (self.min_x, self.min_y, self.max_x, self.max_y)

    @property
    def centroid(self):
        return (self.sum_x / self.area, self.sum_y / self.area)

    def merge(self, other):
        self.area += other.area
        self.min_x = min(self.min_x, other.min_x)
        self.min_y = min(self.min_y, other.min_y)
        self.max_x = max(self.max_x, other.max_x)
        self.max_y = max(self.max_y, other.max_y)
        self.sum_x += other.sum_x
        self.sum_y += other.sum_y


def label_components(seg: ImageGray, skip=frozenset()):
    """Label 4-connected same-class regions in one raster scan.

    Pixels whose class is in `skip` get the reserved id 0 and produce no
    features. Returns (ImageGray of component ids 1..N, list of
    ComponentFeatures in id order).
    """
    h, w = seg.height, seg.width
    src = seg.data
    prov = np.zeros((h, w), dtype=np.int32)
    table = MergeTable()
    feats = {}  # root id -> ComponentFeatures

    for y in range(h):
        row = src[y]
        prow = prov[y]
        above = src[y - 1] if y > 0 else None
        pabove = prov[y - 1] if y > 0 else None
        left_class = -1
        left_id = 0
        for x in range(w):
            c = row[x]
            if c in skip:
                left_class, left_id = c, 0
                continue
            pid = 0
            if left_id and left_class == c:
                pid = left_id
            if above is not None and above[x] == c:
                up = int(pabove[x])
                if pid == 0:
                    pid = up
                elif table.find(pid) != table.find(up):
                    kept, absorbed = table.union(pid, up)
                    feats[kept].merge(feats.pop(absorbed))
                    pid = kept
            if pid == 0:
                pid = table.make()
                feats[pid] = ComponentFeatures(int(c), 0, x, y, x, y, 0, 0)
            acc = feats[table.find(pid)]
            acc.area += 1
            acc.min_x = min(acc.min_x, x)
            acc.max_x = max(acc.max_x, x)
            acc.max_y = max(acc.max_y, y)  # min_y never decreases in a raster scan
            acc.sum_x += x
            acc.sum_y += y
            prow[x] = pid
            left_class, left_id = c, pid
    # dense final ids, ordered by first encounter (= ascending root id,
    # since union keeps the smaller root)
    roots = sorted(feats)
    final = {root: i + 1 for i, root in enumerate(roots)}
    remap = np.zeros(len(table.parent), dtype=np.int32)
    for pid in range(1, len(table.parent)):
        remap[pid] = final[table.find(pid)]
    labels = ImageGray(w, h, remap[prov])
    return labels, [feats[root] for root in roots]


def count_components(seg: ImageGray, skip=frozenset()):
    return len(label_components(seg, skip)[1])
