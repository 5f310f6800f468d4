"""Numpy implementations of the hot raster kernels.

These are the fallback used when the compiled extension is unavailable and
the reference the parity tests compare it against. All functions take and
return uint8 rasters shaped (h, w); foreground is any nonzero sample.
"""

from __future__ import annotations

import numpy as np
from scipy import ndimage

BACKEND = "numpy"


def _neighbour_views(padded):
    # Zhang-Suen neighbour order P2..P9: N, NE, E, SE, S, SW, W, NW
    return (
        padded[:-2, 1:-1],
        padded[:-2, 2:],
        padded[1:-1, 2:],
        padded[2:, 2:],
        padded[2:, 1:-1],
        padded[2:, :-2],
        padded[1:-1, :-2],
        padded[:-2, :-2],
    )


def thin(mask: np.ndarray) -> np.ndarray:
    """Zhang-Suen two-subiteration thinning, iterated to fixpoint."""
    fg = mask != 0
    if not fg.any():
        return np.zeros_like(mask, dtype=np.uint8)
    # Work on the foreground bounding box: thinning only ever deletes pixels.
    ys, xs = np.nonzero(fg)
    y0, y1 = ys.min(), ys.max() + 1
    x0, x1 = xs.min(), xs.max() + 1
    padded = np.zeros((y1 - y0 + 2, x1 - x0 + 2), dtype=bool)
    padded[1:-1, 1:-1] = fg[y0:y1, x0:x1]

    core = padded[1:-1, 1:-1]
    changed = True
    while changed:
        changed = False
        for step in (0, 1):
            nb = _neighbour_views(padded)
            count = np.zeros(core.shape, dtype=np.uint8)
            for v in nb:
                count += v
            # A(P1): number of 0->1 transitions around the cyclic sequence
            trans = np.zeros(core.shape, dtype=np.uint8)
            for a, b in zip(nb, nb[1:] + nb[:1]):
                trans += ~a & b
            p2, _, p4, _, p6, _, p8, _ = nb
            if step == 0:
                edge = ~(p2 & p4 & p6) & ~(p4 & p6 & p8)
            else:
                edge = ~(p2 & p4 & p8) & ~(p2 & p6 & p8)
            kill = core & (count >= 2) & (count <= 6) & (trans == 1) & edge
            if kill.any():
                core[kill] = False
                changed = True

    out = np.zeros(mask.shape, dtype=np.uint8)
    out[y0:y1, x0:x1] = core
    return out


class _RunUnion:
    """Union-find over row runs for connected-component labelling."""

    def __init__(self):
        self.parent = []

    def make(self):
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, i):
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _row_runs(row: np.ndarray):
    """Half-open [start, end) runs of True in a 1-D bool array."""
    d = np.diff(row.astype(np.int8))
    starts = np.flatnonzero(d == 1) + 1
    ends = np.flatnonzero(d == -1) + 1
    if row[0]:
        starts = np.concatenate(([0], starts))
    if row[-1]:
        ends = np.concatenate((ends, [row.size]))
    return starts, ends


def label_components(mask: np.ndarray, connectivity: int = 8):
    """Label connected foreground components.

    Returns (labels int32 (h, w) with 0 = background, count).
    """
    if connectivity not in (4, 8):
        raise ValueError("connectivity must be 4 or 8")
    fg = mask != 0
    h, w = fg.shape
    slack = 0 if connectivity == 4 else 1
    uf = _RunUnion()
    run_ids = []  # per row: (starts, ends, ids)
    prev = None
    for y in range(h):
        if not fg[y].any():
            run_ids.append(None)
            prev = None
            continue
        starts, ends = _row_runs(fg[y])
        ids = [uf.make() for _ in starts]
        if prev is not None:
            ps, pe, pid = prev
            i = j = 0
            while i < len(starts) and j < len(ps):
                # runs touch when intervals overlap (with +-1 slack for 8-conn)
                if starts[i] < pe[j] + slack and ps[j] < ends[i] + slack:
                    uf.union(ids[i], pid[j])
                if ends[i] < pe[j]:
                    i += 1
                else:
                    j += 1
        prev = (starts, ends, ids)
        run_ids.append((starts, ends, ids))

    labels = np.zeros((h, w), dtype=np.int32)
    root_label = {}
    for y in range(h):
        rr = run_ids[y]
        if rr is None:
            continue
        starts, ends, ids = rr
        for s, e, rid in zip(starts, ends, ids):
            root = uf.find(rid)
            lab = root_label.setdefault(root, len(root_label) + 1)
            labels[y, s:e] = lab
    return labels, len(root_label)


def flood_fill_rgba(rgba: np.ndarray, seed_x: int, seed_y: int, tol: int) -> np.ndarray:
    """4-connected region around the seed whose per-channel distance from the
    seed pixel's colour stays <= tol. Returns a uint8 mask (255 = inside)."""
    seed_colour = rgba[seed_y, seed_x].astype(np.int16)
    diff = np.abs(rgba.astype(np.int16) - seed_colour)
    eligible = (diff <= tol).all(axis=2)
    labels, _ = label_components(eligible.astype(np.uint8), connectivity=4)
    region = labels == labels[seed_y, seed_x]
    return (region * np.uint8(255)).astype(np.uint8)


def distance_transform(mask: np.ndarray) -> np.ndarray:
    """Exact Euclidean distance from each foreground pixel to the nearest
    background pixel (0 on background)."""
    return ndimage.distance_transform_edt(mask != 0).astype(np.float64)
