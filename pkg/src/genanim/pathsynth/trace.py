"""Raster-to-geometry extraction: contour tracing, skeletonization,
centerline ordering and width measurement.

All emitted coordinates are pixel centers: raster pixel (x, y) becomes the
document point (x + 0.5, y + 0.5).
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .. import kernels
from ..errors import PathSynthError
from ..grounding import Mask
from .polyline import Polyline

MIN_COMPONENT_PX = 4  # smaller blobs are tracing noise
SPUR_PRUNE_PX = 5  # skeleton side-branches shorter than this are removed

# clockwise on screen (y down), starting east
_MOORE_DIRS = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1))
_DIR_INDEX = {d: i for i, d in enumerate(_MOORE_DIRS)}


def _require_foreground(mask: Mask):
    if mask.foreground_count() == 0:
        raise PathSynthError("mask has no foreground pixels")


def _trace_boundary(fg: np.ndarray, start_yx: tuple[int, int]) -> list[tuple[int, int]]:
    """Moore-neighbour walk around a component's outer boundary.

    `start_yx` must be the component's topmost-then-leftmost pixel (its west
    neighbour is then guaranteed background). The walk keeps an explicit
    backtrack position and stops when the initial (pixel, successor) pair
    repeats. Returns (x, y) pixels, first one not repeated at the end.
    """
    h, w = fg.shape
    sy, sx = start_yx

    def is_fg(x, y):
        return 0 <= y < h and 0 <= x < w and fg[y, x]

    cur = (sx, sy)
    back = (sx - 1, sy)
    contour = [cur]
    first_pair = None
    for _ in range(8 * int(fg.sum()) + 16):
        idx = _DIR_INDEX[(back[0] - cur[0], back[1] - cur[1])]
        found = None
        for k in range(1, 9):
            dx, dy = _MOORE_DIRS[(idx + k) % 8]
            if is_fg(cur[0] + dx, cur[1] + dy):
                found = k
                break
        if found is None:
            return contour  # isolated pixel; callers filter by size
        dx, dy = _MOORE_DIRS[(idx + found) % 8]
        nxt = (cur[0] + dx, cur[1] + dy)
        pair = (cur, nxt)
        if first_pair is None:
            first_pair = pair
        elif pair == first_pair:
            return contour[:-1]  # walk closed: drop the duplicated start
        bx, by = _MOORE_DIRS[(idx + found - 1) % 8]
        back = (cur[0] + bx, cur[1] + by)  # last background examined
        cur = nxt
        contour.append(cur)
    raise PathSynthError("boundary trace did not terminate")


def extract_contours(mask: Mask) -> list[Polyline]:
    """One closed polyline per outer boundary of each 8-connected foreground
    component (components under MIN_COMPONENT_PX pixels skipped), traced so
    the raw-coordinate signed area is positive."""
    _require_foreground(mask)
    labels, count = kernels.label_components(mask.data, connectivity=8)
    out = []
    for lab in range(1, count + 1):
        comp = labels == lab
        if int(comp.sum()) < MIN_COMPONENT_PX:
            continue
        ys, xs = np.nonzero(comp)
        first = np.lexsort((xs, ys))[0]  # topmost, then leftmost
        pixels = _trace_boundary(comp, (int(ys[first]), int(xs[first])))
        if len(pixels) < 2:
            continue
        pts = np.array(pixels, dtype=np.float64) + 0.5
        x, y = pts[:, 0], pts[:, 1]
        area = 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
        if area < 0:
            pts = pts[::-1].copy()
        out.append(Polyline(points=pts, closed=True))
    if not out:
        raise PathSynthError("no component reaches the minimum traceable size")
    return out


def thin_mask(mask: Mask) -> Mask:
    """Zhang-Suen skeleton of the mask (kernel-backed)."""
    _require_foreground(mask)
    return Mask((kernels.thin(mask.data) != 0).astype(np.uint8) * 255)


_CARDINALS = ((1, 0), (0, 1), (-1, 0), (0, -1))
_DIAGONALS = ((1, 1), (-1, 1), (-1, -1), (1, -1))


def _neighbours(pixels: set, p) -> list:
    """Reduced skeleton adjacency: diagonal links that are redundant with a
    cardinal two-step are dropped, so staircase runs read as degree-2 chains
    instead of fake junctions."""
    x, y = p
    out = [(x + dx, y + dy) for dx, dy in _CARDINALS if (x + dx, y + dy) in pixels]
    for dx, dy in _DIAGONALS:
        q = (x + dx, y + dy)
        if q in pixels and (x + dx, y) not in pixels and (x, y + dy) not in pixels:
            out.append(q)
    return out


def _prune_spurs(pixels: set) -> set:
    """Iteratively remove endpoint branches shorter than SPUR_PRUNE_PX that
    terminate at a junction."""
    pixels = set(pixels)
    while True:
        doomed = set()
        endpoints = [p for p in pixels if len(_neighbours(pixels, p)) == 1]
        for ep in endpoints:
            chain = [ep]
            prev, cur = None, ep
            while len(chain) <= SPUR_PRUNE_PX + 1:
                if len(_neighbours(pixels, cur)) >= 3:
                    chain.pop()  # junction itself stays
                    if len(chain) < SPUR_PRUNE_PX:
                        doomed.update(chain)
                    break
                nxt = [n for n in _neighbours(pixels, cur) if n != prev]
                if not nxt:
                    break  # reached the opposite endpoint: not a spur
                prev, cur = cur, nxt[0]
                chain.append(cur)
        if not doomed:
            return pixels
        pixels -= doomed


def _bfs(pixels: set, source):
    dist = {source: 0}
    parent = {source: None}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        for nb in sorted(_neighbours(pixels, cur)):
            if nb not in dist:
                dist[nb] = dist[cur] + 1
                parent[nb] = cur
                queue.append(nb)
    return dist, parent


def _walk_cycle(pixels: set) -> list:
    start = min(pixels, key=lambda p: (p[1], p[0]))
    order = [start]
    prev, cur = None, start
    for _ in range(len(pixels) + 1):
        nxt = [n for n in sorted(_neighbours(pixels, cur)) if n != prev]
        if not nxt:
            return order
        prev, cur = cur, nxt[0]
        if cur == start:
            return order
        order.append(cur)
    raise PathSynthError("cycle walk did not close")


def skeleton_to_polyline(skeleton: Mask) -> Polyline:
    """Order a skeleton raster into a traversal polyline.

    Endpoints are pixels with one 8-neighbour; junction spurs shorter than
    SPUR_PRUNE_PX are removed first, then the longest BFS path between any
    endpoint pair wins. A skeleton with no endpoint is treated as a cycle
    and returned closed.
    """
    _require_foreground(skeleton)
    pixels = {(int(x), int(y)) for y, x in zip(*np.nonzero(skeleton.data))}
    pixels = _prune_spurs(pixels)
    if len(pixels) < 2:
        raise PathSynthError("skeleton too small to form a polyline")

    degrees = {p: len(_neighbours(pixels, p)) for p in pixels}
    endpoints = sorted(p for p in pixels if degrees[p] == 1)
    if not endpoints:
        if all(d == 2 for d in degrees.values()):
            order = _walk_cycle(pixels)
            if len(order) < 3:
                raise PathSynthError("degenerate skeleton cycle")
            return Polyline(points=np.array(order, dtype=np.float64) + 0.5, closed=True)
        # no endpoints but junctions exist: open the graph at its diameter
        seed = min(pixels, key=lambda p: (p[1], p[0]))
        dist, _ = _bfs(pixels, seed)
        far = max(dist, key=lambda p: (dist[p], p[1], p[0]))
        endpoints = [far]

    best = None  # (-dist, src, dst) so min() favours the longest path
    parents = {}
    for src in endpoints:
        dist, parent = _bfs(pixels, src)
        parents[src] = parent
        # a lone endpoint (endpoint + cycle) falls back to the farthest pixel
        targets = endpoints if len(endpoints) > 1 else list(dist)
        for dst in targets:
            if dst == src or dst not in dist:
                continue
            key = (-dist[dst], src, dst)
            if best is None or key < best:
                best = key
    if best is None:
        raise PathSynthError("skeleton has no traversable path")
    _, src, dst = best
    path = [dst]
    while path[-1] != src:
        path.append(parents[src][path[-1]])
    path.reverse()
    return Polyline(points=np.array(path, dtype=np.float64) + 0.5, closed=False)


class WidthProfile:
    """Per-vertex half-widths (pixels), aligned with a polyline's points."""

    def __init__(self, half_widths):
        arr = np.asarray(half_widths, dtype=np.float64)
        if (arr < 0.5).any():
            raise PathSynthError("half-widths must be >= 0.5")
        arr.setflags(write=False)
        self.half_widths = arr

    def __len__(self):
        return self.half_widths.shape[0]


def measure_width(mask: Mask, centerline: Polyline) -> WidthProfile:
    """Half-width at each centerline vertex: the exact Euclidean distance
    transform of the mask sampled at the vertex, less the half-pixel from
    measuring between pixel centers, clamped to 0.5."""
    _require_foreground(mask)
    dt = kernels.distance_transform(mask.data)
    hw = np.empty(len(centerline), dtype=np.float64)
    for i, (x, y) in enumerate(centerline.points):
        ix, iy = int(np.floor(x)), int(np.floor(y))
        if not (0 <= ix < mask.width and 0 <= iy < mask.height) or mask.data[iy, ix] == 0:
            raise PathSynthError(
                f"centerline vertex {i} at ({x:.2f}, {y:.2f}) is outside the mask"
            )
        hw[i] = max(0.5, dt[iy, ix] - 0.5)
    return WidthProfile(hw)
