"""Occlusion-aware path splitting: cut a motion path where it enters and
leaves an occluder mask, tagging each piece front or back."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import PathSynthError
from ..grounding import Mask
from .bezier import BezierPath, subpath

COARSE_SAMPLES = 2048
REFINE_TOLERANCE = 1e-5


@dataclass(frozen=True)
class SplitPiece:
    path: BezierPath
    layer: str  # "front" | "back"
    t_range: tuple[float, float]


@dataclass(frozen=True)
class SplitPath:
    pieces: tuple[SplitPiece, ...]
    crossings: tuple[float, ...]

    def __post_init__(self):
        if not self.pieces:
            raise PathSynthError("split path needs at least one piece")
        prev_end = 0.0
        for piece in self.pieces:
            t0, t1 = piece.t_range
            if abs(t0 - prev_end) > 1e-6 or t1 <= t0:
                raise PathSynthError("piece ranges must partition [0, 1] in order")
            if piece.layer not in ("front", "back"):
                raise PathSynthError(f"bad layer {piece.layer!r}")
            prev_end = t1
        if abs(prev_end - 1.0) > 1e-6:
            raise PathSynthError("piece ranges must end at 1.0")


def _inside_tester(occluder: Mask):
    data = occluder.data
    h, w = data.shape

    def inside(point) -> bool:
        ix, iy = int(np.floor(point[0])), int(np.floor(point[1]))
        return 0 <= ix < w and 0 <= iy < h and bool(data[iy, ix])

    return inside


def split_path_by_mask(path: BezierPath, occluder: Mask) -> SplitPath:
    """Sample the path at COARSE_SAMPLES uniform parameters, refine each
    inside/outside transition by bisection to REFINE_TOLERANCE, split the
    path there and classify each piece by its midpoint sample."""
    if occluder.foreground_count() == 0:
        raise PathSynthError("occluder mask is empty")
    inside = _inside_tester(occluder)

    ts = np.linspace(0.0, 1.0, COARSE_SAMPLES)
    flags = np.fromiter((inside(path.point_at(t)) for t in ts), dtype=bool, count=len(ts))

    crossings = []
    for i in np.flatnonzero(flags[:-1] != flags[1:]):
        lo, hi = float(ts[i]), float(ts[i + 1])
        lo_flag = bool(flags[i])
        while hi - lo > REFINE_TOLERANCE:
            mid = 0.5 * (lo + hi)
            if inside(path.point_at(mid)) == lo_flag:
                lo = mid
            else:
                hi = mid
        crossings.append(0.5 * (lo + hi))

    bounds = [0.0] + crossings + [1.0]
    pieces = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        if b - a <= 1e-9:
            continue
        layer = "back" if inside(path.point_at(0.5 * (a + b))) else "front"
        pieces.append(SplitPiece(path=subpath(path, a, b), layer=layer, t_range=(a, b)))
    if not pieces:
        raise PathSynthError("path degenerated while splitting")
    # snap boundaries so the ranges partition [0, 1] exactly
    first = pieces[0]
    pieces[0] = SplitPiece(first.path, first.layer, (0.0, first.t_range[1]))
    last = pieces[-1]
    pieces[-1] = SplitPiece(last.path, last.layer, (last.t_range[0], 1.0))
    return SplitPath(pieces=tuple(pieces), crossings=tuple(crossings))
