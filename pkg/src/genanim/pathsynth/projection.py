"""Project a 2D motion path into an object's transformed plane.

Control-point offsets from the pivot are read as coordinates in the
object's local basis, lifted to z = plane_depth, pushed through the full
4x4 transform and perspective-divided back to canvas coordinates. An
identity transform returns the input bit-exactly; a pure Z-rotation
rotates the path about the pivot.
"""

from __future__ import annotations

import numpy as np

from ..errors import PathSynthError
from ..scene import TransformMatrix
from .bezier import BezierPath

_MIN_W = 1e-12


def project_motion(
    path: BezierPath,
    transform: TransformMatrix,
    plane_depth: float = 0.0,
    canvas: tuple[int, int] | None = None,
    pivot: tuple[float, float] = (0.0, 0.0),
) -> BezierPath:
    if transform.is_identity:
        return path
    m = transform.m
    px, py = float(pivot[0]), float(pivot[1])
    seg = path.segments
    flat = seg.reshape(-1, 2)
    hom = np.empty((flat.shape[0], 4))
    hom[:, 0] = flat[:, 0] - px
    hom[:, 1] = flat[:, 1] - py
    hom[:, 2] = plane_depth
    hom[:, 3] = 1.0
    out = hom @ m.T
    w = out[:, 3]
    bad = np.flatnonzero(w <= _MIN_W)
    if bad.size:
        i = int(bad[0])
        raise PathSynthError(
            f"control point {i % 4} of segment {i // 4} at "
            f"({flat[i, 0]:.3f}, {flat[i, 1]:.3f}) maps behind the eye (w={w[i]:.3g})"
        )
    projected = np.empty_like(flat)
    projected[:, 0] = out[:, 0] / w + px
    projected[:, 1] = out[:, 1] / w + py
    new_seg = projected.reshape(seg.shape).copy()
    # identical input points project identically, but re-tie shared
    # endpoints bitwise so the C0 invariant is immune to reassociation
    for i in range(new_seg.shape[0] - 1):
        new_seg[i + 1, 0] = new_seg[i, 3]
    if path.closed:
        new_seg[-1, 3] = new_seg[0, 0]
    return BezierPath(segments=new_seg, closed=path.closed)
