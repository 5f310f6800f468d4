"""Polyline type and Taubin lambda/mu smoothing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import PathSynthError


@dataclass(frozen=True)
class Polyline:
    points: np.ndarray  # (n, 2) float64
    closed: bool = False

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise PathSynthError(f"polyline needs (n>=2, 2) points, got {pts.shape}")
        gaps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        if self.closed:
            gaps = np.append(gaps, np.linalg.norm(pts[0] - pts[-1]))
        if (gaps <= 1e-9).any():
            raise PathSynthError("polyline has coincident consecutive points")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.shape[0]

    def length(self) -> float:
        gaps = np.linalg.norm(np.diff(self.points, axis=0), axis=1)
        total = float(gaps.sum())
        if self.closed:
            total += float(np.linalg.norm(self.points[0] - self.points[-1]))
        return total


def _relax(pts: np.ndarray, factor: float, closed: bool) -> np.ndarray:
    """One p_i <- p_i + factor * (midpoint(neighbours) - p_i) pass."""
    if factor == 0.0:
        return pts
    if closed:
        prev_pts = np.roll(pts, 1, axis=0)
        next_pts = np.roll(pts, -1, axis=0)
        return pts + factor * (0.5 * (prev_pts + next_pts) - pts)
    out = pts.copy()
    out[1:-1] = pts[1:-1] + factor * (0.5 * (pts[:-2] + pts[2:]) - pts[1:-1])
    return out


def smooth_polyline(p: Polyline, lam: float, mu: float, iterations: int) -> Polyline:
    """Taubin smoothing: a shrink step (lam) then an inflate step (mu) per
    iteration; mu = 0 degenerates to plain Laplacian smoothing. Open
    polylines keep their endpoints pinned."""
    if not (0.0 < lam < 1.0):
        raise PathSynthError(f"lambda must be in (0, 1), got {lam}")
    if not (-1.0 < mu <= 0.0):
        raise PathSynthError(f"mu must be in (-1, 0], got {mu}")
    if iterations < 0:
        raise PathSynthError("iterations must be >= 0")
    pts = p.points.copy()
    for _ in range(iterations):
        pts = _relax(pts, lam, p.closed)
        pts = _relax(pts, mu, p.closed)
    return Polyline(points=pts, closed=p.closed)
