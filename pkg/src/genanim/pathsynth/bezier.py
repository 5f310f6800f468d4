"""Piecewise cubic Bezier paths: least-squares fitting of polylines,
arc-length-uniform sampling, elliptical path construction and de Casteljau
subdivision."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import PathSynthError
from .polyline import Polyline

DEFAULT_FIT_ERROR = 2.0  # pixels
_NEWTON_ROUNDS = 4
_ARC_TABLE_SIZE = 256
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)

# handle length for a quarter-circle cubic approximation
ELLIPSE_KAPPA = 4.0 * (np.sqrt(2.0) - 1.0) / 3.0


@dataclass(frozen=True)
class BezierPath:
    segments: np.ndarray  # (m, 4, 2) float64 control points
    closed: bool = False

    def __post_init__(self):
        seg = np.ascontiguousarray(self.segments, dtype=np.float64)
        if seg.ndim != 3 or seg.shape[1:] != (4, 2) or seg.shape[0] < 1:
            raise PathSynthError(f"path needs (m>=1, 4, 2) control points, got {seg.shape}")
        for i in range(seg.shape[0] - 1):
            if not (seg[i, 3] == seg[i + 1, 0]).all():
                raise PathSynthError(f"C0 break between segments {i} and {i + 1}")
        if self.closed and not (seg[-1, 3] == seg[0, 0]).all():
            raise PathSynthError("closed path must end where it starts")
        seg.setflags(write=False)
        object.__setattr__(self, "segments", seg)

    @property
    def start(self) -> np.ndarray:
        return self.segments[0, 0]

    @property
    def end(self) -> np.ndarray:
        return self.segments[-1, 3]

    def point_at(self, t: float) -> np.ndarray:
        """Point at global parameter t in [0, 1] (uniform across segments)."""
        seg, u = self._locate(t)
        return _bezier_point(self.segments[seg], u)

    def _locate(self, t: float) -> tuple[int, float]:
        if not (0.0 <= t <= 1.0):
            raise PathSynthError(f"parameter {t} outside [0, 1]")
        m = self.segments.shape[0]
        scaled = t * m
        seg = min(int(scaled), m - 1)
        return seg, scaled - seg


def _bezier_point(cp: np.ndarray, u: float) -> np.ndarray:
    v = 1.0 - u
    return (
        v * v * v * cp[0]
        + 3.0 * v * v * u * cp[1]
        + 3.0 * v * u * u * cp[2]
        + u * u * u * cp[3]
    )


def _bezier_points(cp: np.ndarray, u: np.ndarray) -> np.ndarray:
    u = u[:, None]
    v = 1.0 - u
    return v**3 * cp[0] + 3.0 * v**2 * u * cp[1] + 3.0 * v * u**2 * cp[2] + u**3 * cp[3]


def _bezier_deriv(cp: np.ndarray, u) -> np.ndarray:
    u = np.asarray(u, dtype=np.float64)[..., None]
    v = 1.0 - u
    return 3.0 * (
        v**2 * (cp[1] - cp[0]) + 2.0 * v * u * (cp[2] - cp[1]) + u**2 * (cp[3] - cp[2])
    )


def _bezier_second_deriv(cp: np.ndarray, u) -> np.ndarray:
    u = np.asarray(u, dtype=np.float64)[..., None]
    v = 1.0 - u
    return 6.0 * (v * (cp[2] - 2.0 * cp[1] + cp[0]) + u * (cp[3] - 2.0 * cp[2] + cp[1]))


def split_segment(cp: np.ndarray, u: float) -> tuple[np.ndarray, np.ndarray]:
    """de Casteljau subdivision at local parameter u; the split point is the
    exact same array in both halves (keeps C0 bitwise)."""
    p01 = (1 - u) * cp[0] + u * cp[1]
    p12 = (1 - u) * cp[1] + u * cp[2]
    p23 = (1 - u) * cp[2] + u * cp[3]
    p012 = (1 - u) * p01 + u * p12
    p123 = (1 - u) * p12 + u * p23
    mid = (1 - u) * p012 + u * p123
    left = np.stack([cp[0], p01, p012, mid])
    right = np.stack([mid, p123, p23, cp[3]])
    return left, right


def subpath(path: BezierPath, t0: float, t1: float) -> BezierPath:
    """Sub-path over global parameters [t0, t1] (open)."""
    if not (0.0 <= t0 < t1 <= 1.0):
        raise PathSynthError(f"bad subpath range [{t0}, {t1}]")
    s0, u0 = path._locate(t0)
    s1, u1 = path._locate(t1)
    segs = []
    if s0 == s1:
        cp = path.segments[s0]
        if u0 > 0.0:
            _, cp = split_segment(cp, u0)
            u1 = (u1 - u0) / (1.0 - u0)
        if u1 < 1.0:
            cp, _ = split_segment(cp, u1)
        segs.append(cp)
    else:
        cp = path.segments[s0]
        if u0 > 0.0:
            _, cp = split_segment(cp, u0)
        segs.append(cp)
        for s in range(s0 + 1, s1):
            segs.append(path.segments[s])
        if u1 > 0.0:
            cp = path.segments[s1]
            if u1 < 1.0:
                cp, _ = split_segment(cp, u1)
            segs.append(cp)
    # re-assert shared endpoints bitwise (split points already are)
    arr = np.stack(segs)
    for i in range(arr.shape[0] - 1):
        arr[i + 1, 0] = arr[i, 3]
    return BezierPath(segments=arr, closed=False)


# ---------------------------------------------------------------------------
# least-squares fitting (chord-length parameterization, fixed end tangents,
# Newton-Raphson reparameterization, recursive split at the worst point)

def _normalize(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n <= 1e-12:
        raise PathSynthError("degenerate tangent")
    return v / n


def _end_tangent(points: np.ndarray) -> np.ndarray:
    # one-sided 3-point difference where possible
    if points.shape[0] >= 3:
        d = -3.0 * points[0] + 4.0 * points[1] - points[2]
        if np.linalg.norm(d) > 1e-12:
            return _normalize(d)
    return _normalize(points[1] - points[0])


def _chord_parameterize(points: np.ndarray) -> np.ndarray:
    u = np.zeros(points.shape[0])
    u[1:] = np.cumsum(np.linalg.norm(np.diff(points, axis=0), axis=1))
    return u / u[-1]


def _generate_bezier(points, u, t_left, t_right):
    first, last = points[0], points[-1]
    v = 1.0 - u
    b0 = v**3
    b1 = 3.0 * v**2 * u
    b2 = 3.0 * v * u**2
    b3 = u**3
    a1 = t_left[None, :] * b1[:, None]
    a2 = t_right[None, :] * b2[:, None]
    c00 = np.sum(a1 * a1)
    c01 = np.sum(a1 * a2)
    c11 = np.sum(a2 * a2)
    rhs = points - (b0 + b1)[:, None] * first - (b2 + b3)[:, None] * last
    x0 = np.sum(a1 * rhs)
    x1 = np.sum(a2 * rhs)
    det = c00 * c11 - c01 * c01
    alpha_l = (x0 * c11 - c01 * x1) / det if abs(det) > 1e-12 else 0.0
    alpha_r = (c00 * x1 - c01 * x0) / det if abs(det) > 1e-12 else 0.0
    seg_len = np.linalg.norm(last - first)
    eps = 1e-6 * seg_len
    if alpha_l < eps or alpha_r < eps:
        # Wu/Barsky heuristic when the system degenerates
        alpha_l = alpha_r = seg_len / 3.0
    return np.stack([first, first + t_left * alpha_l, last + t_right * alpha_r, last])


def _max_error(points, cp, u):
    dists = np.linalg.norm(_bezier_points(cp, u) - points, axis=1)
    idx = int(np.argmax(dists[1:-1])) + 1 if points.shape[0] > 2 else 1
    return float(dists[idx]), idx


def _reparameterize(points, cp, u):
    q = _bezier_points(cp, u)
    d = q - points
    q1 = _bezier_deriv(cp, u)
    q2 = _bezier_second_deriv(cp, u)
    num = np.sum(d * q1, axis=1)
    den = np.sum(q1 * q1, axis=1) + np.sum(d * q2, axis=1)
    step = np.where(np.abs(den) > 1e-12, num / np.where(den == 0, 1.0, den), 0.0)
    return np.clip(u - step, 0.0, 1.0)


def _fit_cubic(points, t_left, t_right, max_error, out):
    if points.shape[0] == 2:
        dist = np.linalg.norm(points[1] - points[0]) / 3.0
        out.append(np.stack([
            points[0], points[0] + t_left * dist, points[1] + t_right * dist, points[1],
        ]))
        return
    u = _chord_parameterize(points)
    cp = _generate_bezier(points, u, t_left, t_right)
    err, split = _max_error(points, cp, u)
    if err <= max_error:
        out.append(cp)
        return
    for _ in range(_NEWTON_ROUNDS):
        u = _reparameterize(points, cp, u)
        cp = _generate_bezier(points, u, t_left, t_right)
        err, split = _max_error(points, cp, u)
        if err <= max_error:
            out.append(cp)
            return
    split = min(max(split, 1), points.shape[0] - 2)
    t_center = points[split - 1] - points[split + 1]
    if np.linalg.norm(t_center) <= 1e-12:
        t_center = points[split - 1] - points[split]
    t_center = _normalize(t_center)
    _fit_cubic(points[: split + 1], t_left, t_center, max_error, out)
    _fit_cubic(points[split:], -t_center, t_right, max_error, out)


def fit_beziers(p: Polyline, max_error: float = DEFAULT_FIT_ERROR) -> BezierPath:
    """Fit a piecewise cubic path so every input point lies within max_error
    of it; endpoints are interpolated exactly."""
    if max_error <= 0.0:
        raise PathSynthError("max_error must be positive")
    points = p.points
    if p.closed:
        points = np.vstack([points, points[:1]])
    if np.linalg.norm(points - points[0], axis=1).max() <= 1e-6:
        raise PathSynthError("cannot fit a path through coincident points")
    t_left = _end_tangent(points)
    t_right = _end_tangent(points[::-1])
    out: list[np.ndarray] = []
    _fit_cubic(points, t_left, t_right, max_error, out)
    arr = np.stack(out)
    for i in range(arr.shape[0] - 1):
        arr[i + 1, 0] = arr[i, 3]
    if p.closed:
        arr[-1, 3] = arr[0, 0]
    return BezierPath(segments=arr, closed=p.closed)


# ---------------------------------------------------------------------------
# elliptical paths

def synth_ellipse(center, rx: float, ry: float, rotation: float = 0.0) -> BezierPath:
    """Closed 4-segment cubic approximation of an ellipse, starting at
    parameter angle 0 (the rightmost point before rotation)."""
    if rx <= 0.0 or ry <= 0.0:
        raise PathSynthError(f"ellipse radii must be positive, got rx={rx}, ry={ry}")
    k = ELLIPSE_KAPPA
    # quarter arcs of the unit circle, angle 0 -> 2*pi
    quads = np.array([
        [[1, 0], [1, k], [k, 1], [0, 1]],
        [[0, 1], [-k, 1], [-1, k], [-1, 0]],
        [[-1, 0], [-1, -k], [-k, -1], [0, -1]],
        [[0, -1], [k, -1], [1, -k], [1, 0]],
    ], dtype=np.float64)
    quads *= np.array([rx, ry])
    c, s = np.cos(rotation), np.sin(rotation)
    rot = np.array([[c, -s], [s, c]])
    quads = quads @ rot.T
    quads += np.asarray(center, dtype=np.float64)
    # shared endpoints must be bitwise identical
    for i in range(3):
        quads[i + 1, 0] = quads[i, 3]
    quads[3, 3] = quads[0, 0]
    return BezierPath(segments=quads, closed=True)


# ---------------------------------------------------------------------------
# arc-length sampling

class ArcLengthSampler:
    """Normalized-arc-length evaluation of a BezierPath.

    Each segment gets a cumulative-length table of _ARC_TABLE_SIZE spans,
    each span integrated with 8-point Gauss-Legendre quadrature.
    """

    def __init__(self, path: BezierPath):
        self.path = path
        m = path.segments.shape[0]
        edges = np.linspace(0.0, 1.0, _ARC_TABLE_SIZE + 1)
        tables = np.empty((m, _ARC_TABLE_SIZE + 1))
        for i in range(m):
            cp = path.segments[i]
            mid = 0.5 * (edges[:-1] + edges[1:])
            half = 0.5 * (edges[1] - edges[0])
            # quadrature nodes for every span at once: (spans, nodes)
            u = mid[:, None] + half * _GL_NODES[None, :]
            speed = np.linalg.norm(_bezier_deriv(cp, u.ravel()), axis=1).reshape(u.shape)
            spans = half * (speed * _GL_WEIGHTS[None, :]).sum(axis=1)
            tables[i, 0] = 0.0
            np.cumsum(spans, out=tables[i, 1:])
        self.tables = tables
        self.seg_lengths = tables[:, -1].copy()
        self.cum_lengths = np.concatenate([[0.0], np.cumsum(self.seg_lengths)])
        self.total_length = float(self.cum_lengths[-1])

    def point_at(self, u: float) -> np.ndarray:
        if not (0.0 <= u <= 1.0):
            raise PathSynthError(f"arc-length parameter {u} outside [0, 1]")
        if u == 0.0:
            return self.path.segments[0, 0].copy()
        if u == 1.0:
            return self.path.segments[-1, 3].copy()
        target = u * self.total_length
        seg = int(np.searchsorted(self.cum_lengths, target, side="right")) - 1
        seg = min(max(seg, 0), self.path.segments.shape[0] - 1)
        local = target - self.cum_lengths[seg]
        table = self.tables[seg]
        hi = int(np.searchsorted(table, local, side="right"))
        hi = min(max(hi, 1), _ARC_TABLE_SIZE)
        lo = hi - 1
        span = table[hi] - table[lo]
        frac = 0.0 if span <= 0.0 else (local - table[lo]) / span
        t = (lo + frac) / _ARC_TABLE_SIZE
        return _bezier_point(self.path.segments[seg], t)

    def global_t_at(self, u: float) -> float:
        """Global (segment-uniform) parameter matching arc-length u."""
        if u <= 0.0:
            return 0.0
        if u >= 1.0:
            return 1.0
        target = u * self.total_length
        seg = int(np.searchsorted(self.cum_lengths, target, side="right")) - 1
        seg = min(max(seg, 0), self.path.segments.shape[0] - 1)
        local = target - self.cum_lengths[seg]
        table = self.tables[seg]
        hi = int(np.searchsorted(table, local, side="right"))
        hi = min(max(hi, 1), _ARC_TABLE_SIZE)
        lo = hi - 1
        span = table[hi] - table[lo]
        frac = 0.0 if span <= 0.0 else (local - table[lo]) / span
        t = (lo + frac) / _ARC_TABLE_SIZE
        return (seg + t) / self.path.segments.shape[0]


def sample_path(path: BezierPath, u: float) -> np.ndarray:
    """Point at normalized arc length u in [0, 1]."""
    return ArcLengthSampler(path).point_at(u)


def path_to_svg_d(path: BezierPath, decimals: int = 3) -> str:
    """SVG path `d` string, absolute coordinates, fixed decimals."""

    def fmt(v: float) -> str:
        return f"{v:.{decimals}f}"

    seg = path.segments
    parts = [f"M {fmt(seg[0, 0, 0])} {fmt(seg[0, 0, 1])}"]
    for cp in seg:
        parts.append(
            "C "
            + " ".join(fmt(v) for v in (cp[1, 0], cp[1, 1], cp[2, 0], cp[2, 1], cp[3, 0], cp[3, 1]))
        )
    if path.closed:
        parts.append("Z")
    return " ".join(parts)
