"""Shared fixtures and independent oracle implementations.

The oracles here are deliberately written as plain, literal transcriptions
(nested lists, explicit loops) so they stay independent of the library's
vectorized/compiled implementations they check.
"""

from __future__ import annotations

import os

import numpy as np
import pytest

from genanim import load_scene

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, name)


@pytest.fixture(scope="session")
def mario_scene():
    return load_scene(fixture_path("mario_hills.scene.json"))


@pytest.fixture(scope="session")
def earth_moon_scene():
    return load_scene(fixture_path("earth_moon.scene.json"))


@pytest.fixture(scope="session")
def vision_scene():
    return load_scene(fixture_path("vision.scene.json"))


@pytest.fixture(scope="session")
def two_paths_scene():
    return load_scene(fixture_path("two_paths.scene.json"))


# ---------------------------------------------------------------------------
# Zhang-Suen reference: literal transcription of the two subiterations.

def zhang_suen_reference(mask: np.ndarray) -> np.ndarray:
    h, w = mask.shape
    img = [[0] * (w + 2) for _ in range(h + 2)]
    for y in range(h):
        for x in range(w):
            if mask[y][x]:
                img[y + 1][x + 1] = 1

    def neighbours(y, x):
        # P2..P9 clockwise starting north
        return [img[y - 1][x], img[y - 1][x + 1], img[y][x + 1], img[y + 1][x + 1],
                img[y + 1][x], img[y + 1][x - 1], img[y][x - 1], img[y - 1][x - 1]]

    changed = True
    while changed:
        changed = False
        for step in (0, 1):
            marked = []
            for y in range(1, h + 1):
                for x in range(1, w + 1):
                    if not img[y][x]:
                        continue
                    p = neighbours(y, x)
                    b = sum(p)
                    if b < 2 or b > 6:
                        continue
                    a = sum(1 for i in range(8) if p[i] == 0 and p[(i + 1) % 8] == 1)
                    if a != 1:
                        continue
                    p2, p4, p6, p8 = p[0], p[2], p[4], p[6]
                    if step == 0:
                        if p2 * p4 * p6 != 0 or p4 * p6 * p8 != 0:
                            continue
                    else:
                        if p2 * p4 * p8 != 0 or p2 * p6 * p8 != 0:
                            continue
                    marked.append((y, x))
            for y, x in marked:
                img[y][x] = 0
            if marked:
                changed = True

    out = np.zeros((h, w), dtype=np.uint8)
    for y in range(h):
        for x in range(w):
            out[y][x] = img[y + 1][x + 1]
    return out


def count_components_8(mask: np.ndarray) -> int:
    """Plain BFS 8-connected component count."""
    h, w = mask.shape
    seen = np.zeros((h, w), dtype=bool)
    count = 0
    for sy in range(h):
        for sx in range(w):
            if not mask[sy][sx] or seen[sy][sx]:
                continue
            count += 1
            stack = [(sy, sx)]
            seen[sy][sx] = True
            while stack:
                y, x = stack.pop()
                for dy in (-1, 0, 1):
                    for dx in (-1, 0, 1):
                        ny, nx = y + dy, x + dx
                        if 0 <= ny < h and 0 <= nx < w and mask[ny][nx] and not seen[ny][nx]:
                            seen[ny][nx] = True
                            stack.append((ny, nx))
    return count


def random_blob(rng: np.random.Generator, size: int = 48) -> np.ndarray:
    """Non-empty random blob: union of a few discs and boxes."""
    mask = np.zeros((size, size), dtype=np.uint8)
    yy, xx = np.mgrid[0:size, 0:size]
    for _ in range(int(rng.integers(2, 6))):
        cy, cx = rng.integers(6, size - 6, 2)
        r = int(rng.integers(3, 10))
        mask[(yy - cy) ** 2 + (xx - cx) ** 2 <= r * r] = 1
    for _ in range(int(rng.integers(0, 3))):
        y0, x0 = rng.integers(4, size - 12, 2)
        hgt, wid = rng.integers(3, 10, 2)
        mask[y0:y0 + hgt, x0:x0 + wid] = 1
    if not mask.any():
        mask[size // 2, size // 2] = 1
    return mask


# ---------------------------------------------------------------------------
# Bezier oracle: dense nearest-point distances.

def dense_path_points(path, per_segment: int = 1000) -> np.ndarray:
    ts = np.linspace(0.0, 1.0, per_segment)
    chunks = []
    for cp in path.segments:
        u = ts[:, None]
        v = 1.0 - u
        chunks.append(v**3 * cp[0] + 3 * v**2 * u * cp[1] + 3 * v * u**2 * cp[2] + u**3 * cp[3])
    return np.concatenate(chunks)


def max_nearest_point_error(path, points: np.ndarray, per_segment: int = 1000) -> float:
    dense = dense_path_points(path, per_segment)
    worst = 0.0
    for pt in points:
        d = float(np.sqrt(((dense - pt) ** 2).sum(axis=1)).min())
        worst = max(worst, d)
    return worst


def random_smooth_polyline(rng: np.random.Generator, n_min: int = 25, n_max: int = 80) -> np.ndarray:
    n = int(rng.integers(n_min, n_max))
    angles = np.cumsum(rng.normal(0.0, 0.35, size=n - 1))
    steps = rng.uniform(3.0, 8.0, size=n - 1)
    deltas = np.stack([steps * np.cos(angles), steps * np.sin(angles)], axis=1)
    pts = np.vstack([[0.0, 0.0], np.cumsum(deltas, axis=0)])
    return pts + rng.uniform(-0.2, 0.2, size=pts.shape)
