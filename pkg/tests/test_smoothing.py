import numpy as np
import pytest

from genanim import PathSynthError
from genanim.pathsynth import smooth_polyline
from genanim.pathsynth.polyline import Polyline


def test_right_angle_hand_value():
    poly = Polyline(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]))
    out = smooth_polyline(poly, 0.5, 0.0, 1)
    assert out.points[1] == pytest.approx([0.75, 0.25])
    # endpoints pinned
    assert (out.points[0] == poly.points[0]).all()
    assert (out.points[2] == poly.points[2]).all()


def test_collinear_polyline_is_fixed_point():
    # every vertex already equals its neighbours' midpoint, so the update
    # has nothing to move (uniformly spaced points along any line)
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = int(rng.integers(3, 12))
        direction = rng.normal(size=2)
        direction /= np.linalg.norm(direction)
        step = rng.uniform(0.5, 10.0)
        origin = rng.uniform(-50, 50, 2)
        pts = origin + (np.arange(n) * step)[:, None] * direction
        poly = Polyline(pts)
        out = smooth_polyline(poly, 0.7, -0.3, 5)
        assert np.allclose(out.points, poly.points, atol=1e-9)


def test_vertex_count_preserved_and_endpoints_fixed():
    rng = np.random.default_rng(11)
    pts = np.cumsum(rng.uniform(0.5, 2.0, size=(30, 2)), axis=0)
    poly = Polyline(pts)
    out = smooth_polyline(poly, 0.33, -0.34, 10)
    assert len(out) == len(poly)
    assert (out.points[0] == poly.points[0]).all()
    assert (out.points[-1] == poly.points[-1]).all()


def test_closed_polyline_wraps_neighbours():
    # a square relaxes toward its centre without pinned corners
    pts = np.array([[0.0, 0.0], [10.0, 0.0], [10.0, 10.0], [0.0, 10.0]])
    out = smooth_polyline(Polyline(pts, closed=True), 0.5, 0.0, 1)
    assert not np.allclose(out.points[0], pts[0])
    centre = pts.mean(axis=0)
    assert np.linalg.norm(out.points - centre, axis=1).max() < np.linalg.norm(pts - centre, axis=1).max()


def test_taubin_shrinks_less_than_laplacian():
    theta = np.linspace(0, 2 * np.pi, 60, endpoint=False)
    circle = np.stack([np.cos(theta), np.sin(theta)], axis=1) * 50
    laplace = smooth_polyline(Polyline(circle, closed=True), 0.33, 0.0, 25)
    taubin = smooth_polyline(Polyline(circle, closed=True), 0.33, -0.34, 25)
    r_laplace = np.linalg.norm(laplace.points, axis=1).mean()
    r_taubin = np.linalg.norm(taubin.points, axis=1).mean()
    assert r_taubin > r_laplace


@pytest.mark.parametrize("lam,mu", [(1.5, 0.0), (0.0, 0.0), (-0.2, 0.0), (0.5, 0.5), (0.5, -1.5)])
def test_parameters_out_of_range(lam, mu):
    poly = Polyline(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 1.0]]))
    with pytest.raises(PathSynthError):
        smooth_polyline(poly, lam, mu, 1)


def test_polyline_invariants():
    with pytest.raises(PathSynthError, match="coincident"):
        Polyline(np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 1.0]]))
    with pytest.raises(PathSynthError):
        Polyline(np.array([[0.0, 0.0]]))
