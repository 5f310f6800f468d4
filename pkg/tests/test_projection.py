import numpy as np
import pytest

from genanim import PathSynthError, TransformMatrix
from genanim.pathsynth import fit_beziers, project_motion
from genanim.pathsynth.polyline import Polyline


def _path():
    pts = np.array([[0.0, 0.0], [40.0, 10.0], [80.0, -5.0], [120.0, 0.0]])
    return fit_beziers(Polyline(pts), 5.0)


def _rot_z(deg):
    th = np.radians(deg)
    c, s = np.cos(th), np.sin(th)
    return TransformMatrix(np.array([
        [c, -s, 0, 0], [s, c, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
    ]))


def _translate(tx, ty):
    m = np.eye(4)
    m[0, 3], m[1, 3] = tx, ty
    return TransformMatrix(m)


def test_identity_returns_input_bit_exact():
    path = _path()
    out = project_motion(path, TransformMatrix.identity(), pivot=(7.0, 13.0))
    assert out is path


def test_pure_translation_shifts_every_point():
    path = _path()
    out = project_motion(path, _translate(10.0, 20.0), pivot=(50.0, 5.0))
    assert np.allclose(out.segments, path.segments + [10.0, 20.0], atol=1e-12)


def test_rotation_about_pivot_exact():
    path = _path()
    pivot = (60.0, 2.0)
    out = project_motion(path, _rot_z(45.0), pivot=pivot)
    th = np.radians(45.0)
    c, s = np.cos(th), np.sin(th)
    rel = path.segments - pivot
    expected = np.empty_like(rel)
    expected[..., 0] = c * rel[..., 0] - s * rel[..., 1] + pivot[0]
    expected[..., 1] = s * rel[..., 0] + c * rel[..., 1] + pivot[1]
    assert np.abs(out.segments - expected).max() <= 1e-9


def test_affine_composition():
    rng = np.random.default_rng(21)
    path = _path()
    pivot = (33.0, -4.0)
    for _ in range(20):
        def random_affine():
            m = np.eye(4)
            m[:2, :2] = rng.normal(0, 1, (2, 2)) + np.eye(2) * 1.5
            m[0, 3], m[1, 3] = rng.normal(0, 30, 2)
            return TransformMatrix(m)

        a, b = random_affine(), random_affine()
        ab = TransformMatrix(a.m @ b.m)
        once = project_motion(path, ab, pivot=pivot)
        twice = project_motion(project_motion(path, b, pivot=pivot), a, pivot=pivot)
        assert np.abs(once.segments - twice.segments).max() <= 1e-9


def test_perspective_divide():
    # w depends on x: a proper perspective transform
    m = np.eye(4)
    m[3, 0] = 0.001
    out = project_motion(_path(), TransformMatrix(m), pivot=(0.0, 0.0))
    src = _path().segments
    w = 1.0 + 0.001 * src[..., 0]
    assert np.allclose(out.segments[..., 0], src[..., 0] / w, atol=1e-12)


def test_point_behind_eye_names_control_point():
    m = np.eye(4)
    m[3, 0] = -1.0  # w = 1 - x goes non-positive for x >= 1
    with pytest.raises(PathSynthError, match="segment"):
        project_motion(_path(), TransformMatrix(m), pivot=(0.0, 0.0))
