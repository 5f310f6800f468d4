"""Backend parity (compiled vs numpy) and small brute-force checks for the
raster kernels."""

import numpy as np
import pytest

from genanim import kernels
from genanim.kernels import _purepy

from conftest import random_blob

try:
    from genanim.kernels import _core
except ImportError:
    _core = None

BACKENDS = [_purepy] + ([_core] if _core is not None else [])


def test_active_backend_reported():
    assert kernels.ACTIVE_BACKEND in ("cython", "numpy")


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
def test_edt_matches_brute_force(backend):
    rng = np.random.default_rng(13)
    for _ in range(5):
        mask = (rng.random((18, 22)) > 0.4).astype(np.uint8)
        got = backend.distance_transform(mask)
        ys, xs = np.nonzero(mask == 0)
        for y in range(18):
            for x in range(22):
                if not mask[y, x]:
                    assert got[y, x] == 0.0
                    continue
                if ys.size == 0:
                    continue
                expected = np.sqrt(((ys - y) ** 2 + (xs - x) ** 2).min())
                assert got[y, x] == pytest.approx(expected, abs=1e-9)


@pytest.mark.skipif(_core is None, reason="compiled kernels unavailable")
def test_backend_parity_on_blobs():
    rng = np.random.default_rng(29)
    for _ in range(15):
        blob = random_blob(rng, size=40)
        assert ((_core.thin(blob) != 0) == (_purepy.thin(blob) != 0)).all()
        assert np.allclose(_core.distance_transform(blob),
                           _purepy.distance_transform(blob), atol=1e-9)


@pytest.mark.skipif(_core is None, reason="compiled kernels unavailable")
def test_flood_parity_on_random_images():
    rng = np.random.default_rng(31)
    for _ in range(10):
        img = (rng.integers(0, 4, size=(30, 34, 4)) * 70).astype(np.uint8)
        img[:, :, 3] = 255
        sx, sy = int(rng.integers(0, 34)), int(rng.integers(0, 30))
        a = _core.flood_fill_rgba(img, sx, sy, 24)
        b = _purepy.flood_fill_rgba(img, sx, sy, 24)
        assert (a == b).all()


def test_label_components_counts():
    mask = np.zeros((12, 12), np.uint8)
    mask[1:4, 1:4] = 1
    mask[6:9, 6:9] = 1
    mask[1, 10] = 1
    labels, count = kernels.label_components(mask, connectivity=8)
    assert count == 3
    assert labels[mask == 0].max(initial=0) == 0
    # diagonal-only touch joins under 8-connectivity, not 4
    diag = np.zeros((4, 4), np.uint8)
    diag[0, 0] = diag[1, 1] = 1
    assert kernels.label_components(diag, connectivity=8)[1] == 1
    assert kernels.label_components(diag, connectivity=4)[1] == 2
