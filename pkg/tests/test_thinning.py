"""Zhang-Suen thinning against a literal reference transcription, plus the
subset / component-count / idempotence invariant suite on random blobs."""

import numpy as np
import pytest

from genanim import Mask, PathSynthError
from genanim.kernels import _purepy, thin
from genanim.pathsynth import thin_mask

from conftest import count_components_8, random_blob, zhang_suen_reference


def test_single_pixel_unchanged():
    m = np.zeros((5, 5), np.uint8)
    m[2, 2] = 1
    out = thin(m)
    assert (out != 0).sum() == 1 and out[2, 2]


def test_bar_thins_to_interior_centerline():
    m = np.zeros((9, 26), np.uint8)
    m[3:6, 3:23] = 1
    out = thin(m)
    expected = zhang_suen_reference(m)
    assert ((out != 0) == (expected != 0)).all()
    ys, xs = np.nonzero(out)
    assert set(ys) == {4}  # middle row of the 3-row bar
    assert xs.min() >= 3 and xs.max() <= 22
    assert xs.max() - xs.min() >= 15  # spans the bar's interior


@pytest.mark.parametrize("seed", range(50))
def test_blob_invariants_vs_reference(seed):
    rng = np.random.default_rng(1000 + seed)
    blob = random_blob(rng)
    skeleton = thin(blob)
    reference = zhang_suen_reference(blob)
    # exact agreement with the literal transcription
    assert ((skeleton != 0) == (reference != 0)).all()
    # skeleton is a subset of the original foreground
    assert not ((skeleton != 0) & (blob == 0)).any()
    # 8-connected component count preserved
    assert count_components_8(skeleton != 0) == count_components_8(blob != 0)
    # idempotence
    again = thin(skeleton)
    assert ((again != 0) == (skeleton != 0)).all()


def test_backends_agree_on_blobs():
    rng = np.random.default_rng(77)
    for _ in range(10):
        blob = random_blob(rng)
        a = thin(blob)
        b = _purepy.thin(blob)
        assert ((a != 0) == (b != 0)).all()


def test_empty_mask_rejected():
    with pytest.raises(PathSynthError, match="foreground"):
        thin_mask(Mask(np.zeros((8, 8), np.uint8)))
