"""Raster kernel backend selection.

The compiled extension is used when present; setting GENANIM_PURE_PYTHON=1
forces the numpy fallback. `label_components` is numpy-only (it is not a
hot path). benchmarks/kernel_bench.py compares the two backends.
"""

import os

from ._purepy import label_components  # noqa: F401

if os.environ.get("GENANIM_PURE_PYTHON") == "1":
    from . import _purepy as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _purepy as _impl

ACTIVE_BACKEND = _impl.BACKEND
thin = _impl.thin
flood_fill_rgba = _impl.flood_fill_rgba
distance_transform = _impl.distance_transform
