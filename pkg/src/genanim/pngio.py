"""PNG encode/decode on top of Pillow, normalized to uint8 numpy arrays."""

from __future__ import annotations

import io

import numpy as np
from PIL import Image

from .errors import SceneError


def decode_png(data: bytes) -> np.ndarray:
    """Decode PNG bytes to a (h, w, c) uint8 array with c in {1, 4}.

    8-bit grayscale stays single-channel; RGB gains an opaque alpha channel.
    """
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except Exception as exc:
        raise SceneError(f"cannot decode PNG: {exc}") from exc
    if img.mode == "L":
        arr = np.asarray(img, dtype=np.uint8)
        return arr[:, :, None]
    if img.mode == "RGB":
        img = img.convert("RGBA")
    elif img.mode == "LA":
        img = img.convert("RGBA")
    elif img.mode == "P":
        img = img.convert("RGBA")
    if img.mode != "RGBA":
        raise SceneError(f"unsupported PNG mode {img.mode!r} (need 8-bit gray/RGB/RGBA)")
    return np.asarray(img, dtype=np.uint8)


def decode_png_file(path) -> np.ndarray:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise SceneError(f"cannot read {path}: {exc}") from exc
    return decode_png(data)


def encode_png(arr: np.ndarray) -> bytes:
    """Encode a (h, w), (h, w, 1) or (h, w, 4) uint8 array as PNG bytes."""
    arr = np.ascontiguousarray(arr, dtype=np.uint8)
    if arr.ndim == 3 and arr.shape[2] == 1:
        arr = arr[:, :, 0]
    mode = "L" if arr.ndim == 2 else "RGBA"
    img = Image.fromarray(arr, mode=mode)
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()
