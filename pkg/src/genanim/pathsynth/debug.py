"""Debug dumps: skeleton PNG, centerline/path SVG overlays."""

from __future__ import annotations

import numpy as np

from ..grounding import Mask
from ..pngio import encode_png
from .bezier import BezierPath, path_to_svg_d
from .polyline import Polyline


def skeleton_png_bytes(skeleton: Mask) -> bytes:
    return encode_png((skeleton.data != 0).astype(np.uint8) * 255)


def polyline_svg_d(p: Polyline, decimals: int = 3) -> str:
    parts = []
    for i, (x, y) in enumerate(p.points):
        cmd = "M" if i == 0 else "L"
        parts.append(f"{cmd} {x:.{decimals}f} {y:.{decimals}f}")
    if p.closed:
        parts.append("Z")
    return " ".join(parts)


def geometry_svg(width: int, height: int, *, centerline: Polyline | None = None,
                 path: BezierPath | None = None) -> str:
    """Standalone SVG with the centerline and/or fitted path stroked."""
    body = []
    if centerline is not None:
        body.append(
            f'  <path d="{polyline_svg_d(centerline)}" fill="none" '
            'stroke="#888888" stroke-width="1"/>'
        )
    if path is not None:
        body.append(
            f'  <path d="{path_to_svg_d(path)}" fill="none" '
            'stroke="#d03030" stroke-width="1.5"/>'
        )
    inner = "\n".join(body)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n{inner}\n</svg>\n'
    )
