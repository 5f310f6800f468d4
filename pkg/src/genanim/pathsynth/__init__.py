"""Geometry pipeline: mask -> skeleton -> smoothed centerline -> cubic
Bezier motion path, plus orbital ellipses, occlusion splitting and plane
projection."""

from __future__ import annotations

from ..grounding import Mask
from .bezier import (
    ArcLengthSampler,
    BezierPath,
    DEFAULT_FIT_ERROR,
    fit_beziers,
    path_to_svg_d,
    sample_path,
    split_segment,
    subpath,
    synth_ellipse,
)
from .debug import geometry_svg, polyline_svg_d, skeleton_png_bytes
from .occlusion import SplitPath, SplitPiece, split_path_by_mask
from .polyline import Polyline, smooth_polyline
from .projection import project_motion
from .trace import (
    WidthProfile,
    extract_contours,
    measure_width,
    skeleton_to_polyline,
    thin_mask,
)

# Taubin's classic non-shrinking pair
SMOOTH_LAMBDA = 0.33
SMOOTH_MU = -0.34
DEFAULT_SMOOTH_ITERATIONS = 10


def synthesize_mask_path(
    mask: Mask,
    smoothing_iterations: int = DEFAULT_SMOOTH_ITERATIONS,
    max_error: float = DEFAULT_FIT_ERROR,
) -> tuple[BezierPath, WidthProfile]:
    """Full mask-to-path synthesis: thin, order, smooth, fit; widths are
    measured on the smoothed centerline."""
    skeleton = thin_mask(mask)
    centerline = skeleton_to_polyline(skeleton)
    smoothed = smooth_polyline(centerline, SMOOTH_LAMBDA, SMOOTH_MU, smoothing_iterations)
    path = fit_beziers(smoothed, max_error)
    widths = measure_width(mask, smoothed)
    return path, widths


__all__ = [
    "ArcLengthSampler", "BezierPath", "DEFAULT_FIT_ERROR",
    "DEFAULT_SMOOTH_ITERATIONS", "Mask", "Polyline", "SMOOTH_LAMBDA",
    "SMOOTH_MU", "SplitPath", "SplitPiece", "WidthProfile",
    "extract_contours", "fit_beziers", "geometry_svg", "measure_width",
    "path_to_svg_d", "polyline_svg_d", "skeleton_png_bytes",
    "project_motion", "sample_path", "skeleton_to_polyline",
    "smooth_polyline", "split_path_by_mask", "split_segment", "subpath",
    "synth_ellipse", "synthesize_mask_path", "thin_mask",
]
