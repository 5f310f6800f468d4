"""Entity grounding: binary masks for named scene entities.

The built-in segmenter is a deterministic tolerance flood fill seeded at an
object's anchor (a stand-in for an interactive segmentation model; a real
one can be wired in through GENANIM_SEGMENTER_URL). Candidate ranking and
click disambiguation follow the scene name-match scores.
"""

from __future__ import annotations

import base64
import json
import os
from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels
from ._http import post_json
from .errors import GroundingError
from .pngio import decode_png, decode_png_file
from .scene import Raster, SceneDocument, find_objects_by_name, name_match_score

DEFAULT_TOLERANCE = 24  # per-channel colour distance for the flood fill
AUTO_RESOLVE_MARGIN = 0.3


@dataclass(frozen=True)
class Mask:
    """Binary raster; foreground = sample > 0. Same dimensions as artwork."""

    data: np.ndarray  # (h, w) uint8

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.uint8)
        if arr.ndim != 2:
            raise GroundingError(f"mask must be 2-D, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    def foreground_count(self) -> int:
        return int(np.count_nonzero(self.data))

    def contains(self, x: float, y: float) -> bool:
        ix, iy = int(np.floor(x)), int(np.floor(y))
        if 0 <= ix < self.width and 0 <= iy < self.height:
            return bool(self.data[iy, ix])
        return False

    def bbox(self) -> tuple[int, int, int, int]:
        """Tight (x, y, w, h) box around the foreground."""
        ys, xs = np.nonzero(self.data)
        if ys.size == 0:
            raise GroundingError("mask has no foreground")
        return (int(xs.min()), int(ys.min()),
                int(xs.max() - xs.min() + 1), int(ys.max() - ys.min() + 1))

    def to_raster(self) -> Raster:
        return Raster(self.data[:, :, None])


@dataclass(frozen=True)
class Candidate:
    mask: Mask
    score: float
    bounds: tuple[int, int, int, int]
    object_id: str | None = None


@dataclass(frozen=True)
class CandidateSet:
    candidates: tuple[Candidate, ...]
    resolved: int | None = None

    def __post_init__(self):
        scores = [c.score for c in self.candidates]
        if any(b > a + 1e-12 for a, b in zip(scores, scores[1:])):
            raise GroundingError("candidate scores must be non-increasing")
        if self.resolved is not None and not (0 <= self.resolved < len(self.candidates)):
            raise GroundingError(f"resolved index {self.resolved} out of range")

    @property
    def resolved_mask(self) -> Mask:
        if self.resolved is None:
            raise GroundingError("candidate set is unresolved")
        return self.candidates[self.resolved].mask


def _check_mask(mask: Mask, scene: SceneDocument, what: str) -> Mask:
    if (mask.width, mask.height) != (scene.canvas_width, scene.canvas_height):
        raise GroundingError(
            f"{what} is {mask.width}x{mask.height}, canvas is "
            f"{scene.canvas_width}x{scene.canvas_height}"
        )
    if mask.foreground_count() == 0:
        raise GroundingError(f"{what} has no foreground pixels")
    return mask


def segment_by_point(artwork: Raster, seed: tuple[float, float], tolerance: int = DEFAULT_TOLERANCE) -> Mask:
    """Flood-fill the 4-connected region whose per-channel colour distance
    from the seed pixel stays <= tolerance."""
    if artwork.channels != 4:
        raise GroundingError("segmentation needs 4-channel artwork")
    x, y = int(np.floor(seed[0])), int(np.floor(seed[1]))
    if not (0 <= x < artwork.width and 0 <= y < artwork.height):
        raise GroundingError(f"seed ({seed[0]}, {seed[1]}) outside canvas")
    data = kernels.flood_fill_rgba(artwork.data, x, y, int(tolerance))
    return Mask(data)


@dataclass(frozen=True)
class SegmenterConfig:
    url: str
    timeout: float = 10.0

    @classmethod
    def from_env(cls, environ) -> "SegmenterConfig | None":
        url = environ.get("GENANIM_SEGMENTER_URL")
        return cls(url=url) if url else None


def query_external_segmenter(
    artwork: Raster,
    entity_query: str,
    seed: tuple[float, float] | None,
    config: SegmenterConfig,
) -> list[Mask]:
    """Ask a remote segmentation service for candidate masks.

    Wrong-dimension masks are dropped. Transport or decode failures raise;
    callers fall back to the built-in segmenter.
    """
    from .pngio import encode_png

    payload = {
        "image": base64.b64encode(encode_png(artwork.data)).decode("ascii"),
        "query": entity_query,
    }
    if seed is not None:
        payload["seed"] = [float(seed[0]), float(seed[1])]
    raw = post_json(config.url, payload, timeout=config.timeout)
    reply = json.loads(raw)
    if not isinstance(reply, dict) or not isinstance(reply.get("masks"), list):
        raise GroundingError("segmenter reply missing 'masks' list")
    masks = []
    for entry in reply["masks"]:
        arr = decode_png(base64.b64decode(entry))
        mask = Mask(arr[:, :, 0] if arr.ndim == 3 else arr)
        if (mask.width, mask.height) != (artwork.width, artwork.height):
            continue  # dimension mismatch: drop, caller records a warning
        if mask.foreground_count() == 0:
            continue
        masks.append(mask)
    return masks


def propose_candidates(
    scene: SceneDocument,
    entity_query: str,
    tolerance: int = DEFAULT_TOLERANCE,
    segmenter: SegmenterConfig | None = None,
    warnings: list[str] | None = None,
) -> CandidateSet:
    """One candidate per name-matched object, each segmented at its anchor.

    Auto-resolves when there is a single candidate or the top score beats
    the runner-up by >= 0.3. An empty set (no matches) is returned, not
    raised.
    """
    if not entity_query or not entity_query.strip():
        raise GroundingError("empty entity query")
    matches = find_objects_by_name(scene, entity_query)
    if not matches:
        return CandidateSet(candidates=())

    external: list[Mask] = []
    if segmenter is not None:
        try:
            external = query_external_segmenter(
                scene.artwork, entity_query, matches[0].anchor, segmenter
            )
        except Exception as exc:
            if warnings is not None:
                warnings.append(f"external segmenter failed ({exc}); using flood fill")
            external = []

    entries: list[Candidate] = []
    if external:
        # Pair each external mask with the matched object whose anchor it
        # contains (fall back to the top match) and inherit that score.
        for mask in external:
            owner = next((o for o in matches if mask.contains(*o.anchor)), matches[0])
            entries.append(Candidate(
                mask=_check_mask(mask, scene, "external mask"),
                score=name_match_score(entity_query, owner.name),
                bounds=mask.bbox(),
                object_id=owner.id,
            ))
    else:
        for obj in matches:
            mask = segment_by_point(scene.artwork, obj.anchor, tolerance)
            entries.append(Candidate(
                mask=_check_mask(mask, scene, f"mask for {obj.id!r}"),
                score=name_match_score(entity_query, obj.name),
                bounds=mask.bbox(),
                object_id=obj.id,
            ))

    entries.sort(key=lambda c: (-c.score, c.object_id or ""))
    resolved = None
    if len(entries) == 1:
        resolved = 0
    elif entries[0].score - entries[1].score >= AUTO_RESOLVE_MARGIN:
        resolved = 0
    return CandidateSet(candidates=tuple(entries), resolved=resolved)


def disambiguate(
    cset: CandidateSet,
    click: tuple[float, float],
    artwork: Raster,
    tolerance: int = DEFAULT_TOLERANCE,
) -> CandidateSet:
    """Resolve a candidate set from a user click and refine its mask by
    re-segmenting at the click point."""
    if not cset.candidates:
        raise GroundingError("cannot disambiguate an empty candidate set")
    x, y = click
    if not (0 <= x < artwork.width and 0 <= y < artwork.height):
        raise GroundingError(f"click ({x}, {y}) outside canvas")

    chosen = None
    for i, cand in enumerate(cset.candidates):
        if cand.mask.contains(x, y):
            chosen = i
            break
    if chosen is None:
        # nearest foreground pixel over all candidates (pixel centres)
        best = (np.inf, 0)
        for i, cand in enumerate(cset.candidates):
            ys, xs = np.nonzero(cand.mask.data)
            d2 = (xs + 0.5 - x) ** 2 + (ys + 0.5 - y) ** 2
            dist = float(np.sqrt(d2.min()))
            if dist < best[0]:
                best = (dist, i)
        chosen = best[1]

    refined = segment_by_point(artwork, click, tolerance)
    candidates = list(cset.candidates)
    candidates[chosen] = replace(candidates[chosen], mask=refined, bounds=refined.bbox())
    return CandidateSet(candidates=tuple(candidates), resolved=chosen)


def load_mask(path: str | os.PathLike, scene: SceneDocument) -> Mask:
    """Load a grayscale PNG as a mask (nonzero = foreground)."""
    arr = decode_png_file(path)
    if arr.shape[2] == 4:
        arr = arr[:, :, :1]  # tolerate RGBA exports of grayscale masks
    mask = Mask((arr[:, :, 0] > 0).astype(np.uint8) * 255)
    return _check_mask(mask, scene, f"mask {os.path.basename(str(path))!r}")
