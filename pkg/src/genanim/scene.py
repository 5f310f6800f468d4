"""Scene document model: objects, artwork raster, transforms, z-order.

Coordinate conventions live here and nowhere else: origin top-left,
y increases downward, raster pixel (x, y) covers the unit square whose
center is the document point (x + 0.5, y + 0.5). Transforms are 4x4
homogeneous, column-vector convention (p' = M . p); 2D affine inputs are
embedded with identity z row/column.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import SceneError
from .pngio import decode_png_file, encode_png

NAME_MATCH_THRESHOLD = 0.6  # fixed; determinism beats tunability here


@dataclass(frozen=True)
class TransformMatrix:
    """4x4 homogeneous transform, column-vector convention."""

    m: np.ndarray  # (4, 4) float64

    def __post_init__(self):
        mat = np.asarray(self.m, dtype=np.float64)
        if mat.shape != (4, 4):
            raise SceneError(f"transform must be 4x4, got {mat.shape}")
        if abs(np.linalg.det(mat)) <= 1e-9:
            raise SceneError("transform is singular (|det| <= 1e-9)")
        mat.setflags(write=False)
        object.__setattr__(self, "m", mat)

    @classmethod
    def identity(cls) -> "TransformMatrix":
        return cls(np.eye(4))

    @classmethod
    def from_column_major(cls, values) -> "TransformMatrix":
        vals = list(values)
        if len(vals) != 16:
            raise SceneError(f"transform needs 16 numbers, got {len(vals)}")
        return cls(np.array(vals, dtype=np.float64).reshape(4, 4, order="F"))

    def to_column_major(self) -> list[float]:
        return [float(v) for v in self.m.flatten(order="F")]

    @property
    def is_identity(self) -> bool:
        return bool((self.m == np.eye(4)).all())

    def __eq__(self, other):
        return isinstance(other, TransformMatrix) and bool((self.m == other.m).all())


@dataclass(frozen=True)
class Raster:
    """Row-major 8-bit raster; channels = 1 (mask) or 4 (RGBA)."""

    data: np.ndarray  # (h, w, c) uint8

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.uint8)
        if arr.ndim != 3 or arr.shape[2] not in (1, 4):
            raise SceneError(f"raster must be (h, w, 1|4), got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    def __eq__(self, other):
        return isinstance(other, Raster) and self.data.shape == other.data.shape and bool(
            (self.data == other.data).all()
        )


@dataclass(frozen=True)
class SceneObject:
    id: str
    name: str
    bounds: tuple[float, float, float, float]  # x, y, w, h in canvas pixels
    anchor: tuple[float, float]
    z_order: int
    transform: TransformMatrix
    tags: tuple[str, ...] = ()

    def __post_init__(self):
        x, y, w, h = self.bounds
        if w <= 0 or h <= 0:
            raise SceneError(f"object {self.id!r}: degenerate bounds {self.bounds}")
        ax, ay = self.anchor
        if not (x <= ax <= x + w and y <= ay <= y + h):
            raise SceneError(f"object {self.id!r}: anchor {self.anchor} outside bounds")


@dataclass(frozen=True)
class SceneDocument:
    canvas_width: int
    canvas_height: int
    objects: tuple[SceneObject, ...]
    artwork: Raster
    scene_id: str = "scene"

    def __post_init__(self):
        if self.canvas_width < 1 or self.canvas_height < 1:
            raise SceneError("canvas dimensions must be >= 1")
        ids = [o.id for o in self.objects]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise SceneError(f"duplicate object ids: {dupes}")
        zs = {}
        for o in self.objects:
            if o.z_order in zs:
                raise SceneError(
                    f"objects {zs[o.z_order]!r} and {o.id!r} share z_order {o.z_order}"
                )
            zs[o.z_order] = o.id
        if (self.artwork.width, self.artwork.height) != (self.canvas_width, self.canvas_height):
            raise SceneError(
                f"artwork is {self.artwork.width}x{self.artwork.height}, "
                f"canvas is {self.canvas_width}x{self.canvas_height}"
            )

    def object_by_id(self, object_id: str) -> SceneObject:
        for o in self.objects:
            if o.id == object_id:
                return o
        raise SceneError(f"no object with id {object_id!r}")


def _require(cond, msg):
    if not cond:
        raise SceneError(msg)


def _parse_object(entry, index) -> SceneObject:
    where = f"objects[{index}]"
    _require(isinstance(entry, dict), f"{where}: expected object")
    known = {"id", "name", "bounds", "anchor", "z_order", "transform", "tags"}
    for key in entry:
        _require(key in known, f"{where}.{key}: unknown field")
    for key in ("id", "name", "bounds", "anchor", "z_order", "transform"):
        _require(key in entry, f"{where}.{key}: missing")
    bounds = entry["bounds"]
    _require(isinstance(bounds, list) and len(bounds) == 4, f"{where}.bounds: need [x,y,w,h]")
    anchor = entry["anchor"]
    _require(isinstance(anchor, list) and len(anchor) == 2, f"{where}.anchor: need [x,y]")
    _require(isinstance(entry["z_order"], int), f"{where}.z_order: need integer")
    transform = entry["transform"]
    _require(
        isinstance(transform, list) and len(transform) == 16,
        f"{where}.transform: need 16 numbers (column-major)",
    )
    tags = entry.get("tags", [])
    _require(
        isinstance(tags, list) and all(isinstance(t, str) for t in tags),
        f"{where}.tags: need list of strings",
    )
    try:
        tf = TransformMatrix.from_column_major(transform)
    except SceneError as exc:
        raise SceneError(f"{where}.transform: {exc}") from exc
    return SceneObject(
        id=str(entry["id"]),
        name=str(entry["name"]),
        bounds=tuple(float(v) for v in bounds),
        anchor=tuple(float(v) for v in anchor),
        z_order=entry["z_order"],
        transform=tf,
        tags=tuple(tags),
    )


def scene_from_payload(raw: dict, base_dir: str, default_id: str = "scene") -> SceneDocument:
    """Build a validated SceneDocument from parsed scene JSON; the artwork
    path is resolved against base_dir."""
    _require(isinstance(raw, dict), "top level: expected object")
    for key in raw:
        _require(key in {"canvas", "artwork", "objects", "id"}, f"{key}: unknown field")
    _require("canvas" in raw, "canvas: missing")
    _require("artwork" in raw, "artwork: missing")
    _require("objects" in raw, "objects: missing")
    canvas = raw["canvas"]
    _require(isinstance(canvas, dict), "canvas: expected object")
    for key in ("width", "height"):
        _require(isinstance(canvas.get(key), int), f"canvas.{key}: need integer")

    artwork = Raster(decode_png_file(os.path.join(base_dir, raw["artwork"])))
    objects = tuple(_parse_object(e, i) for i, e in enumerate(raw["objects"]))
    return SceneDocument(
        canvas_width=canvas["width"],
        canvas_height=canvas["height"],
        objects=objects,
        artwork=artwork,
        scene_id=str(raw.get("id", default_id)),
    )


def load_scene(path: str | os.PathLike) -> SceneDocument:
    """Load and fully validate a scene JSON document plus its artwork PNG."""
    if not os.path.exists(path):
        raise SceneError(f"scene file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SceneError(f"scene file is not valid JSON: {exc}") from exc
    return scene_from_payload(
        raw,
        os.path.dirname(os.path.abspath(path)),
        default_id=os.path.splitext(os.path.basename(path))[0],
    )


def save_scene(doc: SceneDocument, path: str | os.PathLike, artwork_name: str | None = None):
    """Write the scene JSON (and its artwork PNG alongside)."""
    if artwork_name is None:
        artwork_name = os.path.splitext(os.path.basename(path))[0] + ".png"
    payload = {
        "id": doc.scene_id,
        "canvas": {"width": doc.canvas_width, "height": doc.canvas_height},
        "artwork": artwork_name,
        "objects": [
            {
                "id": o.id,
                "name": o.name,
                "bounds": list(o.bounds),
                "anchor": list(o.anchor),
                "z_order": o.z_order,
                "transform": o.transform.to_column_major(),
                **({"tags": list(o.tags)} if o.tags else {}),
            }
            for o in doc.objects
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    with open(os.path.join(os.path.dirname(os.path.abspath(path)), artwork_name), "wb") as fh:
        fh.write(encode_png(doc.artwork.data))


def _levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _token_similarity(a: str, b: str) -> float:
    longest = max(len(a), len(b))
    if longest == 0:
        return 0.0
    return 1.0 - _levenshtein(a, b) / longest


def name_match_score(query: str, name: str) -> float:
    """Match score in [0, 1].

    Tiers (strictly ordered): exact case-folded equality (1.0) >
    token-subset match (0.70..0.95) > per-token edit-distance similarity
    (0.60..0.70, requires mean similarity >= 0.6). 0.0 means no match.
    """
    q = " ".join(query.casefold().split())
    n = " ".join(name.casefold().split())
    if q == n:
        return 1.0
    q_tokens = set(q.split())
    n_tokens = set(n.split())
    if q_tokens and n_tokens and (q_tokens <= n_tokens or n_tokens <= q_tokens):
        small, large = sorted((len(q_tokens), len(n_tokens)))
        return 0.70 + 0.25 * (small / large)
    if not n_tokens:
        return 0.0
    sims = [max(_token_similarity(nt, qt) for qt in q_tokens) for nt in n_tokens]
    mean = sum(sims) / len(sims)
    if mean < NAME_MATCH_THRESHOLD:
        return 0.0
    return 0.60 + 0.10 * (mean - 0.60) / 0.40


def find_objects_by_name(scene: SceneDocument, query: str) -> list[SceneObject]:
    """Objects ranked by name-match score (ties broken by ascending id).

    Empty list when nothing reaches the 0.6 threshold.
    """
    if not query or not query.strip():
        raise SceneError("empty name query")
    scored = []
    for obj in scene.objects:
        score = name_match_score(query, obj.name)
        if score >= NAME_MATCH_THRESHOLD:
            scored.append((-score, obj.id, obj))
    scored.sort(key=lambda t: (t[0], t[1]))
    return [obj for _, _, obj in scored]
