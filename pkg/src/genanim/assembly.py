"""Keyframe assembly: combine an intent with synthesized geometry into a
portable AnimationDocument, and export it as canonical JSON.

Position tracks are baked at 60 keyframes/s with easing applied, so hosts
only need linear interpolation; the easing kind is still recorded for
engines that accept it. Orbits add step tracks that flip z-order at each
occlusion crossing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AssemblyError
from .intent import AnimationIntent
from .pathsynth import ArcLengthSampler, BezierPath, SplitPath, WidthProfile
from .scene import SceneDocument, SceneObject

KEYFRAME_FPS = 60
TRACK_PROPERTIES = ("position", "opacity", "scale", "rotation", "z_order", "visibility")
STEP_PROPERTIES = ("z_order", "visibility")
EASE_IN_OUT = (0.42, 0.0, 0.58, 1.0)


@dataclass(frozen=True)
class EasingCurve:
    kind: str  # linear | ease_in_out | gallop | bounce | custom
    params: tuple[float, float, float, float] | None = None

    def __post_init__(self):
        if self.kind not in ("linear", "ease_in_out", "gallop", "bounce", "custom"):
            raise AssemblyError(f"unknown easing kind {self.kind!r}")
        if self.kind == "custom":
            if self.params is None or len(self.params) != 4:
                raise AssemblyError("custom easing needs 4 cubic parameters")
            x1, _, x2, _ = self.params
            if not (0.0 <= x1 <= 1.0 and 0.0 <= x2 <= 1.0):
                raise AssemblyError("custom easing x-coordinates must be in [0, 1]")

    def evaluate(self, u: float) -> float:
        """Progress remap at normalized time u."""
        if u <= 0.0:
            return 0.0
        if u >= 1.0:
            return 1.0
        if self.kind in ("linear", "gallop"):
            # gallop is a spatial hop superimposed on linear progress
            return u
        if self.kind == "bounce":
            return _bounce_out(u)
        x1, y1, x2, y2 = EASE_IN_OUT if self.kind == "ease_in_out" else self.params
        return _cubic_timing(u, x1, y1, x2, y2)

    def serialize(self) -> str:
        if self.kind == "custom":
            return "custom:" + ",".join(f"{v:.3f}" for v in self.params)
        return self.kind

    @classmethod
    def deserialize(cls, text: str) -> "EasingCurve":
        if text.startswith("custom:"):
            parts = tuple(float(v) for v in text[len("custom:"):].split(","))
            return cls("custom", parts)
        return cls(text)


LINEAR = EasingCurve("linear")


def _bounce_out(u: float) -> float:
    n1, d1 = 7.5625, 2.75
    if u < 1 / d1:
        return n1 * u * u
    if u < 2 / d1:
        u -= 1.5 / d1
        return n1 * u * u + 0.75
    if u < 2.5 / d1:
        u -= 2.25 / d1
        return n1 * u * u + 0.9375
    u -= 2.625 / d1
    return n1 * u * u + 0.984375


def _cubic_timing(u: float, x1: float, y1: float, x2: float, y2: float) -> float:
    """CSS-style cubic-bezier timing: solve x(t) = u, return y(t)."""

    def x_of(t):
        v = 1.0 - t
        return 3 * v * v * t * x1 + 3 * v * t * t * x2 + t * t * t

    def y_of(t):
        v = 1.0 - t
        return 3 * v * v * t * y1 + 3 * v * t * t * y2 + t * t * t

    lo, hi, t = 0.0, 1.0, u
    for _ in range(40):
        xt = x_of(t)
        if abs(xt - u) < 1e-9:
            break
        if xt < u:
            lo = t
        else:
            hi = t
        t = 0.5 * (lo + hi)
    return y_of(t)


def gallop_offset(u: float, hop_count: int, hop_height: float) -> float:
    """Vertical hop displacement at progress u: -hop_height * |sin(pi * n * u)|
    (negative = up in canvas coordinates)."""
    if hop_count < 1:
        raise AssemblyError("hop_count must be >= 1")
    return -hop_height * abs(math.sin(math.pi * hop_count * u))


@dataclass(frozen=True)
class Track:
    object_id: str
    property: str
    keyframes: tuple[tuple[int, object], ...]
    easing: EasingCurve = LINEAR
    motion_path: BezierPath | None = None

    def __post_init__(self):
        if self.property not in TRACK_PROPERTIES:
            raise AssemblyError(f"unknown track property {self.property!r}")
        if not self.keyframes:
            raise AssemblyError("track needs at least one keyframe")
        times = [t for t, _ in self.keyframes]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise AssemblyError("keyframe times must be strictly increasing")

    @property
    def interpolation(self) -> str:
        return "step" if self.property in STEP_PROPERTIES else "linear"


@dataclass(frozen=True)
class AnimationDocument:
    scene_ref: str
    duration_ms: int
    tracks: tuple[Track, ...]
    loop: bool = False

    def __post_init__(self):
        if self.duration_ms <= 0:
            raise AssemblyError("duration must be positive")
        if not self.tracks:
            raise AssemblyError("document needs at least one track")
        for track in self.tracks:
            for t, _ in track.keyframes:
                if not (0 <= t <= self.duration_ms):
                    raise AssemblyError(
                        f"keyframe time {t} outside [0, {self.duration_ms}]"
                    )


@dataclass(frozen=True)
class Geometry:
    """Synthesis outputs handed to assemble(); contents depend on the mode."""

    path: BezierPath | None = None
    widths: WidthProfile | None = None
    split: SplitPath | None = None
    occluder_id: str | None = None


def _keyframe_times(duration_ms: int) -> list[int]:
    n = duration_ms * KEYFRAME_FPS // 1000
    times = [round(i * 1000 / KEYFRAME_FPS) for i in range(n + 1)]
    if times[-1] != duration_ms:
        times.append(duration_ms)
    return times


def _bake_position(path: BezierPath, duration_ms: int, easing: EasingCurve) -> tuple:
    sampler = ArcLengthSampler(path)
    frames = []
    for t in _keyframe_times(duration_ms):
        u = easing.evaluate(t / duration_ms)
        x, y = sampler.point_at(u)
        frames.append((t, (float(x), float(y))))
    return tuple(frames)


def _bake_scalar(duration_ms: int, fn) -> tuple:
    return tuple((t, float(fn(t / duration_ms))) for t in _keyframe_times(duration_ms))


def line_path(start, end) -> BezierPath:
    p0 = np.asarray(start, dtype=np.float64)
    p3 = np.asarray(end, dtype=np.float64)
    return BezierPath(
        segments=np.stack([p0, p0 + (p3 - p0) / 3.0, p0 + (p3 - p0) * 2.0 / 3.0, p3])[None, :, :]
    )


def directional_start(subject: SceneObject, direction: str, canvas: tuple[int, int]):
    """Off-canvas start point for a fly-in, before plane projection."""
    x, y, w, h = subject.bounds
    ax, ay = subject.anchor
    cw, ch = canvas
    if direction == "left":
        return (-w, ay)
    if direction == "right":
        return (cw + w, ay)
    if direction == "top":
        return (ax, -h)
    if direction == "bottom":
        return (ax, ch + h)
    raise AssemblyError(f"unknown direction {direction!r}")


def _preset_easing(preset: str) -> EasingCurve:
    if preset == "gallop":
        return EasingCurve("gallop")
    if preset in ("custom_path", "orbit", "rotate"):
        return LINEAR
    if preset == "bounce":
        return EasingCurve("bounce")
    return EasingCurve("ease_in_out")


def _assemble_path_follow(intent, subject, geometry) -> list[Track]:
    if geometry.path is None:
        raise AssemblyError("path_follow needs a synthesized path")
    easing = _preset_easing(intent.preset)
    return [Track(
        object_id=subject.id,
        property="position",
        keyframes=_bake_position(geometry.path, intent.duration_ms, easing),
        easing=easing,
        motion_path=geometry.path,
    )]


def _assemble_orbit(intent, subject, scene, geometry) -> list[Track]:
    if geometry.path is None or geometry.split is None:
        raise AssemblyError("orbit needs the full ellipse path and its occlusion split")
    occluder = scene.object_by_id(geometry.occluder_id) if geometry.occluder_id else None
    if occluder is None:
        raise AssemblyError("orbit needs the occluding object")
    z_front = occluder.z_order + 1
    z_back = occluder.z_order - 1

    tracks = [Track(
        object_id=subject.id,
        property="position",
        keyframes=_bake_position(geometry.path, intent.duration_ms, LINEAR),
        easing=LINEAR,
        motion_path=geometry.path,
    )]

    z_frames: list[tuple[int, object]] = []
    pieces = geometry.split.pieces
    first_z = z_back if pieces[0].layer == "back" else z_front
    z_frames.append((0, first_z))
    for piece, crossing in zip(pieces[1:], geometry.split.crossings):
        t_ms = round(crossing * intent.duration_ms)
        z_value = z_back if piece.layer == "back" else z_front
        if t_ms <= z_frames[-1][0]:
            raise AssemblyError("occlusion crossings collide at this duration")
        z_frames.append((t_ms, z_value))
    tracks.append(Track(object_id=subject.id, property="z_order", keyframes=tuple(z_frames)))
    tracks.append(Track(object_id=subject.id, property="visibility", keyframes=((0, True),)))
    return tracks


def _assemble_directional(intent, subject, geometry) -> list[Track]:
    if geometry.path is None:
        raise AssemblyError("directional needs the projected approach path")
    easing = _preset_easing(intent.preset)
    return [Track(
        object_id=subject.id,
        property="position",
        keyframes=_bake_position(geometry.path, intent.duration_ms, easing),
        easing=easing,
        motion_path=geometry.path,
    )]


def _assemble_in_place(intent, subject) -> list[Track]:
    sid = subject.id
    dur = intent.duration_ms
    _, _, bw, bh = subject.bounds
    ax, ay = subject.anchor
    ease = EasingCurve("ease_in_out")
    preset = intent.preset

    def scalar(prop, fn, easing=LINEAR):
        return Track(object_id=sid, property=prop, keyframes=_bake_scalar(dur, fn), easing=easing)

    def wobble_position(fx, fy):
        frames = tuple(
            (t, (float(ax + fx(t / dur)), float(ay + fy(t / dur))))
            for t in _keyframe_times(dur)
        )
        return Track(object_id=sid, property="position", keyframes=frames)

    def approach(start, easing):
        path = line_path(start, (ax, ay))
        return Track(
            object_id=sid, property="position",
            keyframes=_bake_position(path, dur, easing), easing=easing, motion_path=path,
        )

    if preset == "appear":
        return [Track(
            object_id=sid, property="visibility",
            keyframes=((0, False), (max(1, dur // 2), True)),
        )]
    if preset == "fade_in":
        return [scalar("opacity", ease.evaluate, ease)]
    if preset == "fade_out":
        return [scalar("opacity", lambda u: 1.0 - ease.evaluate(u), ease)]
    if preset == "grow":
        return [scalar("scale", lambda u: 0.5 + 0.5 * ease.evaluate(u), ease)]
    if preset == "shrink":
        return [scalar("scale", lambda u: 1.0 - 0.5 * ease.evaluate(u), ease)]
    if preset == "pop":
        return [scalar("scale", lambda u: 1.1 * ease.evaluate(u / 0.8) if u < 0.8
                       else 1.1 - 0.1 * (u - 0.8) / 0.2, ease)]
    if preset == "pulse":
        return [scalar("scale", lambda u: 1.0 + 0.15 * abs(math.sin(2.0 * math.pi * u)))]
    if preset == "rotate":
        return [scalar("rotation", lambda u: 360.0 * u)]
    if preset == "spin":
        return [scalar("rotation", lambda u: 720.0 * ease.evaluate(u), ease)]
    if preset == "dance":
        return [scalar("rotation", lambda u: 10.0 * math.sin(2.0 * math.pi * 3.0 * u))]
    if preset == "wave":
        return [scalar("rotation", lambda u: 15.0 * math.sin(2.0 * math.pi * 2.0 * u))]
    if preset == "bounce":
        return [wobble_position(lambda u: 0.0,
                                lambda u: -0.25 * bh * abs(math.sin(2.0 * math.pi * 1.5 * u)) * (1.0 - u))]
    if preset == "gallop":
        return [wobble_position(lambda u: 0.0, lambda u: gallop_offset(u, 4, 0.15 * bh))]
    if preset == "shake":
        return [wobble_position(lambda u: 0.05 * bw * math.sin(2.0 * math.pi * 6.0 * u) * (1.0 - u),
                                lambda u: 0.0)]
    if preset == "float":
        return [wobble_position(lambda u: 0.0,
                                lambda u: -0.1 * bh * math.sin(2.0 * math.pi * u))]
    if preset == "swoosh":
        return [wobble_position(lambda u: -0.5 * bw * (1.0 - u) ** 2, lambda u: 0.0)]
    if preset == "drop":
        return [approach((ax, ay - 1.5 * bh), EasingCurve("bounce"))]
    if preset == "rise":
        return [approach((ax, ay + 1.5 * bh), ease)]
    if preset in ("slide", "fly_in"):
        return [approach((ax - 1.5 * bw, ay), ease)]
    raise AssemblyError(f"preset {preset!r} has no in-place behavior")


def assemble(intent: AnimationIntent, scene: SceneDocument, geometry: Geometry) -> AnimationDocument:
    """Build the keyframed document for a validated intent."""
    subjects = [o for o in scene.objects if o.name == intent.subject]
    if not subjects:
        raise AssemblyError(f"subject {intent.subject!r} is not a scene object")
    subject = subjects[0]

    if intent.mode == "path_follow":
        tracks = _assemble_path_follow(intent, subject, geometry)
    elif intent.mode == "orbit":
        tracks = _assemble_orbit(intent, subject, scene, geometry)
    elif intent.mode == "directional":
        tracks = _assemble_directional(intent, subject, geometry)
    elif intent.mode == "in_place":
        tracks = _assemble_in_place(intent, subject)
    else:
        raise AssemblyError(f"unknown mode {intent.mode!r}")

    return AnimationDocument(
        scene_ref=scene.scene_id,
        duration_ms=intent.duration_ms,
        tracks=tuple(tracks),
        loop=intent.loop,
    )


# ---------------------------------------------------------------------------
# canonical JSON export

def _round3(v: float) -> float:
    r = round(float(v), 3)
    return 0.0 if r == 0 else r  # avoid -0.0 leaking into output


def _keyframe_payload(track: Track) -> list:
    out = []
    for t, v in track.keyframes:
        if track.property == "position":
            out.append([int(t), [_round3(v[0]), _round3(v[1])]])
        elif track.property == "visibility":
            out.append([int(t), bool(v)])
        elif track.property == "z_order":
            out.append([int(t), int(v)])
        else:
            out.append([int(t), _round3(v)])
    return out


def _path_payload(path: BezierPath) -> dict:
    return {
        "closed": bool(path.closed),
        "segments": [
            [[_round3(x), _round3(y)] for x, y in seg] for seg in path.segments
        ],
    }


def export_animation_json(doc: AnimationDocument) -> str:
    """Canonical JSON: sorted keys, 3-decimal coordinates, integer times.
    Byte-stable across runs for identical documents."""
    payload = {
        "scene_ref": doc.scene_ref,
        "duration_ms": int(doc.duration_ms),
        "loop": bool(doc.loop),
        "tracks": [
            {
                "object_id": track.object_id,
                "property": track.property,
                "easing": track.easing.serialize(),
                "keyframes": _keyframe_payload(track),
                **(
                    {"motion_path": _path_payload(track.motion_path)}
                    if track.motion_path is not None
                    else {}
                ),
            }
            for track in doc.tracks
        ],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ": "), indent=2) + "\n"


def parse_animation_json(text: str) -> AnimationDocument:
    """Inverse of export_animation_json (export -> parse -> export is the
    identity on the exported bytes)."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AssemblyError(f"malformed animation JSON: {exc}") from exc
    tracks = []
    for entry in payload.get("tracks", []):
        prop = entry["property"]
        frames = []
        for t, v in entry["keyframes"]:
            if prop == "position":
                frames.append((int(t), (float(v[0]), float(v[1]))))
            elif prop == "visibility":
                frames.append((int(t), bool(v)))
            elif prop == "z_order":
                frames.append((int(t), int(v)))
            else:
                frames.append((int(t), float(v)))
        motion = None
        if "motion_path" in entry:
            seg = np.array(entry["motion_path"]["segments"], dtype=np.float64)
            for i in range(seg.shape[0] - 1):
                seg[i + 1, 0] = seg[i, 3]
            motion = BezierPath(segments=seg, closed=bool(entry["motion_path"]["closed"]))
        tracks.append(Track(
            object_id=entry["object_id"],
            property=prop,
            keyframes=tuple(frames),
            easing=EasingCurve.deserialize(entry["easing"]),
            motion_path=motion,
        ))
    return AnimationDocument(
        scene_ref=payload["scene_ref"],
        duration_ms=int(payload["duration_ms"]),
        tracks=tuple(tracks),
        loop=bool(payload.get("loop", False)),
    )
