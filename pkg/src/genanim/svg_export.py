"""Standalone SVG 1.1 export of an AnimationDocument.

The artwork is embedded as a data URI with animated subjects' bounds
cleared; each animated object becomes a sprite group driven by SMIL. SVG
cannot animate paint order, so a z-order switch becomes two duplicated
sprite nodes (one behind the artwork, one in front) with complementary
discrete visibility windows.
"""

from __future__ import annotations

import base64
import math
import re

import numpy as np

from .assembly import AnimationDocument, Track, gallop_offset
from .errors import AssemblyError
from .pathsynth import ArcLengthSampler, path_to_svg_d
from .pngio import encode_png
from .scene import SceneDocument

_BASE_FILL = "#101018"


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _node_id(object_id: str, suffix: str) -> str:
    clean = re.sub(r"[^A-Za-z0-9_-]", "-", object_id)
    return f"ga-{clean}-{suffix}"


def _crop_box(bounds, canvas_w, canvas_h):
    x, y, w, h = bounds
    x0 = max(0, int(math.floor(x)))
    y0 = max(0, int(math.floor(y)))
    x1 = min(canvas_w, int(math.ceil(x + w)))
    y1 = min(canvas_h, int(math.ceil(y + h)))
    if x1 <= x0 or y1 <= y0:
        raise AssemblyError(f"object bounds {bounds} fall outside the canvas")
    return x0, y0, x1, y1


def _png_data_uri(arr: np.ndarray) -> str:
    return "data:image/png;base64," + base64.b64encode(encode_png(arr)).decode("ascii")


def _dur(doc: AnimationDocument) -> str:
    return f"{doc.duration_ms}ms"


def _repeat(doc: AnimationDocument) -> str:
    return "indefinite" if doc.loop else "1"


def _key_times(track: Track, duration_ms: int) -> list[float]:
    return [t / duration_ms for t, _ in track.keyframes]


def _discrete_windows(z_track: Track, duration_ms: int, front_value) -> tuple[str, str]:
    """keyTimes/values for a discrete visibility animation matching the
    spans where the z track equals front_value."""
    times = []
    values = []
    for t, v in z_track.keyframes:
        times.append(_fmt(t / duration_ms))
        values.append("visible" if v == front_value else "hidden")
    return ";".join(times), ";".join(values)


def _animate(attr: str, values: list[str], key_times: list[float], doc, *, calc="linear") -> str:
    return (
        f'<animate attributeName="{attr}" dur="{_dur(doc)}" repeatCount="{_repeat(doc)}" '
        f'fill="freeze" calcMode="{calc}" '
        f'keyTimes="{";".join(_fmt(t) for t in key_times)}" '
        f'values="{";".join(values)}"/>'
    )


def _animate_transform(kind: str, values: list[str], key_times: list[float], doc) -> str:
    return (
        f'<animateTransform attributeName="transform" type="{kind}" dur="{_dur(doc)}" '
        f'repeatCount="{_repeat(doc)}" fill="freeze" calcMode="linear" additive="sum" '
        f'keyTimes="{";".join(_fmt(t) for t in key_times)}" '
        f'values="{";".join(values)}"/>'
    )


def _position_animation(track: Track, doc: AnimationDocument, path_id: str | None) -> list[str]:
    key_times = _key_times(track, doc.duration_ms)
    if track.motion_path is not None and path_id is not None:
        # follow the shared path element; keyPoints carries the easing
        sampler = ArcLengthSampler(track.motion_path)
        key_points = [track.easing.evaluate(t) for t in key_times]
        return [
            f'<animateMotion dur="{_dur(doc)}" repeatCount="{_repeat(doc)}" fill="freeze" '
            f'calcMode="linear" keyPoints="{";".join(_fmt(p) for p in key_points)}" '
            f'keyTimes="{";".join(_fmt(t) for t in key_times)}">'
            f'<mpath href="#{path_id}"/></animateMotion>'
        ]
    values = [f"{_fmt(v[0])},{_fmt(v[1])}" for _, v in track.keyframes]
    return [_animate_transform("translate", values, key_times, doc)]


def _gallop_hop(track: Track, doc: AnimationDocument, subject_height: float) -> str:
    """Nested hop translate for gallop easing (preview nicety; keyframes in
    the document stay on the path)."""
    sampler = ArcLengthSampler(track.motion_path)
    hops = max(3, round(sampler.total_length / 120.0))
    height = 0.15 * subject_height
    key_times = _key_times(track, doc.duration_ms)
    values = [f"0,{_fmt(gallop_offset(t, hops, height))}" for t in key_times]
    return _animate_transform("translate", values, key_times, doc)


def export_svg(doc: AnimationDocument, scene: SceneDocument) -> str:
    """Standalone SVG preview of the animation over the scene artwork."""
    cw, ch = scene.canvas_width, scene.canvas_height
    by_object: dict[str, list[Track]] = {}
    for track in doc.tracks:
        by_object.setdefault(track.object_id, []).append(track)

    cleared = scene.artwork.data.copy()
    defs: list[str] = []
    back_nodes: list[str] = []
    front_nodes: list[str] = []

    for object_id, tracks in by_object.items():
        obj = scene.object_by_id(object_id)
        x0, y0, x1, y1 = _crop_box(obj.bounds, cw, ch)
        sprite = scene.artwork.data[y0:y1, x0:x1]
        cleared[y0:y1, x0:x1, 3] = 0  # hole where the static subject sat

        ax, ay = obj.anchor
        position = next((t for t in tracks if t.property == "position"), None)
        z_track = next((t for t in tracks if t.property == "z_order"), None)

        path_id = None
        if position is not None and position.motion_path is not None:
            path_id = _node_id(object_id, "path")
            defs.append(
                f'<path id="{path_id}" d="{path_to_svg_d(position.motion_path)}" fill="none"/>'
            )

        anims: list[str] = []
        if position is not None:
            anims.extend(_position_animation(position, doc, path_id))
        else:
            # static sprite pinned at its anchor
            anims.append(f'<animateTransform attributeName="transform" type="translate" '
                         f'dur="{_dur(doc)}" repeatCount="{_repeat(doc)}" fill="freeze" '
                         f'calcMode="discrete" keyTimes="0;1" '
                         f'values="{_fmt(ax)},{_fmt(ay)};{_fmt(ax)},{_fmt(ay)}"/>')

        inner_anims: list[str] = []
        for track in tracks:
            key_times = _key_times(track, doc.duration_ms)
            if track.property == "opacity":
                inner_anims.append(_animate(
                    "opacity", [_fmt(v) for _, v in track.keyframes], key_times, doc))
            elif track.property == "scale":
                inner_anims.append(_animate_transform(
                    "scale", [_fmt(v) for _, v in track.keyframes], key_times, doc))
            elif track.property == "rotation":
                inner_anims.append(_animate_transform(
                    "rotate", [_fmt(v) for _, v in track.keyframes], key_times, doc))
            elif track.property == "visibility" and z_track is None and len(track.keyframes) > 1:
                inner_anims.append(_animate(
                    "visibility",
                    ["visible" if v else "hidden" for _, v in track.keyframes],
                    key_times, doc, calc="discrete"))
        if position is not None and position.easing.kind == "gallop" \
                and position.motion_path is not None:
            inner_anims.append(_gallop_hop(position, doc, obj.bounds[3]))

        image = (
            f'<image x="{_fmt(x0 - ax)}" y="{_fmt(y0 - ay)}" '
            f'width="{x1 - x0}" height="{y1 - y0}" href="{_png_data_uri(sprite)}"/>'
        )
        body = "".join(anims) + f"<g>{''.join(inner_anims)}{image}</g>"

        if z_track is not None:
            z_values = [v for _, v in z_track.keyframes]
            front_value = max(z_values)
            kt, vals_front = _discrete_windows(z_track, doc.duration_ms, front_value)
            vals_back = ";".join(
                "hidden" if v == "visible" else "visible" for v in vals_front.split(";")
            )
            vis = (
                f'<animate attributeName="visibility" dur="{_dur(doc)}" '
                f'repeatCount="{_repeat(doc)}" fill="freeze" calcMode="discrete" '
                'keyTimes="{kt}" values="{vals}"/>'
            )
            back_nodes.append(
                f'<g id="{_node_id(object_id, "back")}">'
                + vis.format(kt=kt, vals=vals_back) + body + "</g>"
            )
            front_nodes.append(
                f'<g id="{_node_id(object_id, "front")}">'
                + vis.format(kt=kt, vals=vals_front) + body + "</g>"
            )
        else:
            front_nodes.append(f'<g id="{_node_id(object_id, "node")}">{body}</g>')

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{cw}" height="{ch}" '
        f'viewBox="0 0 {cw} {ch}">',
        f'<rect width="{cw}" height="{ch}" fill="{_BASE_FILL}"/>',
        "<defs>" + "".join(defs) + "</defs>",
        *back_nodes,
        f'<image x="0" y="0" width="{cw}" height="{ch}" href="{_png_data_uri(cleared)}"/>',
        *front_nodes,
        "</svg>",
    ]
    return "\n".join(lines) + "\n"
