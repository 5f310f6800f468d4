#!/usr/bin/env python3
"""Regenerate the committed fixture scenes deterministically.

Backgrounds are fully transparent so SVG previews can layer duplicated
sprite nodes behind the artwork; every object is a flat colour so the
tolerance flood fill segments it exactly.
"""

import json
import math
import os

import numpy as np
from PIL import Image, ImageDraw

HERE = os.path.dirname(os.path.abspath(__file__))

IDENTITY = [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]


def save_png(name, arr):
    mode = "RGBA" if arr.ndim == 3 else "L"
    Image.fromarray(arr, mode=mode).save(os.path.join(HERE, name), format="PNG")


def save_scene(name, payload):
    with open(os.path.join(HERE, name), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def stamp_ribbon(arr, xs, ys, radius, colour):
    h, w = arr.shape[:2]
    for cx, cy in zip(xs, ys):
        x0, x1 = max(0, int(cx - radius) - 1), min(w, int(cx + radius) + 2)
        y0, y1 = max(0, int(cy - radius) - 1), min(h, int(cy + radius) + 2)
        yy, xx = np.mgrid[y0:y1, x0:x1]
        hit = (xx + 0.5 - cx) ** 2 + (yy + 0.5 - cy) ** 2 <= radius * radius
        arr[y0:y1, x0:x1][hit] = colour


def disc(arr, cx, cy, radius, colour):
    h, w = arr.shape[:2]
    yy, xx = np.mgrid[0:h, 0:w]
    arr[(xx + 0.5 - cx) ** 2 + (yy + 0.5 - cy) ** 2 <= radius * radius] = colour


def bbox_of(mask):
    ys, xs = np.nonzero(mask)
    return [int(xs.min()), int(ys.min()),
            int(xs.max() - xs.min() + 1), int(ys.max() - ys.min() + 1)]


def hills_centerline(x):
    return 500.0 + 120.0 * math.sin(x / 140.0)


def make_mario_hills():
    w, h = 1024, 768
    art = np.zeros((h, w, 4), np.uint8)

    xs = np.linspace(60.0, 964.0, 1810)
    ys = np.array([hills_centerline(x) for x in xs])
    stamp_ribbon(art, xs, ys, 18.0, np.array([64, 152, 72, 255], np.uint8))
    hills_fg = art[:, :, 3] > 0
    hills_bounds = bbox_of(hills_fg)

    # Mario: a flat-colour figure well clear of the ribbon
    art[380:444, 80:128] = (206, 48, 42, 255)
    art[380:396, 88:120] = (206, 48, 42, 255)

    save_png("mario_hills.png", art)
    save_png("hills_mask.png", (hills_fg * np.uint8(255)))

    anchor_x = 512.0
    anchor_y = round(hills_centerline(anchor_x), 1)
    save_scene("mario_hills.scene.json", {
        "id": "mario_hills",
        "canvas": {"width": w, "height": h},
        "artwork": "mario_hills.png",
        "objects": [
            {"id": "mario", "name": "Mario", "bounds": [80, 380, 48, 64],
             "anchor": [104, 440], "z_order": 2, "transform": IDENTITY,
             "tags": ["character"]},
            {"id": "hills", "name": "hills", "bounds": hills_bounds,
             "anchor": [anchor_x, anchor_y], "z_order": 1, "transform": IDENTITY},
        ],
    })


def make_earth_moon():
    w, h = 800, 600
    art = np.zeros((h, w, 4), np.uint8)
    disc(art, 400.0, 270.0, 130.0, np.array([52, 110, 205, 255], np.uint8))
    earth_bounds = bbox_of(art[:, :, 3] > 0)
    disc(art, 700.0, 340.0, 36.0, np.array([188, 188, 196, 255], np.uint8))
    save_png("earth_moon.png", art)
    save_scene("earth_moon.scene.json", {
        "id": "earth_moon",
        "canvas": {"width": w, "height": h},
        "artwork": "earth_moon.png",
        "objects": [
            # anchor sits below the disc centre so the flattened orbit dips
            # behind the upper limb only (one occluded arc per revolution)
            {"id": "earth", "name": "Earth", "bounds": earth_bounds,
             "anchor": [400, 340], "z_order": 2, "transform": IDENTITY},
            {"id": "moon", "name": "Moon", "bounds": [664, 304, 72, 72],
             "anchor": [700, 340], "z_order": 3, "transform": IDENTITY},
        ],
    })


def make_vision():
    w, h = 800, 600
    img = Image.new("RGBA", (w, h), (0, 0, 0, 0))
    draw = ImageDraw.Draw(img)
    cx, cy = 400.0, 240.0
    hw, hh = 140.0, 48.0
    theta = math.radians(45.0)
    corners = []
    for dx, dy in ((-hw, -hh), (hw, -hh), (hw, hh), (-hw, hh)):
        rx = dx * math.cos(theta) - dy * math.sin(theta)
        ry = dx * math.sin(theta) + dy * math.cos(theta)
        corners.append((cx + rx, cy + ry))
    draw.polygon(corners, fill=(235, 214, 96, 255))
    art = np.asarray(img, np.uint8).copy()
    bounds = bbox_of(art[:, :, 3] > 0)
    save_png("vision.png", art)

    c, s = math.cos(theta), math.sin(theta)
    rot_z = [c, s, 0, 0, -s, c, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]  # column-major
    save_scene("vision.scene.json", {
        "id": "vision",
        "canvas": {"width": w, "height": h},
        "artwork": "vision.png",
        "objects": [
            {"id": "vision-text", "name": "The Vision", "bounds": bounds,
             "anchor": [cx, cy], "z_order": 1, "transform": rot_z},
        ],
    })


def make_two_paths():
    w, h = 400, 300
    art = np.zeros((h, w, 4), np.uint8)
    xs = np.linspace(30.0, 370.0, 700)
    upper = 90.0 + 18.0 * np.sin(xs / 60.0)
    lower = 210.0 + 18.0 * np.cos(xs / 75.0)
    stamp_ribbon(art, xs, upper, 9.0, np.array([70, 140, 200, 255], np.uint8))
    upper_bounds = bbox_of(art[:, :, 3] > 0)
    before = art[:, :, 3] > 0
    stamp_ribbon(art, xs, lower, 9.0, np.array([200, 120, 70, 255], np.uint8))
    lower_bounds = bbox_of((art[:, :, 3] > 0) & ~before)
    disc(art, 40.0, 40.0, 14.0, np.array([240, 240, 240, 255], np.uint8))
    save_png("two_paths.png", art)
    save_scene("two_paths.scene.json", {
        "id": "two_paths",
        "canvas": {"width": w, "height": h},
        "artwork": "two_paths.png",
        "objects": [
            {"id": "ball", "name": "ball", "bounds": [26, 26, 28, 28],
             "anchor": [40, 40], "z_order": 3, "transform": IDENTITY},
            {"id": "upper", "name": "upper path", "bounds": upper_bounds,
             "anchor": [200, round(90.0 + 18.0 * math.sin(200.0 / 60.0), 1)],
             "z_order": 1, "transform": IDENTITY},
            {"id": "lower", "name": "lower path", "bounds": lower_bounds,
             "anchor": [200, round(210.0 + 18.0 * math.cos(200.0 / 75.0), 1)],
             "z_order": 2, "transform": IDENTITY},
        ],
    })


if __name__ == "__main__":
    make_mario_hills()
    make_earth_moon()
    make_vision()
    make_two_paths()
    print("fixtures written to", HERE)
