#!/usr/bin/env python3
"""Regenerate tests/fixtures/golden_docs.json from the engine's public
surfaces: documents come from the `genanim run` CLI, expected playback
positions from the engine's arc-length sampler."""

import json
import os
import subprocess
import sys
import tempfile

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(os.path.dirname(HERE))

GOLDENS = [
    ("mario", "mario_hills.scene.json", "Move Mario along the hilly path"),
    ("orbit", "earth_moon.scene.json", "Make the Moon orbit around Earth"),
    ("fly_in", "vision.scene.json", "Fly in The Vision text from the left"),
]


def main():
    from genanim.assembly import parse_animation_json
    from genanim.pathsynth import ArcLengthSampler

    out = {}
    with tempfile.TemporaryDirectory() as tmp:
        for name, scene, prompt in GOLDENS:
            doc_path = os.path.join(tmp, f"{name}.json")
            subprocess.run(
                [sys.executable, "-m", "genanim.cli", "run",
                 os.path.join(ROOT, "fixtures", scene), prompt, "-o", doc_path],
                check=True, cwd=ROOT,
            )
            text = open(doc_path).read()
            doc = parse_animation_json(text)
            position = next(t for t in doc.tracks if t.property == "position")
            sampler = ArcLengthSampler(position.motion_path)
            expected = []
            for i in range(10):
                u = i / 10.0
                t_ms = u * doc.duration_ms
                pos = sampler.point_at(position.easing.evaluate(u))
                expected.append([t_ms, float(pos[0]), float(pos[1])])
            out[name] = {"doc": json.loads(text), "expected_positions": expected}

    target = os.path.join(HERE, "..", "tests", "fixtures", "golden_docs.json")
    with open(target, "w") as fh:
        json.dump(out, fh)
    print("wrote", os.path.normpath(target))


if __name__ == "__main__":
    main()
