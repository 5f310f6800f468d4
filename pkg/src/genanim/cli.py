"""Command line entry points: `genanim run` for one-shot synthesis and
`genanim serve` for the session HTTP protocol the preview UI drives."""

from __future__ import annotations

import argparse
import sys

from .errors import AmbiguousEntityError, GenAnimError
from .pipeline import ORBIT_RY_RATIO, PipelineOptions, run_pipeline
from .scene import load_scene


def _parse_click(text: str) -> tuple[float, float]:
    try:
        x, y = text.split(",")
        return float(x), float(y)
    except ValueError:
        raise argparse.ArgumentTypeError("--click expects x,y")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genanim")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="synthesize an animation from a prompt")
    run.add_argument("scene", help="scene JSON file")
    run.add_argument("prompt", help="natural-language animation prompt")
    run.add_argument("-o", "--out", help="write animation JSON here (default: stdout)")
    run.add_argument("--svg", help="also write an SVG preview here")
    run.add_argument("--click", type=_parse_click, help="disambiguation point x,y")
    run.add_argument("--tolerance", type=int, default=None,
                     help="flood-fill colour tolerance (default 24)")
    run.add_argument("--fit-error", type=float, default=None,
                     help="max Bezier fit error in px (default 2.0)")
    run.add_argument("--duration", type=int, default=None,
                     help="override duration in ms")
    run.add_argument("--smoothing-iterations", type=int, default=None,
                     help="Taubin smoothing iterations (default 10)")
    run.add_argument("--orbit-ratio", type=float, default=None,
                     help=f"orbit ry/rx ratio (default {ORBIT_RY_RATIO})")

    serve = sub.add_parser("serve", help="serve the session protocol over HTTP")
    serve.add_argument("--port", type=int, default=7340)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--ui", default=None, help="static asset directory for the preview UI")
    return parser


def _options_from_args(args) -> PipelineOptions:
    options = PipelineOptions()
    if args.tolerance is not None:
        options.tolerance = args.tolerance
    if args.fit_error is not None:
        options.fit_error = args.fit_error
    if args.duration is not None:
        options.duration_ms = args.duration
    if args.smoothing_iterations is not None:
        options.smoothing_iterations = args.smoothing_iterations
    if args.orbit_ratio is not None:
        options.orbit_ry_ratio = args.orbit_ratio
    return options


def run_once(args) -> int:
    try:
        scene = load_scene(args.scene)
        result = run_pipeline(scene, args.prompt, click=args.click,
                              options=_options_from_args(args))
    except AmbiguousEntityError as exc:
        print(f"[grounding] {exc}", file=sys.stderr)
        for i, cand in enumerate(exc.candidates.candidates):
            x, y, w, h = cand.bounds
            print(f"  candidate {i}: bounds x={x} y={y} w={w} h={h} score={cand.score:.3f}",
                  file=sys.stderr)
        print("rerun with --click x,y to choose", file=sys.stderr)
        return 2
    except GenAnimError as exc:
        print(f"[{exc.stage}] {exc}", file=sys.stderr)
        return 1

    for warning in result.trace.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(result.json_text)
    else:
        sys.stdout.write(result.json_text)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(result.svg_text(scene))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return run_once(args)
    if args.command == "serve":
        from .server import serve

        return serve(host=args.host, port=args.port, ui_dir=args.ui)
    return 1


if __name__ == "__main__":
    sys.exit(main())
