"""End-to-end orchestration shared by the CLI and serve mode, so both
always produce byte-identical outputs for the same inputs."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

import numpy as np

from .assembly import (
    AnimationDocument,
    Geometry,
    assemble,
    directional_start,
    export_animation_json,
    line_path,
)
from .errors import AmbiguousEntityError, GenAnimError, PathSynthError
from .grounding import (
    DEFAULT_TOLERANCE,
    CandidateSet,
    SegmenterConfig,
    disambiguate,
    propose_candidates,
)
from .intent import AnimationIntent, IntentParseTrace, RemoteBackendConfig, parse_prompt
from .pathsynth import (
    DEFAULT_FIT_ERROR,
    DEFAULT_SMOOTH_ITERATIONS,
    project_motion,
    split_path_by_mask,
    synth_ellipse,
    synthesize_mask_path,
)
from .scene import SceneDocument
from .svg_export import export_svg

ORBIT_RY_RATIO = 0.45  # flattened pseudo-3D orbit look


@dataclass
class PipelineOptions:
    tolerance: int = DEFAULT_TOLERANCE
    fit_error: float = DEFAULT_FIT_ERROR
    smoothing_iterations: int = DEFAULT_SMOOTH_ITERATIONS
    orbit_ry_ratio: float = ORBIT_RY_RATIO
    duration_ms: int | None = None  # overrides the parsed intent
    environ: dict = field(default_factory=lambda: os.environ)


@dataclass
class PipelineResult:
    intent: AnimationIntent
    trace: IntentParseTrace
    candidates: CandidateSet | None
    geometry: Geometry
    document: AnimationDocument
    json_text: str

    def svg_text(self, scene: SceneDocument) -> str:
        return export_svg(self.document, scene)


def needs_grounding(intent: AnimationIntent) -> bool:
    return intent.mode in ("path_follow", "orbit")


def ground_entity(
    scene: SceneDocument,
    intent: AnimationIntent,
    options: PipelineOptions,
    warnings: list[str],
) -> CandidateSet:
    segmenter = SegmenterConfig.from_env(options.environ)
    cset = propose_candidates(
        scene, intent.entity, tolerance=options.tolerance,
        segmenter=segmenter, warnings=warnings,
    )
    if not cset.candidates:
        raise AmbiguousEntityError(
            f"no scene object matches entity {intent.entity!r}", cset
        )
    return cset


def build_geometry(
    scene: SceneDocument,
    intent: AnimationIntent,
    candidates: CandidateSet | None,
    options: PipelineOptions,
) -> Geometry:
    subject = next((o for o in scene.objects if o.name == intent.subject), None)
    if subject is None:
        raise PathSynthError(f"subject {intent.subject!r} is not a scene object")

    if intent.mode == "path_follow":
        mask = candidates.resolved_mask
        path, widths = synthesize_mask_path(
            mask, smoothing_iterations=options.smoothing_iterations,
            max_error=options.fit_error,
        )
        return Geometry(path=path, widths=widths)

    if intent.mode == "orbit":
        mask = candidates.resolved_mask
        occluder_id = candidates.candidates[candidates.resolved].object_id
        if occluder_id is None:
            raise PathSynthError("resolved mask has no associated scene object")
        entity_obj = scene.object_by_id(occluder_id)
        rx = float(np.hypot(
            subject.anchor[0] - entity_obj.anchor[0],
            subject.anchor[1] - entity_obj.anchor[1],
        ))
        if rx <= 1e-9:
            raise PathSynthError("subject and entity anchors coincide; no orbit radius")
        ellipse = synth_ellipse(entity_obj.anchor, rx, options.orbit_ry_ratio * rx, 0.0)
        split = split_path_by_mask(ellipse, mask)
        return Geometry(path=ellipse, split=split, occluder_id=occluder_id)

    if intent.mode == "directional":
        start = directional_start(subject, intent.direction, (scene.canvas_width, scene.canvas_height))
        line = line_path(start, subject.anchor)
        projected = project_motion(
            line, subject.transform, plane_depth=0.0,
            canvas=(scene.canvas_width, scene.canvas_height), pivot=subject.anchor,
        )
        return Geometry(path=projected)

    return Geometry()  # in_place needs no geometry


def run_pipeline(
    scene: SceneDocument,
    prompt: str,
    click: tuple[float, float] | None = None,
    options: PipelineOptions | None = None,
) -> PipelineResult:
    """Parse, ground, synthesize and assemble in one call.

    Raises AmbiguousEntityError when grounding needs a click and none was
    given.
    """
    options = options or PipelineOptions()
    remote = RemoteBackendConfig.from_env(options.environ)
    intent, trace = parse_prompt(prompt, scene, remote=remote)
    if options.duration_ms is not None:
        intent = replace(intent, duration_ms=options.duration_ms)

    candidates = None
    if needs_grounding(intent):
        candidates = ground_entity(scene, intent, options, trace.warnings)
        if candidates.resolved is None:
            if click is None:
                raise AmbiguousEntityError(
                    f"entity {intent.entity!r} is ambiguous; provide a click",
                    candidates,
                )
            candidates = disambiguate(candidates, click, scene.artwork, options.tolerance)

    geometry = build_geometry(scene, intent, candidates, options)
    document = assemble(intent, scene, geometry)
    return PipelineResult(
        intent=intent,
        trace=trace,
        candidates=candidates,
        geometry=geometry,
        document=document,
        json_text=export_animation_json(document),
    )
