"""genanim: prompt-driven motion-path synthesis for scene documents."""

from .assembly import (
    AnimationDocument,
    EasingCurve,
    Geometry,
    Track,
    assemble,
    export_animation_json,
    gallop_offset,
    parse_animation_json,
)
from .errors import (
    AmbiguousEntityError,
    AssemblyError,
    GenAnimError,
    GroundingError,
    IntentError,
    PathSynthError,
    SceneError,
)
from .grounding import (
    CandidateSet,
    Mask,
    SegmenterConfig,
    disambiguate,
    load_mask,
    propose_candidates,
    query_external_segmenter,
    segment_by_point,
)
from .intent import (
    AnimationIntent,
    IntentParseTrace,
    PRESETS,
    RemoteBackendConfig,
    parse_prompt,
    query_remote_backend,
    validate_intent,
)
from .pipeline import PipelineOptions, PipelineResult, run_pipeline
from .scene import (
    Raster,
    SceneDocument,
    SceneObject,
    TransformMatrix,
    find_objects_by_name,
    load_scene,
    save_scene,
)
from .svg_export import export_svg

__version__ = "0.1.0"
