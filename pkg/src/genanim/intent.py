"""Prompt -> AnimationIntent extraction.

The default backend is a deterministic rule parser (pure function of the
prompt and the scene's object names). An optional remote backend can be
configured through GENANIM_LLM_URL / GENANIM_LLM_KEY; its output must pass
validate_intent, and any failure falls back to the rules with a warning
recorded in the parse trace.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from ._http import post_json
from .errors import IntentError
from .scene import SceneDocument, find_objects_by_name, name_match_score

PRESETS = (
    "appear", "fade_in", "fade_out", "fly_in", "grow", "shrink", "rotate",
    "bounce", "dance", "gallop", "pulse", "swoosh", "wave", "orbit",
    "custom_path", "spin", "drop", "rise", "slide", "pop", "shake", "float",
)
MODES = ("path_follow", "orbit", "directional", "in_place")
DIRECTIONS = ("left", "right", "top", "bottom")

DEFAULT_DURATION_MS = 2000
DURATION_MIN_MS = 100
DURATION_MAX_MS = 600_000
MAX_PROMPT_CHARS = 2000

# Authored template for remote backends (the wire protocol only carries the
# user prompt and scene names; conforming services may embed this verbatim).
SYSTEM_PROMPT_TEMPLATE = """\
You convert one animation request into bare JSON, no prose.
Schema: {{"subject": str, "entity": str|null, "mode": "path_follow"|"orbit"|"directional"|"in_place",
"preset": one of {presets}, "direction": "left"|"right"|"top"|"bottom"|null,
"duration_ms": int, "loop": bool}}
Scene object names: {scene_names}
Examples:
  "Move Mario along the hilly path" -> {{"subject": "Mario", "entity": "hilly path", "mode": "path_follow", "preset": "gallop", "direction": null, "duration_ms": 2000, "loop": false}}
  "Make the Moon orbit around Earth" -> {{"subject": "Moon", "entity": "Earth", "mode": "orbit", "preset": "orbit", "direction": null, "duration_ms": 2000, "loop": true}}
  "Fly in The Vision text from the left" -> {{"subject": "The Vision", "entity": null, "mode": "directional", "preset": "fly_in", "direction": "left", "duration_ms": 2000, "loop": false}}
"""


@dataclass(frozen=True)
class AnimationIntent:
    subject: str
    mode: str
    preset: str
    entity: str | None = None
    direction: str | None = None
    duration_ms: int = DEFAULT_DURATION_MS
    loop: bool = False

    def __post_init__(self):
        _check_intent_fields(
            subject=self.subject, mode=self.mode, preset=self.preset,
            entity=self.entity, direction=self.direction,
            duration_ms=self.duration_ms, loop=self.loop,
        )

    def to_json(self) -> str:
        payload = {
            "subject": self.subject,
            "entity": self.entity,
            "mode": self.mode,
            "preset": self.preset,
            "direction": self.direction,
            "duration_ms": self.duration_ms,
            "loop": self.loop,
        }
        return json.dumps(payload, sort_keys=True)


@dataclass
class IntentParseTrace:
    matched_rules: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    backend: str = "rules"


@dataclass(frozen=True)
class RemoteBackendConfig:
    url: str
    key: str = ""
    timeout: float = 10.0

    @classmethod
    def from_env(cls, environ) -> "RemoteBackendConfig | None":
        url = environ.get("GENANIM_LLM_URL")
        if not url:
            return None
        return cls(url=url, key=environ.get("GENANIM_LLM_KEY", ""))


def _check_intent_fields(*, subject, mode, preset, entity, direction, duration_ms, loop):
    if not isinstance(subject, str) or not subject.strip():
        raise IntentError("subject: must be a non-empty string")
    if mode not in MODES:
        raise IntentError(f"mode: {mode!r} is not one of {list(MODES)}")
    if preset not in PRESETS:
        raise IntentError(
            f"preset: {preset!r} unknown; valid presets: {', '.join(PRESETS)}"
        )
    if entity is not None and (not isinstance(entity, str) or not entity.strip()):
        raise IntentError("entity: must be a non-empty string when present")
    if mode in ("path_follow", "orbit") and entity is None:
        raise IntentError(f"mode {mode} requires entity")
    if direction is not None and direction not in DIRECTIONS:
        raise IntentError(f"direction: {direction!r} is not one of {list(DIRECTIONS)}")
    if mode == "directional" and direction is None:
        raise IntentError("mode directional requires direction")
    if not isinstance(duration_ms, int) or isinstance(duration_ms, bool):
        raise IntentError("duration_ms: must be an integer")
    if not (DURATION_MIN_MS <= duration_ms <= DURATION_MAX_MS):
        raise IntentError(
            f"duration_ms: {duration_ms} outside [{DURATION_MIN_MS}, {DURATION_MAX_MS}]"
        )
    if not isinstance(loop, bool):
        raise IntentError("loop: must be a boolean")


def validate_intent(raw: str) -> AnimationIntent:
    """Parse and validate a JSON intent. Unknown fields are rejected."""
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise IntentError(f"malformed JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise IntentError("intent must be a JSON object")
    known = {"subject", "entity", "mode", "preset", "direction", "duration_ms", "loop"}
    unknown = sorted(set(payload) - known)
    if unknown:
        raise IntentError(f"unknown fields: {', '.join(unknown)}")
    for key in ("subject", "mode", "preset"):
        if key not in payload:
            raise IntentError(f"{key}: missing")
    mode = payload["mode"]
    duration = payload.get("duration_ms", DEFAULT_DURATION_MS)
    loop = payload.get("loop", mode == "orbit")
    return AnimationIntent(
        subject=payload["subject"],
        entity=payload.get("entity"),
        mode=mode,
        preset=payload["preset"],
        direction=payload.get("direction"),
        duration_ms=duration,
        loop=loop,
    )


# ---------------------------------------------------------------------------
# rule backend

_PATH_VERBS = ("move", "walk", "run", "gallop", "go", "march", "travel")
_ORBIT_VERBS = ("orbit", "circle", "revolve")
_DIRECTIONAL_PHRASES = ("fly in", "slide in", "enter")
_INPLACE_PRESETS = {
    "fade in": "fade_in", "fade out": "fade_out", "fade": "fade_in",
    "appear": "appear", "grow": "grow", "shrink": "shrink",
    "rotate": "rotate", "spin": "spin", "bounce": "bounce",
    "dance": "dance", "pulse": "pulse", "swoosh": "swoosh", "wave": "wave",
    "pop": "pop", "shake": "shake", "float": "float", "drop": "drop",
    "rise": "rise", "slide": "slide",
}
_ARTICLES = ("the", "a", "an")
_DURATION_RE = re.compile(
    r"(\d+(?:\.\d+)?)\s*(ms|msecs?|milliseconds?|s|secs?|seconds?)\b", re.IGNORECASE
)
_LOOP_WORDS = ("loop", "looping", "repeat", "repeatedly", "forever", "continuously")


def _word_find(text: str, phrase: str) -> int:
    """Index of phrase in text at word boundaries, or -1."""
    m = re.search(rf"(?<![a-z0-9]){re.escape(phrase)}(?![a-z0-9])", text)
    return m.start() if m else -1


def _strip_articles(text: str) -> str:
    tokens = text.split()
    while tokens and tokens[0].casefold() in _ARTICLES:
        tokens = tokens[1:]
    return " ".join(tokens)


def _find_subject(scene: SceneDocument, head: str, trace: IntentParseTrace) -> str:
    low = head.casefold()
    hits = []
    for obj in scene.objects:
        name = " ".join(obj.name.casefold().split())
        if name and _word_find(low, name) >= 0:
            hits.append((len(name), obj.id, obj.name))
    if hits:
        hits.sort(key=lambda t: (-t[0], t[1]))
        trace.matched_rules.append("subject:longest-name-in-prompt")
        return hits[0][2]
    # No literal occurrence: try fuzzy resolution of the stripped head.
    stripped = [
        t for t in low.split()
        if t not in _ARTICLES and t not in _PATH_VERBS and t not in _ORBIT_VERBS
        and t not in ("make", "let", "in", "from", "text", "please")
    ]
    if stripped:
        matches = find_objects_by_name(scene, " ".join(stripped))
        if matches:
            trace.matched_rules.append("subject:fuzzy-head-match")
            trace.warnings.append(
                f"subject resolved fuzzily to {matches[0].name!r}"
            )
            return matches[0].name
    nearest = sorted(
        scene.objects,
        key=lambda o: -name_match_score(head, o.name),
    )[:3]
    names = ", ".join(repr(o.name) for o in nearest)
    raise IntentError(f"cannot resolve animation subject in {head!r}; nearest names: {names}")


def _extract_duration(prompt: str, trace: IntentParseTrace) -> int:
    m = _DURATION_RE.search(prompt)
    if not m:
        return DEFAULT_DURATION_MS
    value = float(m.group(1))
    unit = m.group(2).lower()
    ms = value if unit.startswith("m") else value * 1000.0
    ms = int(round(ms))
    trace.matched_rules.append("duration:number-unit")
    if ms < DURATION_MIN_MS:
        trace.warnings.append(f"duration {ms} ms clamped to {DURATION_MIN_MS}")
        ms = DURATION_MIN_MS
    elif ms > DURATION_MAX_MS:
        trace.warnings.append(f"duration {ms} ms clamped to {DURATION_MAX_MS}")
        ms = DURATION_MAX_MS
    return ms


def _rule_parse(prompt: str, scene: SceneDocument, trace: IntentParseTrace) -> AnimationIntent:
    text = " ".join(prompt.split()).rstrip(".!?")
    low = text.casefold()

    duration = _extract_duration(low, trace)
    loop = any(_word_find(low, w) >= 0 for w in _LOOP_WORDS)

    # directional: fly in / slide in / enter [from the <side>]
    for phrase in _DIRECTIONAL_PHRASES:
        pos = _word_find(low, phrase)
        if pos < 0:
            continue
        trace.matched_rules.append(f"verb:directional:{phrase.replace(' ', '-')}")
        m = re.search(r"from( the)? (left|right|top|bottom)\b", low)
        if m:
            direction = m.group(2)
            trace.matched_rules.append(f"direction:from-{direction}")
            head = text[: _word_find(low, "from")]
        else:
            direction = "left"
            trace.warnings.append("no 'from <side>' found; defaulting direction to left")
            head = text
        subject = _find_subject(scene, head, trace)
        return AnimationIntent(
            subject=subject, mode="directional", preset="fly_in",
            direction=direction, duration_ms=duration, loop=loop,
        )

    # orbit: orbit/circle/revolve [around <entity>]
    for verb in _ORBIT_VERBS:
        pos = _word_find(low, verb)
        if pos < 0:
            continue
        trace.matched_rules.append(f"verb:orbit:{verb}")
        around = _word_find(low, "around")
        if around >= 0:
            entity = _strip_articles(text[around + len("around"):].strip())
            head = text[:around]
        else:
            entity = _strip_articles(text[pos + len(verb):].strip())
            head = text[:pos]
            trace.warnings.append("no 'around' found; entity taken after the orbit verb")
        if not entity:
            raise IntentError("orbit prompt names no reference entity")
        trace.matched_rules.append("entity:after-around")
        subject = _find_subject(scene, head, trace)
        return AnimationIntent(
            subject=subject, entity=entity, mode="orbit", preset="orbit",
            duration_ms=duration, loop=True,
        )

    # path follow: <move verb> ... along/over <entity>
    marker = None
    for word in ("along", "over"):
        if _word_find(low, word) >= 0:
            marker = word
            break
    if marker is not None and any(_word_find(low, v) >= 0 for v in _PATH_VERBS):
        trace.matched_rules.append(f"verb:path-follow:{marker}")
        mpos = _word_find(low, marker)
        entity = _strip_articles(text[mpos + len(marker):].strip())
        if not entity:
            raise IntentError(f"nothing follows {marker!r} to name the path entity")
        trace.matched_rules.append(f"entity:after-{marker}")
        subject = _find_subject(scene, text[:mpos], trace)
        subject_obj = next(
            (o for o in scene.objects if o.name == subject), None
        )
        if subject_obj is not None and "character" in subject_obj.tags:
            preset = "gallop"
            trace.matched_rules.append("preset:gallop-for-character")
        else:
            preset = "custom_path"
            trace.matched_rules.append("preset:custom-path")
        return AnimationIntent(
            subject=subject, entity=entity, mode="path_follow", preset=preset,
            duration_ms=duration, loop=loop,
        )

    # in-place presets (two-word phrases before single verbs)
    for phrase in sorted(_INPLACE_PRESETS, key=len, reverse=True):
        if _word_find(low, phrase) >= 0:
            preset = _INPLACE_PRESETS[phrase]
            trace.matched_rules.append(f"verb:in-place:{phrase.replace(' ', '-')}")
            head = text[: _word_find(low, phrase)] or text
            subject = _find_subject(scene, text, trace)
            return AnimationIntent(
                subject=subject, mode="in_place", preset=preset,
                duration_ms=duration, loop=loop,
            )

    raise IntentError(f"no recognizable action verb in {text!r}")


def query_remote_backend(prompt: str, scene_names: list[str], config: RemoteBackendConfig) -> str:
    """POST the prompt to the remote intent service and return its raw text.

    Callers must pipe the result through validate_intent and fall back to
    the rule backend on any failure.
    """
    payload = {"prompt": prompt, "scene_names": scene_names, "schema_version": 1}
    headers = {}
    if config.key:
        headers["Authorization"] = f"Bearer {config.key}"
    return post_json(config.url, payload, headers=headers, timeout=config.timeout)


def parse_prompt(
    prompt: str,
    scene: SceneDocument,
    remote: RemoteBackendConfig | None = None,
) -> tuple[AnimationIntent, IntentParseTrace]:
    """Turn a natural-language prompt into a validated AnimationIntent."""
    if prompt is None or not prompt.strip():
        raise IntentError("empty prompt")
    if len(prompt) > MAX_PROMPT_CHARS:
        raise IntentError(f"prompt longer than {MAX_PROMPT_CHARS} characters")
    prompt = prompt.strip()

    trace = IntentParseTrace()
    if remote is not None:
        try:
            raw = query_remote_backend(prompt, [o.name for o in scene.objects], remote)
            intent = validate_intent(raw)
            trace.backend = "remote"
            trace.matched_rules.append("remote-backend")
            return intent, trace
        except Exception as exc:  # fallback mandatory by contract
            trace.warnings.append(f"remote backend failed ({exc}); using rules")

    intent = _rule_parse(prompt, scene, trace)
    trace.backend = "rules"
    return intent, trace
