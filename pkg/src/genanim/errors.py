"""Exception hierarchy. Every error carries the pipeline stage it came from
so the CLI can prefix messages uniformly ("[grounding] ...")."""


class GenAnimError(Exception):
    stage = "genanim"


class SceneError(GenAnimError):
    stage = "scene"


class IntentError(GenAnimError):
    stage = "intent"


class GroundingError(GenAnimError):
    stage = "grounding"


class PathSynthError(GenAnimError):
    stage = "pathsynth"


class AssemblyError(GenAnimError):
    stage = "assembly"


class AmbiguousEntityError(GroundingError):
    """Raised by the orchestrator when grounding needs a disambiguation click."""

    def __init__(self, message, candidates):
        super().__init__(message)
        self.candidates = candidates
