from .clients import (
    CannedClient,
    FailingClient,
    MockGenerationClient,
    TagTranscriptClient,
    gradient_panorama_png,
    sine_wav,
    snippets_from_profile,
)
from .jobs import (
    FINAL_PRESET,
    PANORAMA_FINAL,
    PANORAMA_PREVIEW,
    PREVIEW_PRESET,
    SCRIPT_SNIPPETS,
    TTS,
    GenerationJob,
    JobClientError,
    JobResult,
    panorama_job,
    snippet_job,
    submit_job,
    tts_job,
)
from .profile import GroundingViolationError, SafePlaceProfile, check_grounding, extract_profile
from .snippets import LanguageRules, Snippet, Violation, default_rules, make_snippet, validate_snippet
from .template import (
    GuidanceScript,
    GuidanceTemplate,
    Placeholder,
    TemplateParseError,
    UnfilledModalityError,
    bundled_template,
    bundled_template_text,
    fill_template,
    parse_template,
    serialize_template,
)

__all__ = [
    "CannedClient",
    "FailingClient",
    "FINAL_PRESET",
    "GenerationJob",
    "GroundingViolationError",
    "GuidanceScript",
    "GuidanceTemplate",
    "JobClientError",
    "JobResult",
    "LanguageRules",
    "MockGenerationClient",
    "PANORAMA_FINAL",
    "PANORAMA_PREVIEW",
    "PREVIEW_PRESET",
    "Placeholder",
    "SCRIPT_SNIPPETS",
    "SafePlaceProfile",
    "Snippet",
    "TTS",
    "TagTranscriptClient",
    "TemplateParseError",
    "UnfilledModalityError",
    "Violation",
    "bundled_template",
    "bundled_template_text",
    "check_grounding",
    "default_rules",
    "extract_profile",
    "fill_template",
    "gradient_panorama_png",
    "make_snippet",
    "panorama_job",
    "parse_template",
    "serialize_template",
    "sine_wav",
    "snippet_job",
    "snippets_from_profile",
    "submit_job",
    "tts_job",
    "validate_snippet",
]
