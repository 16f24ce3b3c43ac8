"""Generation-job specs for the external generative services.

Model inference itself lives behind client seams; what matters here is
that jobs carry the two panorama parameter presets verbatim and that
results reference stored assets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PANORAMA_PREVIEW = "panorama_preview"
PANORAMA_FINAL = "panorama_final"
SCRIPT_SNIPPETS = "script_snippets"
TTS = "tts"

JOB_KINDS = (PANORAMA_PREVIEW, PANORAMA_FINAL, SCRIPT_SNIPPETS, TTS)

PREVIEW_PRESET = {"size": "1024x512", "steps": 20, "sampler": "LCM", "cfg": 7}
FINAL_PRESET = {"size": "2048x1024", "steps": 30, "sampler": "DPM++ 2M Karras", "cfg": 7}

_PRESETS = {PANORAMA_PREVIEW: PREVIEW_PRESET, PANORAMA_FINAL: FINAL_PRESET}


class JobClientError(RuntimeError):
    """Client failure; retriable, echoes the job for resubmission."""

    def __init__(self, message: str, job: "GenerationJob"):
        super().__init__(message)
        self.retryable = True
        self.job = job


@dataclass(frozen=True)
class GenerationJob:
    kind: str
    payload: object  # prompt string or profile dict, per kind
    params: dict = field(default_factory=dict)
    sketch_ref: str | None = None  # optional sketch-conditioning asset

    def __post_init__(self):
        if self.kind not in JOB_KINDS:
            raise ValueError(f"unknown job kind {self.kind!r}")
        preset = _PRESETS.get(self.kind)
        if preset is not None and self.params != preset:
            raise ValueError(f"{self.kind} jobs must carry the preset {preset}, got {self.params}")
        if self.sketch_ref is not None and self.kind not in _PRESETS:
            raise ValueError("sketch conditioning applies to panorama jobs only")


@dataclass(frozen=True)
class JobResult:
    kind: str
    asset_path: str | None = None
    snippets: tuple = ()
    meta: dict = field(default_factory=dict)


def panorama_job(prompt: str, final: bool = False, sketch_ref: str | None = None) -> GenerationJob:
    kind = PANORAMA_FINAL if final else PANORAMA_PREVIEW
    return GenerationJob(kind=kind, payload=prompt, params=dict(_PRESETS[kind]), sketch_ref=sketch_ref)


def snippet_job(profile_dict: dict) -> GenerationJob:
    return GenerationJob(kind=SCRIPT_SNIPPETS, payload=profile_dict)


def tts_job(script_text: str, voice: str = "default") -> GenerationJob:
    return GenerationJob(kind=TTS, payload=script_text, params={"voice": voice})


def submit_job(job: GenerationJob, client) -> JobResult:
    """Delegate to the client seam; failures surface as retriable errors."""
    try:
        return client.submit(job)
    except JobClientError:
        raise
    except Exception as exc:
        raise JobClientError(f"client failed: {exc}", job) from exc
