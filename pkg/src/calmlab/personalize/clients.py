"""Deterministic mock clients for the three generative-service seams.

The tag mock reads ``@tag: value`` markers out of a transcript, so the
extracted profile is grounded by construction. The generation mock writes
real (if boring) assets: a gradient equirectangular PNG and a sine WAV.
"""

from __future__ import annotations

import hashlib
import io
import json
import math
import re
import struct
import wave
from pathlib import Path
from typing import Protocol

from PIL import Image

from .jobs import (
    FINAL_PRESET,
    PANORAMA_FINAL,
    PANORAMA_PREVIEW,
    SCRIPT_SNIPPETS,
    TTS,
    GenerationJob,
    JobClientError,
    JobResult,
)
from .snippets import Snippet, default_rules


class TextGenClient(Protocol):
    def extract(self, transcript: str) -> dict: ...


class GenerationClient(Protocol):
    def submit(self, job: GenerationJob) -> JobResult: ...


_TAG_RE = re.compile(r"@(\w+):\s*(.+?)\s*$", re.MULTILINE)

_SENSE_TAGS = {"visual", "tactile", "auditory", "olfactory"}


class TagTranscriptClient:
    """Echoes ``@place/@visual/@element/@memory/@activity`` transcript tags."""

    def extract(self, transcript: str) -> dict:
        out: dict = {"place_name": "", "elements": [], "senses": {}, "memories": [],
                     "desired_activities": []}
        for tag, value in _TAG_RE.findall(transcript):
            tag = tag.lower()
            if tag == "place":
                out["place_name"] = value
            elif tag in _SENSE_TAGS:
                out["senses"].setdefault(tag, []).append(value)
            elif tag == "element":
                parts = [p.strip() for p in value.split("|")]
                out["elements"].append((parts[0], parts[1] if len(parts) > 1 else ""))
            elif tag == "memory":
                out["memories"].append(value)
            elif tag == "activity":
                out["desired_activities"].append(value)
        return out


class CannedClient:
    """Returns a canned extraction response (dict or JSON fixture path)."""

    def __init__(self, response):
        if isinstance(response, (str, Path)):
            response = json.loads(Path(response).read_text(encoding="utf-8"))
        self._response = response

    def extract(self, transcript: str) -> dict:
        return self._response


def _seed_from(text: str) -> int:
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:4], "big")


def gradient_panorama_png(prompt: str, size: str) -> bytes:
    """Deterministic solid-gradient equirectangular image for a prompt."""
    width, height = (int(p) for p in size.split("x"))
    seed = _seed_from(prompt)
    top = ((seed >> 16) & 0xFF, (seed >> 8) & 0xFF, seed & 0xFF)
    bottom = (255 - top[0], 255 - top[1], 255 - top[2])
    img = Image.new("RGB", (width, height))
    px = img.load()
    for y in range(height):
        f = y / max(height - 1, 1)
        color = tuple(int(round(t + (b - t) * f)) for t, b in zip(top, bottom))
        for x in range(width):
            px[x, y] = color
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def sine_wav(text: str, seconds: float = 1.0, rate: int = 8000) -> bytes:
    """Deterministic placeholder guidance audio (a quiet sine)."""
    freq = 220.0 + (_seed_from(text) % 220)
    buf = io.BytesIO()
    with wave.open(buf, "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(rate)
        n = int(seconds * rate)
        frames = b"".join(
            struct.pack("<h", int(12000 * math.sin(2 * math.pi * freq * i / rate)))
            for i in range(n)
        )
        wav.writeframes(frames)
    return buf.getvalue()


class MockGenerationClient:
    """Writes deterministic placeholder assets into an output directory."""

    def __init__(self, out_dir):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)

    def submit(self, job: GenerationJob) -> JobResult:
        if job.kind in (PANORAMA_PREVIEW, PANORAMA_FINAL):
            prompt = str(job.payload)
            data = gradient_panorama_png(prompt, job.params["size"])
            suffix = "final" if job.kind == PANORAMA_FINAL else "preview"
            path = self.out_dir / f"panorama-{_seed_from(prompt):08x}-{suffix}.png"
            path.write_bytes(data)
            return JobResult(kind=job.kind, asset_path=str(path), meta={"params": dict(job.params)})
        if job.kind == TTS:
            text = str(job.payload)
            data = sine_wav(text)
            path = self.out_dir / f"guidance-{_seed_from(text):08x}.wav"
            path.write_bytes(data)
            return JobResult(kind=job.kind, asset_path=str(path))
        if job.kind == SCRIPT_SNIPPETS:
            return JobResult(kind=job.kind, snippets=tuple(snippets_from_profile(job.payload)))
        raise JobClientError(f"unsupported kind {job.kind}", job)


class FailingClient:
    """Always fails; used to exercise the retriable-error path."""

    def submit(self, job: GenerationJob) -> JobResult:
        raise JobClientError("service unavailable", job)


_SNIPPET_FORMS = {
    "visual": "As you mentioned before, {d} rests gently in your view. Let it hold your gaze.",
    "tactile": "Just as you told me, {d} is within reach. Notice how it meets your skin.",
    "auditory": "As you described, {d} carries through the air around you. Stay with it.",
    "olfactory": "As you recalled, {d} drifts toward you. Breathe it in slowly.",
}


def snippets_from_profile(profile_dict: dict) -> list[Snippet]:
    """Deterministic snippet set from a profile: one per sense detail,
    plus memory and activity extras, all linking back to the dialogue."""
    out: list[Snippet] = []
    i = 0
    senses = profile_dict.get("senses", {})
    for modality in ("visual", "tactile", "auditory", "olfactory"):
        for detail in senses.get(modality, []):
            i += 1
            out.append(Snippet(
                snippet_id=f"sn-{i:02d}",
                text=_SNIPPET_FORMS[modality].format(d=detail),
                modality=modality,
                links_back=True,
            ))
    for memory in profile_dict.get("memories", []):
        i += 1
        out.append(Snippet(
            snippet_id=f"sn-{i:02d}",
            text=f"Just as you told me, you remember {memory}. Let that moment settle around you.",
            modality="memory",
            links_back=True,
        ))
    for activity in profile_dict.get("desired_activities", []):
        i += 1
        out.append(Snippet(
            snippet_id=f"sn-{i:02d}",
            text=f"As you mentioned before, this is a place where you can simply {activity}. Give yourself that freedom now.",
            modality="activity",
            links_back=True,
        ))
    return out
