"""Guidance template parsing and slot filling.

The placeholder grammar is closed: only the surface forms that occur in
the shipped template are recognized (the place-name slot, the four
single-modality snippet slots, and the free-choice slot). Anything else
inside braces is a parse error, which keeps validation decidable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

MODALITIES = ("visual", "tactile", "auditory", "olfactory", "memory", "activity")
SLOT_MODALITIES = ("visual", "tactile", "auditory", "olfactory")

KIND_NAME = "name"
KIND_MODALITY = "modality"
KIND_ANY = "any"

_NAME_FORM = "the name of the safe island"
_ANY_FORM = "choose another snippet."
_MODALITY_RE = re.compile(r"^meditation snippet related to (\w+) details\.$")

REMOVED = "removed"


class TemplateParseError(ValueError):
    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (offset {offset})")
        self.offset = offset


class UnfilledModalityError(ValueError):
    def __init__(self, modality: str):
        super().__init__(f"no unused snippet for required modality {modality!r}")
        self.modality = modality


@dataclass(frozen=True)
class Placeholder:
    kind: str
    raw: str  # inner text exactly as written, for byte-exact round-trips
    modality: str | None = None


@dataclass(frozen=True)
class GuidanceTemplate:
    segments: tuple  # str literals interleaved with Placeholders
    template_id: str = "breath-awareness-v1"

    def placeholders(self) -> list[Placeholder]:
        return [s for s in self.segments if isinstance(s, Placeholder)]


@dataclass
class GuidanceScript:
    text: str
    fills: dict[int, str]
    profile_id: str
    template_id: str
    approved: bool = False
    notes: list[str] = field(default_factory=list)

    def approve(self) -> "GuidanceScript":
        self.approved = True
        return self

    def as_dict(self) -> dict:
        return {
            "text": self.text,
            "fills": {str(k): v for k, v in self.fills.items()},
            "profile_id": self.profile_id,
            "template_id": self.template_id,
            "approved": self.approved,
            "notes": list(self.notes),
        }


def _classify(raw: str) -> Placeholder:
    lowered = raw.strip().lower()
    if lowered == _NAME_FORM:
        return Placeholder(kind=KIND_NAME, raw=raw)
    if lowered == _ANY_FORM:
        return Placeholder(kind=KIND_ANY, raw=raw)
    m = _MODALITY_RE.match(lowered)
    if m and m.group(1) in SLOT_MODALITIES:
        return Placeholder(kind=KIND_MODALITY, raw=raw, modality=m.group(1))
    raise TemplateParseError(f"unknown placeholder {{{raw}}}")


def parse_template(text: str, template_id: str = "breath-awareness-v1") -> GuidanceTemplate:
    if not text:
        raise TemplateParseError("empty template")
    segments: list = []
    literal_start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "{":
            end = text.find("}", i + 1)
            if end == -1:
                raise TemplateParseError("unbalanced '{'", offset=i)
            inner = text[i + 1 : end]
            if "{" in inner:
                raise TemplateParseError("nested '{'", offset=i + 1 + inner.index("{"))
            if literal_start < i:
                segments.append(text[literal_start:i])
            segments.append(_classify(inner))
            i = end + 1
            literal_start = i
        elif ch == "}":
            raise TemplateParseError("unbalanced '}'", offset=i)
        else:
            i += 1
    if literal_start < len(text):
        segments.append(text[literal_start:])
    return GuidanceTemplate(segments=tuple(segments), template_id=template_id)


def serialize_template(template: GuidanceTemplate) -> str:
    parts = []
    for seg in template.segments:
        if isinstance(seg, Placeholder):
            parts.append("{" + seg.raw + "}")
        else:
            parts.append(seg)
    return "".join(parts)


def bundled_template_text() -> str:
    return resources.files("calmlab.personalize").joinpath("data/guidance_template.txt").read_text(encoding="utf-8")


def bundled_template() -> GuidanceTemplate:
    return parse_template(bundled_template_text())


def fill_template(
    template: GuidanceTemplate,
    name: str,
    snippets,
    profile_id: str = "",
    count_bounds: tuple[int, int] | None = (6, 8),
) -> GuidanceScript:
    """Fill every placeholder: name slots with the place name, modality
    slots with the first unused snippet of that modality (caller order),
    free-choice slots with any unused snippet or removal.

    Removal of a slot that occupies its own paragraph also drops one of
    the surrounding blank lines, so the script keeps clean paragraphing.
    """
    if not name or "{" in name or "}" in name:
        raise ValueError("place name must be non-empty and brace-free")
    snippets = list(snippets)
    for s in snippets:
        if "{" in s.text or "}" in s.text:
            raise ValueError(f"snippet {s.snippet_id} contains braces")
    notes = []
    if count_bounds is not None and not count_bounds[0] <= len(snippets) <= count_bounds[1]:
        notes.append(
            f"snippet count {len(snippets)} outside usual bounds {count_bounds[0]}-{count_bounds[1]}"
        )

    used = [False] * len(snippets)

    def take(modality: str | None) -> int | None:
        for idx, s in enumerate(snippets):
            if used[idx]:
                continue
            if modality is None or s.modality == modality:
                used[idx] = True
                return idx
        return None

    # Modality slots claim their snippets first (in template order), so a
    # free-choice slot earlier in the template cannot starve a required
    # modality later on; free-choice slots then draw from the remainder.
    placeholders = template.placeholders()
    assigned: dict[int, int | None] = {}
    for ph_index, ph in enumerate(placeholders):
        if ph.kind == KIND_MODALITY:
            idx = take(ph.modality)
            if idx is None:
                raise UnfilledModalityError(ph.modality)
            assigned[ph_index] = idx
    for ph_index, ph in enumerate(placeholders):
        if ph.kind == KIND_ANY:
            assigned[ph_index] = take(None)

    out: list[str] = []
    fills: dict[int, str] = {}
    ph_index = -1
    segments = list(template.segments)
    for si, seg in enumerate(segments):
        if not isinstance(seg, Placeholder):
            out.append(seg)
            continue
        ph_index += 1
        if seg.kind == KIND_NAME:
            out.append(name)
            fills[ph_index] = "name"
            continue
        idx = assigned[ph_index]
        if idx is not None:
            out.append(snippets[idx].text)
            fills[ph_index] = snippets[idx].snippet_id
            continue
        fills[ph_index] = REMOVED
        nxt = segments[si + 1] if si + 1 < len(segments) else None
        if isinstance(nxt, str) and nxt.startswith("\n\n"):
            segments[si + 1] = nxt[2:]
        elif out and out[-1].endswith("\n\n"):
            out[-1] = out[-1][:-1]

    return GuidanceScript(
        text="".join(out),
        fills=fills,
        profile_id=profile_id,
        template_id=template.template_id,
        notes=notes,
    )
