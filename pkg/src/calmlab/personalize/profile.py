"""Safe-place profile extraction behind a text-generation client seam.

The grounding contract is enforced here, not trusted from the client:
every sensory detail and memory in an accepted profile must literally
occur in the dialogue transcript (case-folded substring match).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .template import MODALITIES


class GroundingViolationError(ValueError):
    def __init__(self, ungrounded: list[str]):
        super().__init__(
            "profile invents details not present in the transcript: "
            + "; ".join(repr(s) for s in ungrounded)
        )
        self.ungrounded = list(ungrounded)


@dataclass
class SafePlaceProfile:
    profile_id: str
    place_name: str
    elements: list[tuple[str, str]] = field(default_factory=list)
    senses: dict[str, list[str]] = field(default_factory=dict)
    memories: list[str] = field(default_factory=list)
    desired_activities: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.place_name.strip():
            raise ValueError("place_name must be non-empty")
        for modality in self.senses:
            if modality not in MODALITIES:
                raise ValueError(f"unknown sense modality {modality!r}")

    def as_dict(self) -> dict:
        return {
            "profile_id": self.profile_id,
            "place_name": self.place_name,
            "elements": [list(e) for e in self.elements],
            "senses": {k: list(v) for k, v in self.senses.items()},
            "memories": list(self.memories),
            "desired_activities": list(self.desired_activities),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "SafePlaceProfile":
        return cls(
            profile_id=obj["profile_id"],
            place_name=obj["place_name"],
            elements=[tuple(e) for e in obj.get("elements", [])],
            senses={k: list(v) for k, v in obj.get("senses", {}).items()},
            memories=list(obj.get("memories", [])),
            desired_activities=list(obj.get("desired_activities", [])),
        )


def check_grounding(profile: SafePlaceProfile, transcript: str) -> list[str]:
    """Sensory details or memories that do not occur in the transcript."""
    haystack = transcript.casefold()
    ungrounded = []
    for details in profile.senses.values():
        for d in details:
            if d.casefold() not in haystack:
                ungrounded.append(d)
    for m in profile.memories:
        if m.casefold() not in haystack:
            ungrounded.append(m)
    return ungrounded


def extract_profile(transcript: str, client, profile_id: str = "profile-1") -> SafePlaceProfile:
    """Ask the client for structured fields, then enforce grounding."""
    if not transcript.strip():
        raise ValueError("transcript must be non-empty")
    raw = client.extract(transcript)
    profile = SafePlaceProfile(
        profile_id=profile_id,
        place_name=str(raw.get("place_name", "")).strip(),
        elements=[tuple(e) for e in raw.get("elements", [])],
        senses={k: list(v) for k, v in raw.get("senses", {}).items()},
        memories=list(raw.get("memories", [])),
        desired_activities=list(raw.get("desired_activities", [])),
    )
    ungrounded = check_grounding(profile, transcript)
    if ungrounded:
        raise GroundingViolationError(ungrounded)
    return profile
