"""Snippet validation: one sensory category per sentence, linking prefix.

The sensory lexicon and linking-prefix list live in a JSON config file
(the rules are linguistic, not structural, so they are data).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources

from .template import MODALITIES


@dataclass(frozen=True)
class Snippet:
    snippet_id: str
    text: str
    modality: str
    links_back: bool = False

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("snippet text must be non-empty")
        if self.modality not in MODALITIES:
            raise ValueError(f"unknown modality {self.modality!r}")


@dataclass(frozen=True)
class Violation:
    rule: str
    detail: str

    def as_dict(self) -> dict:
        return {"rule": self.rule, "detail": self.detail}


class LanguageRules:
    def __init__(self, linking_prefixes: list[str], sensory_lexicon: dict[str, list[str]]):
        self.linking_prefixes = tuple(linking_prefixes)
        self.sensory_lexicon = {k: tuple(v) for k, v in sensory_lexicon.items()}
        self._category_res = {
            cat: re.compile(r"\b(" + "|".join(re.escape(w) for w in words) + r")\b", re.IGNORECASE)
            for cat, words in self.sensory_lexicon.items()
        }

    @classmethod
    def bundled(cls) -> "LanguageRules":
        raw = resources.files("calmlab.personalize").joinpath("data/language_rules.json").read_text(encoding="utf-8")
        obj = json.loads(raw)
        return cls(obj["linking_prefixes"], obj["sensory_lexicon"])

    def categories_in(self, sentence: str) -> list[str]:
        return [cat for cat, rx in self._category_res.items() if rx.search(sentence)]

    def has_linking_prefix(self, text: str) -> bool:
        lowered = text.lstrip().lower()
        return any(lowered.startswith(p.lower()) for p in self.linking_prefixes)


_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+")

_default_rules: LanguageRules | None = None


def default_rules() -> LanguageRules:
    global _default_rules
    if _default_rules is None:
        _default_rules = LanguageRules.bundled()
    return _default_rules


def validate_snippet(snippet: Snippet, rules: LanguageRules | None = None) -> list[Violation]:
    """Empty list when the snippet obeys the generation rules."""
    rules = rules or default_rules()
    violations: list[Violation] = []
    if not rules.has_linking_prefix(snippet.text):
        violations.append(Violation(rule="linking", detail="snippet does not begin with a linking phrase"))
    if "{" in snippet.text or "}" in snippet.text:
        violations.append(Violation(rule="braces", detail="snippet contains template braces"))
    for sentence in _SENTENCE_SPLIT.split(snippet.text.strip()):
        if not sentence:
            continue
        cats = rules.categories_in(sentence)
        if len(cats) > 1:
            violations.append(
                Violation(
                    rule="single-sensory",
                    detail=f"sentence mixes {', '.join(sorted(cats))}: {sentence[:80]!r}",
                )
            )
    return violations


def make_snippet(snippet_id: str, text: str, modality: str, rules: LanguageRules | None = None) -> Snippet:
    rules = rules or default_rules()
    return Snippet(
        snippet_id=snippet_id,
        text=text,
        modality=modality,
        links_back=rules.has_linking_prefix(text),
    )
