"""Protocol domain types: condition cell, phase plan, session record."""

from __future__ import annotations

from dataclasses import dataclass, field

PHASE_NAMES = ("S1", "S2", "S3")

SCORE_KEYS = (
    "RRS_S2", "RRS_S3", "STAI_S2", "STAI_S3",
    "FSS", "relevance", "IPQ_GP", "IPQ_SP", "IPQ_INV", "IPQ_REAL",
)

POOL = "pool"
PROFILE = "profile"


@dataclass(frozen=True)
class Condition:
    personalization: bool
    biofeedback: bool

    @property
    def label(self) -> str:
        return ("P" if self.personalization else "N") + ("B" if self.biofeedback else "N")

    @classmethod
    def from_label(cls, label: str) -> "Condition":
        label = label.upper()
        if len(label) != 2 or label[0] not in "PN" or label[1] not in "BN":
            raise ValueError(f"unknown condition label {label!r}")
        return cls(personalization=label[0] == "P", biofeedback=label[1] == "B")


CELLS = (
    Condition(True, True),   # PB
    Condition(True, False),  # PN
    Condition(False, True),  # NB
    Condition(False, False),  # NN
)


@dataclass(frozen=True)
class PhasePlan:
    baseline_s: float = 300.0
    stress_s: float = 600.0
    relax_s: float = 600.0
    setup_s: float = 0.0

    def __post_init__(self):
        if self.baseline_s <= 0 or self.stress_s <= 0 or self.relax_s <= 0:
            raise ValueError("phase durations must be positive")
        if self.setup_s < 0:
            raise ValueError("setup_s must be >= 0")

    def durations_ms(self) -> dict[str, float]:
        return {
            "S1": self.baseline_s * 1000.0,
            "S2": self.stress_s * 1000.0,
            "S3": self.relax_s * 1000.0,
        }


@dataclass
class SessionRecord:
    record_id: str
    participant: str
    condition: Condition
    plan: PhasePlan
    phases: dict = field(default_factory=dict)   # name -> [start_ms, end_ms]
    metrics: dict = field(default_factory=dict)  # name -> PhaseMetrics dict or None
    scores: dict = field(default_factory=dict)
    assets: dict = field(default_factory=dict)   # script/panorama/audio paths + source
    events: list = field(default_factory=list)   # [t_ms, name] ordered
    frame_count: int = 0
    valid: bool = True
    invalid_reason: str | None = None

    def as_dict(self) -> dict:
        return {
            "record_id": self.record_id,
            "participant": self.participant,
            "condition": {"personalization": self.condition.personalization,
                          "biofeedback": self.condition.biofeedback},
            "plan": {"baseline_s": self.plan.baseline_s, "stress_s": self.plan.stress_s,
                     "relax_s": self.plan.relax_s, "setup_s": self.plan.setup_s},
            "phases": {k: list(v) for k, v in self.phases.items()},
            "metrics": self.metrics,
            "scores": dict(self.scores),
            "assets": dict(self.assets),
            "events": [list(e) for e in self.events],
            "frame_count": self.frame_count,
            "valid": self.valid,
            "invalid_reason": self.invalid_reason,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "SessionRecord":
        return cls(
            record_id=obj["record_id"],
            participant=obj["participant"],
            condition=Condition(
                personalization=bool(obj["condition"]["personalization"]),
                biofeedback=bool(obj["condition"]["biofeedback"]),
            ),
            plan=PhasePlan(**obj["plan"]),
            phases={k: tuple(v) for k, v in obj["phases"].items()},
            metrics=dict(obj.get("metrics", {})),
            scores=dict(obj.get("scores", {})),
            assets=dict(obj.get("assets", {})),
            events=[tuple(e) for e in obj.get("events", [])],
            frame_count=int(obj.get("frame_count", 0)),
            valid=bool(obj.get("valid", False)),
            invalid_reason=obj.get("invalid_reason"),
        )
