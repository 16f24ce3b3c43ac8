"""Core sample types shared by replay, synthesis, and live adapters."""

from __future__ import annotations

import math
from dataclasses import dataclass

CHANNELS = ("breath", "ppg")

# Default sampling rates carried in replay file headers. Live adapters may
# report different rates; all downstream metrics are rate-agnostic.
BREATH_HZ = 25.0
PPG_HZ = 50.0


@dataclass(frozen=True)
class SensorSample:
    """One timestamped scalar from a named channel.

    ``t`` is milliseconds since the session epoch. Values are raw,
    dimensionless sensor units; normalization happens downstream.
    """

    t: int
    channel: str
    value: float

    def __post_init__(self):
        if self.t < 0:
            raise ValueError(f"sample timestamp must be >= 0, got {self.t}")
        if self.channel not in CHANNELS:
            raise ValueError(f"unknown channel {self.channel!r}")
        if not math.isfinite(self.value):
            raise ValueError("sample value must be finite")


@dataclass(frozen=True)
class SyntheticPhysioSpec:
    """Parameters for the deterministic two-channel physiology generator.

    The generator doubles as the ground-truth oracle for the metrics layer:
    it records the NN intervals and breath cycle count it actually emitted.
    """

    duration_s: float
    breath_freq_hz: float = 0.25
    breath_amp: float = 1.0
    heart_rate_bpm: float = 60.0
    nn_sd_ms: float = 0.0
    noise_sd: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.duration_s <= 0:
            raise ValueError("duration_s must be > 0")
        if not 0.03 <= self.breath_freq_hz <= 1.0:
            raise ValueError("breath_freq_hz must be in [0.03, 1.0]")
        if not 30.0 <= self.heart_rate_bpm <= 200.0:
            raise ValueError("heart_rate_bpm must be in [30, 200]")
        if self.nn_sd_ms < 0:
            raise ValueError("nn_sd_ms must be >= 0")
        if self.noise_sd < 0:
            raise ValueError("noise_sd must be >= 0")
        if self.breath_amp <= 0:
            raise ValueError("breath_amp must be > 0")
