"""Deterministic two-channel physiology generator.

Serves as the test oracle for the metrics layer: alongside the sample
stream it records the beat times, NN intervals, and breath cycle count it
actually emitted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .types import BREATH_HZ, PPG_HZ, SensorSample, SyntheticPhysioSpec

# Pulse bump width. Narrow enough that bumps at plausible heart rates never
# merge (min NN 300 ms), wide enough for sub-sample peak interpolation.
PULSE_SIGMA_MS = 80.0
_FIRST_BEAT_MS = 400.0
_NN_CLIP_MS = (300.0, 2000.0)


@dataclass
class GroundTruth:
    """What the generator actually put into the stream."""

    beat_times_ms: np.ndarray
    nn_ms: np.ndarray
    n_breath_cycles: int
    resp_rate_cpm: float

    @property
    def mean_nn_ms(self) -> float:
        return float(np.mean(self.nn_ms)) if self.nn_ms.size else 0.0

    @property
    def sdnn_ms(self) -> float:
        if self.nn_ms.size < 2:
            return 0.0
        return float(np.std(self.nn_ms, ddof=1))


@dataclass
class SyntheticStream:
    spec: SyntheticPhysioSpec
    breath_t: np.ndarray  # int ms
    breath_v: np.ndarray
    ppg_t: np.ndarray  # int ms
    ppg_v: np.ndarray
    truth: GroundTruth = field(repr=False)

    def samples(self):
        """All samples of both channels, merged in timestamp order."""
        merged = sorted(
            [(int(t), "breath", float(v)) for t, v in zip(self.breath_t, self.breath_v)]
            + [(int(t), "ppg", float(v)) for t, v in zip(self.ppg_t, self.ppg_v)]
        )
        for t, ch, v in merged:
            yield SensorSample(t=t, channel=ch, value=v)


def _draw_beats(rng: np.random.Generator, spec: SyntheticPhysioSpec, end_ms: float) -> np.ndarray:
    mean_nn = 60000.0 / spec.heart_rate_bpm
    beats = [_FIRST_BEAT_MS]
    # Leave room for the last bump so its local maximum stays in-window.
    while True:
        nn = rng.normal(mean_nn, spec.nn_sd_ms) if spec.nn_sd_ms > 0 else mean_nn
        nn = float(np.clip(nn, *_NN_CLIP_MS))
        nxt = beats[-1] + nn
        if nxt > end_ms - 2 * PULSE_SIGMA_MS:
            break
        beats.append(nxt)
    return np.asarray(beats)


def _pulse_wave(t_ms: np.ndarray, beats: np.ndarray) -> np.ndarray:
    v = np.zeros_like(t_ms, dtype=np.float64)
    half = 4.0 * PULSE_SIGMA_MS
    for b in beats:
        lo = np.searchsorted(t_ms, b - half)
        hi = np.searchsorted(t_ms, b + half)
        seg = t_ms[lo:hi]
        v[lo:hi] += np.exp(-((seg - b) ** 2) / (2.0 * PULSE_SIGMA_MS**2))
    return v


def generate_synthetic(spec: SyntheticPhysioSpec) -> SyntheticStream:
    """Generate breath and PPG channels per the spec, plus ground truth.

    Breath is a sine at ``breath_freq_hz`` (25 Hz sampling); PPG is a train
    of Gaussian pulse bumps whose beat-to-beat intervals are seeded normal
    draws with mean 60000/heart_rate_bpm and SD ``nn_sd_ms`` (50 Hz
    sampling). Bit-identical for a given spec.
    """
    rng = np.random.default_rng(spec.seed)
    dur_ms = spec.duration_s * 1000.0

    breath_step = 1000.0 / BREATH_HZ
    breath_t = np.arange(0.0, dur_ms, breath_step)
    t_s = breath_t / 1000.0
    breath_v = spec.breath_amp * np.sin(2.0 * np.pi * spec.breath_freq_hz * t_s)
    if spec.noise_sd > 0:
        breath_v = breath_v + rng.normal(0.0, spec.noise_sd, breath_v.shape)

    beats = _draw_beats(rng, spec, dur_ms)
    ppg_step = 1000.0 / PPG_HZ
    ppg_t = np.arange(0.0, dur_ms, ppg_step)
    ppg_v = _pulse_wave(ppg_t, beats)
    if spec.noise_sd > 0:
        ppg_v = ppg_v + rng.normal(0.0, spec.noise_sd, ppg_v.shape)

    truth = GroundTruth(
        beat_times_ms=beats,
        nn_ms=np.diff(beats),
        n_breath_cycles=int(np.floor(spec.duration_s * spec.breath_freq_hz + 1e-9)),
        resp_rate_cpm=60.0 * spec.breath_freq_hz,
    )
    return SyntheticStream(
        spec=spec,
        breath_t=breath_t.astype(np.int64),
        breath_v=breath_v,
        ppg_t=ppg_t.astype(np.int64),
        ppg_v=ppg_v,
        truth=truth,
    )
