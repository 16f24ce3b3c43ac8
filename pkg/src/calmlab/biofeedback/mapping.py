"""Breath-to-particle mapping: normalized value, phase, radial gain.

Direction is driven by the derivative of the normalized belt signal:
inhaling (rising belt) pulls particles toward the user (negative gain),
exhaling pushes them away (positive gain). A value-proportional mapping
cannot flip direction at the breath turning points; the derivative does.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from ..signal.types import SensorSample
from . import _kernels

PHASES = ("hold", "inhale", "exhale")

WARMING = "warming"
STALE = "stale"
_FLAG_NAMES = {1: WARMING, 2: STALE}


@dataclass(frozen=True)
class MapConfig:
    norm_window_s: float = 30.0
    ema_alpha: float = 0.3
    gain_k: float = 1.0
    hold_band: float = 0.02
    frame_rate_hz: float = 30.0
    warm_s: float = 5.0
    stale_gap_s: float = 2.0

    def __post_init__(self):
        if not 0.0 < self.ema_alpha <= 1.0:
            raise ValueError("ema_alpha must be in (0, 1]")
        for name in ("norm_window_s", "gain_k", "hold_band", "frame_rate_hz", "warm_s", "stale_gap_s"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def window_frames(self) -> int:
        return max(1, int(round(self.norm_window_s * self.frame_rate_hz)))


@dataclass(frozen=True)
class BreathFrame:
    t: int
    b: float
    phase: str
    radial_gain: float
    flag: str | None = None

    def __post_init__(self):
        if not 0.0 <= self.b <= 1.0:
            raise ValueError(f"b out of [0,1]: {self.b}")
        if self.phase not in PHASES:
            raise ValueError(f"unknown phase {self.phase!r}")
        if abs(self.radial_gain) > 1.0:
            raise ValueError(f"radial_gain out of [-1,1]: {self.radial_gain}")
        if self.phase == "inhale" and self.radial_gain > 0:
            raise ValueError("inhale requires radial_gain <= 0")
        if self.phase == "exhale" and self.radial_gain < 0:
            raise ValueError("exhale requires radial_gain >= 0")

    def to_wire(self) -> dict:
        return {"t": self.t, "b": self.b, "phase": self.phase, "g": self.radial_gain}


class RollingNormalizer:
    """Rolling min-max normalization state for live use.

    Returns 0.5 with a warming flag until the window has seen warm_s of
    samples; a degenerate window (max-min < eps) also maps to 0.5.
    """

    def __init__(self, window_s: float = 30.0, warm_s: float = 5.0):
        self.window_ms = window_s * 1000.0
        self.warm_ms = warm_s * 1000.0
        self._buf: deque[tuple[float, float]] = deque()
        self._t_first: float | None = None

    def push(self, t_ms: float, raw: float) -> tuple[float, bool]:
        if self._t_first is None:
            self._t_first = t_ms
        self._buf.append((t_ms, raw))
        while self._buf and self._buf[0][0] < t_ms - self.window_ms:
            self._buf.popleft()
        if t_ms - self._t_first < self.warm_ms:
            return 0.5, True
        values = [v for _, v in self._buf]
        lo, hi = min(values), max(values)
        if hi - lo < 1e-9:
            return 0.5, False
        return min(1.0, max(0.0, (raw - lo) / (hi - lo))), False


def normalize(raw: float, state: RollingNormalizer, t_ms: float) -> tuple[float, bool]:
    """Push one raw sample through a rolling min-max state; returns (b, warming)."""
    return state.push(t_ms, raw)


def map_frame(b_smoothed: float, db_dt: float, cfg: MapConfig, t_ms: int = 0) -> BreathFrame:
    """Pure single-frame mapping from smoothed value and derivative."""
    if not (np.isfinite(b_smoothed) and np.isfinite(db_dt)):
        raise ValueError("inputs must be finite")
    if db_dt > cfg.hold_band:
        phase = "inhale"
    elif db_dt < -cfg.hold_band:
        phase = "exhale"
    else:
        phase = "hold"
    gain = float(np.clip(-cfg.gain_k * db_dt, -1.0, 1.0))
    return BreathFrame(t=int(t_ms), b=float(np.clip(b_smoothed, 0.0, 1.0)), phase=phase, radial_gain=gain)


def _frames_from_arrays(tau, b, phase, gain, flags) -> list[BreathFrame]:
    return [
        BreathFrame(
            t=int(round(tau[i])),
            b=float(b[i]),
            phase=PHASES[phase[i]],
            radial_gain=float(gain[i]),
            flag=_FLAG_NAMES.get(int(flags[i])),
        )
        for i in range(tau.size)
    ]


def frame_stream(samples, cfg: MapConfig | None = None) -> list[BreathFrame]:
    """Map a breath sample window to frames at cfg.frame_rate_hz.

    Accepts (t, v) arrays or an iterable of breath-channel SensorSamples.
    Deterministic for a given input and config; empty input yields [].
    """
    cfg = cfg or MapConfig()
    if isinstance(samples, tuple):
        t, v = samples
        t = np.ascontiguousarray(t, dtype=np.float64)
        v = np.ascontiguousarray(v, dtype=np.float64)
    else:
        pairs = [(s.t, s.value) for s in samples if s.channel == "breath"]
        t = np.asarray([p[0] for p in pairs], dtype=np.float64)
        v = np.asarray([p[1] for p in pairs], dtype=np.float64)
    if t.size == 0:
        return []
    tau = _kernels.frame_times(t, cfg.frame_rate_hz)
    b, phase, gain, flags = _kernels.map_frames(
        t, v, tau,
        cfg.ema_alpha, cfg.window_frames,
        cfg.warm_s * 1000.0, cfg.stale_gap_s * 1000.0,
        cfg.hold_band, cfg.gain_k,
    )
    return _frames_from_arrays(tau, b, phase, gain, flags)


class LiveFrameMapper:
    """Push-driven mapper for live streams; same recurrence as the batch
    kernel, emitting every frame whose time has been covered by samples."""

    def __init__(self, cfg: MapConfig | None = None):
        self.cfg = cfg or MapConfig()
        self._step = 1000.0 / self.cfg.frame_rate_hz
        self._window: deque[float] = deque(maxlen=self.cfg.window_frames)
        self._prev: tuple[float, float] | None = None
        self._t0: float | None = None
        self._k: int = 0  # next frame index; tau = t0 + k*step avoids drift
        self._acc = 0.5
        self._b_prev = 0.5
        self._first = True

    def push(self, sample: SensorSample) -> list[BreathFrame]:
        if sample.channel != "breath":
            return []
        t, v = float(sample.t), float(sample.value)
        out: list[BreathFrame] = []
        if self._t0 is None:
            self._t0 = t
            self._prev = (t, v)
        t_prev, v_prev = self._prev
        while self._t0 + self._k * self._step <= t:
            tau = self._t0 + self._k * self._step
            if t > t_prev:
                # slope-first form matches np.interp's rounding exactly
                raw = v_prev + (v - v_prev) / (t - t_prev) * (tau - t_prev)
            else:
                raw = v
            age = tau - t_prev if tau > t_prev else 0.0
            if tau >= t:
                age = 0.0
            out.append(self._emit(tau, raw, age))
            self._k += 1
        self._prev = (t, v)
        return out

    def _emit(self, tau: float, raw: float, age: float) -> BreathFrame:
        cfg = self.cfg
        self._window.append(raw)
        warming = (tau - self._t0) < cfg.warm_s * 1000.0
        stale = age > cfg.stale_gap_s * 1000.0
        lo, hi = min(self._window), max(self._window)
        if warming or hi - lo < 1e-9:
            b0 = 0.5
        else:
            b0 = min(1.0, max(0.0, (raw - lo) / (hi - lo)))
        if warming:
            self._acc = 0.5
            bi = 0.5
        elif stale and not self._first:
            bi = self._b_prev
        else:
            self._acc = b0 if self._first else cfg.ema_alpha * b0 + (1.0 - cfg.ema_alpha) * self._acc
            bi = self._acc
        db = 0.0 if self._first else (bi - self._b_prev) * cfg.frame_rate_hz
        if warming or stale:
            frame = BreathFrame(t=int(round(tau)), b=bi, phase="hold", radial_gain=0.0,
                                flag=STALE if stale else WARMING)
        else:
            frame = map_frame(bi, db, cfg, t_ms=int(round(tau)))
        self._first = False
        self._b_prev = bi
        return frame


def phase_alternations(frames: Iterable[BreathFrame]) -> tuple[int, int]:
    """Count (inhale, exhale) runs, ignoring holds between them."""
    runs = []
    for f in frames:
        if f.phase in ("inhale", "exhale") and (not runs or runs[-1] != f.phase):
            runs.append(f.phase)
    return runs.count("inhale"), runs.count("exhale")
