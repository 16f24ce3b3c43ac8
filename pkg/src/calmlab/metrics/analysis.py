"""Respiration rate and HRV-SDNN from sample windows.

All thresholds live in MetricsConfig; defaults match the engine-wide
configuration (300 ms refractory, 5 s adaptive threshold window, EMA
alpha 0.2, hysteresis 0.1*SD, minimum breath cycle 1.5 s).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..signal.types import SensorSample
from . import _kernels

NO_PULSE = "no-pulse"
NO_BREATH = "no-breath"


class EmptySeriesError(ValueError):
    """Not enough peaks to form an NN series."""


@dataclass(frozen=True)
class MetricsConfig:
    refractory_ms: float = 300.0
    threshold_window_ms: float = 5000.0
    threshold_sd_gain: float = 0.5
    min_ppg_window_ms: float = 5000.0
    nn_bounds_ms: tuple[float, float] = (300.0, 2000.0)
    ema_alpha: float = 0.2
    hysteresis_sd_frac: float = 0.1
    min_cycle_ms: float = 1500.0
    resp_sd_window_ms: float = 30000.0
    min_breath_window_ms: float = 20000.0
    flat_eps: float = 1e-9
    # Sample (n-1) SD is the HRV convention; population SD is one flag away.
    sdnn_ddof: int = 1


@dataclass
class PeakDetection:
    times_ms: np.ndarray
    flag: str | None = None


@dataclass
class NnSeries:
    intervals_ms: list[float]
    rejected_count: int = 0

    def __post_init__(self):
        if self.rejected_count < 0:
            raise ValueError("rejected_count must be >= 0")


@dataclass
class RespirationResult:
    rate_cpm: float
    n_cycles: int
    crossings_ms: np.ndarray
    flag: str | None = None


@dataclass
class PhaseMetrics:
    sdnn_ms: float
    resp_rate_cpm: float
    n_beats: int
    n_breath_cycles: int
    window: tuple[int, int]
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "sdnn_ms": self.sdnn_ms,
            "resp_rate_cpm": self.resp_rate_cpm,
            "n_beats": self.n_beats,
            "n_breath_cycles": self.n_breath_cycles,
            "window": list(self.window),
            "warnings": list(self.warnings),
        }


def _as_arrays(t, v):
    t = np.ascontiguousarray(t, dtype=np.float64)
    v = np.ascontiguousarray(v, dtype=np.float64)
    if t.size != v.size:
        raise ValueError("t and v must have equal length")
    return t, v


def detect_pulse_peaks(t, v, config: MetricsConfig | None = None) -> PeakDetection:
    """Pulse peaks: local maxima above rolling mean + 0.5*rolling SD (5 s),
    with a 300 ms refractory period and sub-sample vertex refinement.
    """
    cfg = config or MetricsConfig()
    t, v = _as_arrays(t, v)
    if t.size < 3 or t[-1] - t[0] < cfg.min_ppg_window_ms:
        raise ValueError("need at least 5 s of ppg samples")
    if float(np.std(v)) < cfg.flat_eps:
        return PeakDetection(times_ms=np.empty(0), flag=NO_PULSE)
    mean, sd = _kernels.trailing_stats(t, v, cfg.threshold_window_ms)
    thr = mean + cfg.threshold_sd_gain * sd
    peaks = _kernels.peak_pick(t, v, thr, cfg.refractory_ms)
    return PeakDetection(times_ms=peaks)


def build_nn_series(peaks, config: MetricsConfig | None = None) -> NnSeries:
    """Successive peak differences; intervals outside the plausibility
    bounds are dropped and counted in rejected_count."""
    cfg = config or MetricsConfig()
    peaks = np.asarray(peaks, dtype=np.float64)
    if peaks.size < 2:
        raise EmptySeriesError("need at least 2 peaks to build an NN series")
    diffs = np.diff(peaks)
    lo, hi = cfg.nn_bounds_ms
    keep = (diffs >= lo) & (diffs <= hi)
    return NnSeries(
        intervals_ms=[float(d) for d in diffs[keep]],
        rejected_count=int(np.sum(~keep)),
    )


def sdnn(series: NnSeries, config: MetricsConfig | None = None) -> float:
    """Sample standard deviation of the NN intervals (0 when n < 2)."""
    cfg = config or MetricsConfig()
    n = len(series.intervals_ms)
    if n == 0:
        raise EmptySeriesError("empty NN series")
    if n < 2:
        return 0.0
    return float(np.std(np.asarray(series.intervals_ms), ddof=cfg.sdnn_ddof))


def respiration_rate(t, v, config: MetricsConfig | None = None) -> RespirationResult:
    """Breath cycles per minute via rising hysteresis crossings of the
    mean-removed, EMA-smoothed belt signal."""
    cfg = config or MetricsConfig()
    t, v = _as_arrays(t, v)
    if t.size < 3 or t[-1] - t[0] < cfg.min_breath_window_ms:
        raise ValueError("need at least 20 s of breath samples")
    if float(np.std(v)) < cfg.flat_eps:
        return RespirationResult(0.0, 0, np.empty(0), flag=NO_BREATH)
    y = _kernels.ema(v - float(np.mean(v)), cfg.ema_alpha)
    _, roll_sd = _kernels.trailing_stats(t, y, cfg.resp_sd_window_ms)
    h = cfg.hysteresis_sd_frac * roll_sd
    crossings = _kernels.breath_crossings(t, y, h, cfg.min_cycle_ms)
    minutes = (t[-1] - t[0]) / 60000.0
    return RespirationResult(
        rate_cpm=float(crossings.size / minutes),
        n_cycles=int(crossings.size),
        crossings_ms=crossings,
    )


def split_channels(samples: Iterable[SensorSample]) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Split a merged sample stream into per-channel (t, v) arrays."""
    buckets: dict[str, tuple[list, list]] = {}
    for s in samples:
        ts, vs = buckets.setdefault(s.channel, ([], []))
        ts.append(s.t)
        vs.append(s.value)
    return {
        ch: (np.asarray(ts, dtype=np.float64), np.asarray(vs, dtype=np.float64))
        for ch, (ts, vs) in buckets.items()
    }


def _clip_window(t, v, window):
    start, end = window
    mask = (t >= start) & (t < end)
    return t[mask], v[mask]


def phase_metrics(
    breath: tuple[np.ndarray, np.ndarray],
    ppg: tuple[np.ndarray, np.ndarray],
    window: tuple[int, int],
    config: MetricsConfig | None = None,
) -> PhaseMetrics:
    """Compose peak detection, NN series, SDNN and respiration rate over
    one phase window. Flag conditions surface as warnings, not errors."""
    cfg = config or MetricsConfig()
    start, end = window
    if not start < end:
        raise ValueError("window start must precede end")
    bt, bv = _clip_window(*_as_arrays(*breath), window)
    pt, pv = _clip_window(*_as_arrays(*ppg), window)
    if bt.size == 0 or pt.size == 0:
        raise ValueError("window not covered by both channels")

    warnings: list[str] = []
    detection = detect_pulse_peaks(pt, pv, cfg)
    if detection.flag:
        warnings.append(detection.flag)
    n_beats = int(detection.times_ms.size)
    sdnn_ms = 0.0
    if n_beats >= 2:
        series = build_nn_series(detection.times_ms, cfg)
        if series.rejected_count:
            warnings.append(f"rejected-intervals:{series.rejected_count}")
        if series.intervals_ms:
            sdnn_ms = sdnn(series, cfg)
        else:
            warnings.append("all-intervals-rejected")

    resp = respiration_rate(bt, bv, cfg)
    if resp.flag:
        warnings.append(resp.flag)

    return PhaseMetrics(
        sdnn_ms=sdnn_ms,
        resp_rate_cpm=resp.rate_cpm,
        n_beats=n_beats,
        n_breath_cycles=resp.n_cycles,
        window=(int(start), int(end)),
        warnings=warnings,
    )
