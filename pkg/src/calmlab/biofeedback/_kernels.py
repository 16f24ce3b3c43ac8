"""Frame-mapping inner loop: resample, normalize, smooth, differentiate.

Per output frame: linear-interp the belt value, min-max normalize against
a trailing window, EMA-smooth the normalized value, differentiate, derive
phase and radial gain. The numba and numpy variants share the exact
recurrence; the numpy path vectorizes the interpolation and the rolling
min/max (the dominant cost) and runs the scalar recurrence in Python.
"""

from __future__ import annotations

import math

import numpy as np

from .._accel import HAS_NUMBA, njit, numba_enabled

PHASE_HOLD = 0
PHASE_INHALE = 1
PHASE_EXHALE = 2

FLAG_NONE = 0
FLAG_WARMING = 1
FLAG_STALE = 2

_RANGE_EPS = 1e-9


def frame_times(t: np.ndarray, fps: float) -> np.ndarray:
    """Frame timestamps covering the sampled span at the render rate.

    The recording duration is last-first plus one median sample interval,
    so a 60 s recording at 30 fps yields exactly 1800 frames.
    """
    if t.size == 0:
        return np.empty(0, dtype=np.float64)
    step = 1000.0 / fps
    dt = float(np.median(np.diff(t))) if t.size > 1 else step
    duration = (t[-1] - t[0]) + dt
    n = int(math.ceil(duration * fps / 1000.0 - 1e-9))
    return t[0] + step * np.arange(max(n, 1), dtype=np.float64)


def _scalar_pass(tau, raw, wmin, wmax, age, t0, alpha, warm_ms, stale_ms, hold_band, gain_k, fps):
    # The derivative is always taken over the *emitted* b sequence, so a
    # consumer recomputing db/dt from the frames sees the exact signal the
    # gain was derived from. Warming frames pin b to 0.5 and stale frames
    # hold the previous b, which makes their db identically zero.
    n = tau.size
    b = np.empty(n)
    phase = np.zeros(n, dtype=np.int8)
    gain = np.zeros(n)
    flags = np.zeros(n, dtype=np.int8)
    acc = 0.5
    b_prev = 0.5
    for i in range(n):
        warming = (tau[i] - t0) < warm_ms
        stale = age[i] > stale_ms
        rng = wmax[i] - wmin[i]
        if warming or rng < _RANGE_EPS:
            b0 = 0.5
        else:
            b0 = (raw[i] - wmin[i]) / rng
            if b0 < 0.0:
                b0 = 0.0
            elif b0 > 1.0:
                b0 = 1.0
        if warming:
            acc = 0.5
            bi = 0.5
        elif stale and i > 0:
            bi = b_prev
        else:
            acc = b0 if i == 0 else alpha * b0 + (1.0 - alpha) * acc
            bi = acc
        db = 0.0 if i == 0 else (bi - b_prev) * fps
        if warming or stale:
            phase[i] = PHASE_HOLD
            gain[i] = 0.0
            flags[i] = FLAG_STALE if stale else FLAG_WARMING
        else:
            g = -gain_k * db
            if g < -1.0:
                g = -1.0
            elif g > 1.0:
                g = 1.0
            gain[i] = g
            if db > hold_band:
                phase[i] = PHASE_INHALE
            elif db < -hold_band:
                phase[i] = PHASE_EXHALE
            else:
                phase[i] = PHASE_HOLD
        b[i] = bi
        b_prev = bi
    return b, phase, gain, flags


def _map_frames_np(t, v, tau, alpha, window, warm_ms, stale_ms, hold_band, gain_k):
    n = tau.size
    raw = np.interp(tau, t, v)
    pad_min = np.concatenate((np.full(window - 1, np.inf), raw))
    pad_max = np.concatenate((np.full(window - 1, -np.inf), raw))
    wmin = np.lib.stride_tricks.sliding_window_view(pad_min, window).min(axis=-1)
    wmax = np.lib.stride_tricks.sliding_window_view(pad_max, window).max(axis=-1)
    idx = np.searchsorted(t, tau, side="right") - 1
    age = tau - t[np.clip(idx, 0, t.size - 1)]
    fps = 1000.0 / (tau[1] - tau[0]) if n > 1 else 0.0
    return _scalar_pass(
        tau, raw, wmin, wmax, age, t[0], alpha, warm_ms, stale_ms, hold_band, gain_k, fps
    )


@njit
def _map_frames_nb(t, v, tau, alpha, window, warm_ms, stale_ms, hold_band, gain_k):  # pragma: no cover - jitted
    n = tau.size
    b = np.empty(n)
    phase = np.zeros(n, dtype=np.int8)
    gain = np.zeros(n)
    flags = np.zeros(n, dtype=np.int8)

    raw = np.interp(tau, t, v)
    fps = 1000.0 / (tau[1] - tau[0]) if n > 1 else 0.0

    # monotonic index deques over the trailing `window` frames of raw
    min_q = np.empty(n, dtype=np.int64)
    max_q = np.empty(n, dtype=np.int64)
    min_lo = min_hi = 0
    max_lo = max_hi = 0

    acc = 0.5
    b_prev = 0.5
    si = 0
    for i in range(n):
        x = raw[i]
        start = i - window + 1
        while min_hi > min_lo and raw[min_q[min_hi - 1]] >= x:
            min_hi -= 1
        min_q[min_hi] = i
        min_hi += 1
        while min_q[min_lo] < start:
            min_lo += 1
        while max_hi > max_lo and raw[max_q[max_hi - 1]] <= x:
            max_hi -= 1
        max_q[max_hi] = i
        max_hi += 1
        while max_q[max_lo] < start:
            max_lo += 1
        wmin = raw[min_q[min_lo]]
        wmax = raw[max_q[max_lo]]

        while si + 1 < t.size and t[si + 1] <= tau[i]:
            si += 1
        age = tau[i] - t[si]

        warming = (tau[i] - t[0]) < warm_ms
        stale = age > stale_ms
        rng = wmax - wmin
        if warming or rng < _RANGE_EPS:
            b0 = 0.5
        else:
            b0 = (x - wmin) / rng
            if b0 < 0.0:
                b0 = 0.0
            elif b0 > 1.0:
                b0 = 1.0
        if warming:
            acc = 0.5
            bi = 0.5
        elif stale and i > 0:
            bi = b_prev
        else:
            acc = b0 if i == 0 else alpha * b0 + (1.0 - alpha) * acc
            bi = acc
        db = 0.0 if i == 0 else (bi - b_prev) * fps
        if warming or stale:
            phase[i] = PHASE_HOLD
            gain[i] = 0.0
            flags[i] = FLAG_STALE if stale else FLAG_WARMING
        else:
            g = -gain_k * db
            if g < -1.0:
                g = -1.0
            elif g > 1.0:
                g = 1.0
            gain[i] = g
            if db > hold_band:
                phase[i] = PHASE_INHALE
            elif db < -hold_band:
                phase[i] = PHASE_EXHALE
            else:
                phase[i] = PHASE_HOLD
        b[i] = bi
        b_prev = bi
    return b, phase, gain, flags


def map_frames(t, v, tau, alpha, window, warm_ms, stale_ms, hold_band, gain_k):
    if numba_enabled():
        return _map_frames_nb(t, v, tau, float(alpha), int(window), float(warm_ms),
                              float(stale_ms), float(hold_band), float(gain_k))
    return _map_frames_np(t, v, tau, float(alpha), int(window), float(warm_ms),
                          float(stale_ms), float(hold_band), float(gain_k))


def warmup():
    if not (HAS_NUMBA and numba_enabled()):
        return
    t = np.arange(0.0, 8000.0, 40.0)
    v = np.sin(t / 400.0)
    tau = frame_times(t, 30.0)
    _map_frames_nb(t, v, tau, 0.3, 10, 500.0, 2000.0, 0.02, 1.0)
