"""Hot loops for pulse-peak and breath-cycle extraction.

Each kernel has a numba ``@njit`` variant and a pure-numpy variant with
identical semantics; `calmlab._accel.numba_enabled()` picks at call time.
"""

from __future__ import annotations

import math

import numpy as np

from .._accel import HAS_NUMBA, njit, numba_enabled


# -- trailing window mean / SD -------------------------------------------

def _trailing_stats_np(t: np.ndarray, v: np.ndarray, window_ms: float):
    n = t.size
    c = np.concatenate(([0.0], np.cumsum(v)))
    c2 = np.concatenate(([0.0], np.cumsum(v * v)))
    left = np.searchsorted(t, t - window_ms, side="left")
    idx = np.arange(n)
    m = idx - left + 1
    s = c[idx + 1] - c[left]
    s2 = c2[idx + 1] - c2[left]
    mu = s / m
    var = np.maximum(s2 / m - mu * mu, 0.0)
    return mu, np.sqrt(var)


@njit
def _trailing_stats_nb(t, v, window_ms):  # pragma: no cover - jitted
    n = t.size
    mean = np.empty(n, dtype=np.float64)
    sd = np.empty(n, dtype=np.float64)
    s = 0.0
    s2 = 0.0
    j = 0
    for i in range(n):
        s += v[i]
        s2 += v[i] * v[i]
        while t[j] < t[i] - window_ms:
            s -= v[j]
            s2 -= v[j] * v[j]
            j += 1
        m = i - j + 1
        mu = s / m
        var = s2 / m - mu * mu
        if var < 0.0:
            var = 0.0
        mean[i] = mu
        sd[i] = math.sqrt(var)
    return mean, sd


def trailing_stats(t: np.ndarray, v: np.ndarray, window_ms: float):
    """Per-sample mean and population SD over the trailing [t-W, t] window."""
    if numba_enabled():
        return _trailing_stats_nb(t, v, window_ms)
    return _trailing_stats_np(t, v, window_ms)


# -- pulse peak picking ----------------------------------------------------

def _refine_vertex(t, v, i):
    """Sub-sample peak time via a parabola through the 3 samples around i."""
    a, b, c = v[i - 1], v[i], v[i + 1]
    denom = a - 2.0 * b + c
    step = 0.5 * (t[i + 1] - t[i - 1])
    if denom >= 0.0 or step <= 0.0:
        return t[i]
    shift = 0.5 * (a - c) / denom
    if shift < -1.0:
        shift = -1.0
    elif shift > 1.0:
        shift = 1.0
    return t[i] + shift * step


def _peak_pick_np(t, v, thr, refractory_ms):
    inner = slice(1, t.size - 1)
    mask = (v[inner] > v[:-2]) & (v[inner] >= v[2:]) & (v[inner] > thr[inner])
    out = []
    last = -1e18
    for i in np.nonzero(mask)[0] + 1:
        pt = _refine_vertex(t, v, i)
        if pt - last >= refractory_ms:
            out.append(pt)
            last = pt
    return np.asarray(out, dtype=np.float64)


@njit
def _peak_pick_nb(t, v, thr, refractory_ms):  # pragma: no cover - jitted
    n = t.size
    out = np.empty(n, dtype=np.float64)
    k = 0
    last = -1e18
    for i in range(1, n - 1):
        if v[i] > v[i - 1] and v[i] >= v[i + 1] and v[i] > thr[i]:
            a, b, c = v[i - 1], v[i], v[i + 1]
            denom = a - 2.0 * b + c
            step = 0.5 * (t[i + 1] - t[i - 1])
            pt = t[i]
            if denom < 0.0 and step > 0.0:
                shift = 0.5 * (a - c) / denom
                if shift < -1.0:
                    shift = -1.0
                elif shift > 1.0:
                    shift = 1.0
                pt = t[i] + shift * step
            if pt - last >= refractory_ms:
                out[k] = pt
                k += 1
                last = pt
    return out[:k]


def peak_pick(t, v, thr, refractory_ms):
    """Local maxima above thr, sub-sample refined, refractory enforced."""
    if numba_enabled():
        return _peak_pick_nb(t, v, thr, refractory_ms)
    return _peak_pick_np(t, v, thr, refractory_ms)


# -- breath cycle crossings -------------------------------------------------

def _breath_cross_py(t, y, h, min_cycle_ms):
    # h[0] is degenerate (single-sample SD); arm against the settled band.
    armed = y[0] <= h[h.size - 1]
    out = []
    last = -1e18
    for i in range(1, t.size):
        if armed and y[i] > h[i]:
            if t[i] - last >= min_cycle_ms:
                out.append(t[i])
                last = t[i]
            armed = False
        elif not armed and y[i] < -h[i]:
            armed = True
    return np.asarray(out, dtype=np.float64)


@njit
def _breath_cross_nb(t, y, h, min_cycle_ms):  # pragma: no cover - jitted
    armed = y[0] <= h[h.size - 1]
    out = np.empty(t.size, dtype=np.float64)
    k = 0
    last = -1e18
    for i in range(1, t.size):
        if armed and y[i] > h[i]:
            if t[i] - last >= min_cycle_ms:
                out[k] = t[i]
                k += 1
                last = t[i]
            armed = False
        elif not armed and y[i] < -h[i]:
            armed = True
    return out[:k]


def breath_crossings(t, y, h, min_cycle_ms):
    """Rising hysteresis crossings of a mean-removed smoothed breath signal.

    A crossing fires when the signal exceeds +h while armed; re-arming
    requires dipping below -h. Crossings closer than min_cycle_ms to the
    previous counted one are treated as bounce and dropped.
    """
    if numba_enabled():
        return _breath_cross_nb(t, y, h, min_cycle_ms)
    return _breath_cross_py(t, y, h, min_cycle_ms)


# -- EMA ---------------------------------------------------------------------

def _ema_py(x, alpha):
    y = np.empty_like(x)
    acc = x[0]
    y[0] = acc
    for i in range(1, x.size):
        acc = alpha * x[i] + (1.0 - alpha) * acc
        y[i] = acc
    return y


@njit
def _ema_nb(x, alpha):  # pragma: no cover - jitted
    y = np.empty_like(x)
    acc = x[0]
    y[0] = acc
    for i in range(1, x.size):
        acc = alpha * x[i] + (1.0 - alpha) * acc
        y[i] = acc
    return y


def ema(x, alpha):
    """First-order exponential smoothing, y[0] = x[0]."""
    if x.size == 0:
        return x.astype(np.float64)
    if numba_enabled():
        return _ema_nb(x, alpha)
    return _ema_py(x, alpha)


def warmup():
    """Compile the jitted kernels (no-op on the numpy path)."""
    if not (HAS_NUMBA and numba_enabled()):
        return
    t = np.arange(0.0, 400.0, 20.0)
    v = np.sin(t / 50.0)
    thr = np.zeros_like(v)
    _trailing_stats_nb(t, v, 100.0)
    _peak_pick_nb(t, v, thr, 300.0)
    _breath_cross_nb(t, v, np.full_like(v, 0.05), 1500.0)
    _ema_nb(v, 0.2)
