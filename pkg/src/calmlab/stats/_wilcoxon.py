"""Exact signed-rank tail counts over all 2^n sign assignments.

Ranks are doubled to integers (tie-averaged ranks are half-integers), so
both backends count exactly. The numba kernel walks a Gray code with an
incremental sum; the numpy fallback enumerates subset sums of two halves
and pairs them with a sorted merge.
"""

from __future__ import annotations

import numpy as np

from .._accel import HAS_NUMBA, njit, numba_enabled


@njit
def _count_tails_nb(r2, lo2, hi2):  # pragma: no cover - jitted
    n = r2.size
    total = np.int64(1) << n
    c_lo = np.int64(0)
    c_hi = np.int64(0)
    s = np.int64(0)
    if s <= lo2:
        c_lo += 1
    if s >= hi2:
        c_hi += 1
    prev_gray = np.int64(0)
    for g in range(1, total):
        gray = g ^ (g >> 1)
        diff = gray ^ prev_gray
        bit = 0
        while (diff >> bit) & 1 == 0:
            bit += 1
        if (gray >> bit) & 1:
            s += r2[bit]
        else:
            s -= r2[bit]
        if s <= lo2:
            c_lo += 1
        if s >= hi2:
            c_hi += 1
        prev_gray = gray
    return c_lo, c_hi


def _subset_sums(r2: np.ndarray) -> np.ndarray:
    sums = np.zeros(1, dtype=np.int64)
    for r in r2:
        sums = np.concatenate((sums, sums + r))
    return sums


def _count_tails_np(r2, lo2, hi2):
    half = r2.size // 2
    a = _subset_sums(r2[:half])
    b = np.sort(_subset_sums(r2[half:]))
    c_lo = int(np.searchsorted(b, lo2 - a, side="right").sum())
    c_hi = int((b.size - np.searchsorted(b, hi2 - a, side="left")).sum())
    return c_lo, c_hi


def count_tails(ranks: np.ndarray, lo: float, hi: float) -> tuple[int, int]:
    """(#assignments with positive-rank sum <= lo, #assignments >= hi)."""
    r2 = np.round(2.0 * np.asarray(ranks)).astype(np.int64)
    lo2 = np.int64(round(2.0 * lo))
    hi2 = np.int64(round(2.0 * hi))
    if numba_enabled():
        lo_c, hi_c = _count_tails_nb(r2, lo2, hi2)
        return int(lo_c), int(hi_c)
    return _count_tails_np(r2, lo2, hi2)


def warmup():
    if not (HAS_NUMBA and numba_enabled()):
        return
    _count_tails_nb(np.array([2, 4, 6], dtype=np.int64), np.int64(2), np.int64(10))
