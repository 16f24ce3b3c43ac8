"""Studentized range distribution for Tukey HSD p-values.

P(Q < q | k, df) is a double integral: the range probability of k iid
standard normals scaled by an independent chi-based factor s = chi_df /
sqrt(df). Both integrals are evaluated with fixed-order Gauss-Legendre
panels, which is plenty for post-hoc p-values (~1e-6 absolute).
"""

from __future__ import annotations

import math

import numpy as np

_Z_SPAN = 8.0
_INNER_NODES = 128
_OUTER_NODES = 96
_INF_DF = 1e6

_gl_inner = np.polynomial.legendre.leggauss(_INNER_NODES)
_gl_outer = np.polynomial.legendre.leggauss(_OUTER_NODES)


def _norm_cdf(z):
    return 0.5 * np.vectorize(math.erfc)(-z / math.sqrt(2.0))


def _range_cdf_unit(w: np.ndarray, k: int) -> np.ndarray:
    """P(range of k iid N(0,1) < w) for an array of widths w >= 0."""
    nodes, weights = _gl_inner
    lo = -_Z_SPAN
    hi = _Z_SPAN + np.maximum(w, 0.0)
    mid = 0.5 * (hi + lo)
    half = 0.5 * (hi - lo)
    z = mid[:, None] + half[:, None] * nodes[None, :]
    phi = np.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
    inner = _norm_cdf(z) - _norm_cdf(z - w[:, None])
    inner = np.clip(inner, 0.0, 1.0)
    integrand = phi * inner ** (k - 1)
    return np.clip(k * half * (integrand * weights[None, :]).sum(axis=1), 0.0, 1.0)


def studentized_range_cdf(q: float, k: int, df: float) -> float:
    """P(Q < q) for the studentized range with k groups and df error dof."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if df <= 0:
        raise ValueError("df must be positive")
    if q <= 0.0:
        return 0.0
    if df > _INF_DF:
        return float(_range_cdf_unit(np.array([q]), k)[0])

    # s = chi_df / sqrt(df); density g(s) below. Integrate over +/- 12 SD
    # of s around 1 (SD ~ 1/sqrt(2 df)).
    spread = 12.0 / math.sqrt(2.0 * df)
    s_lo = max(1e-9, 1.0 - spread)
    s_hi = 1.0 + spread
    nodes, weights = _gl_outer
    mid = 0.5 * (s_hi + s_lo)
    half = 0.5 * (s_hi - s_lo)
    s = mid + half * nodes
    ln_g = (
        0.5 * df * math.log(df) - math.lgamma(0.5 * df) - (0.5 * df - 1.0) * math.log(2.0)
        + (df - 1.0) * np.log(s) - 0.5 * df * s * s
    )
    g = np.exp(ln_g)
    p_inner = _range_cdf_unit(q * s, k)
    return float(np.clip(half * np.sum(weights * g * p_inner), 0.0, 1.0))


def studentized_range_sf(q: float, k: int, df: float) -> float:
    return 1.0 - studentized_range_cdf(q, k, df)
