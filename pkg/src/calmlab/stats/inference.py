"""Hypothesis tests: Shapiro-Wilk, paired t, Wilcoxon signed-rank,
one-way ANOVA with Tukey HSD, Kruskal-Wallis, and balanced 2x2 ANOVA.

Every result records the method actually used so the downstream report
is auditable (e.g. wilcoxon_exact vs wilcoxon_normal).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import special as sp
from ._wilcoxon import count_tails
from .tukey import studentized_range_sf

WILCOXON_EXACT_MAX_N = 25


class DegenerateDataError(ValueError):
    """Input has no variation where the test needs some."""


@dataclass(frozen=True)
class PairedSample:
    before: tuple[float, ...]
    after: tuple[float, ...]

    def __init__(self, before, after):
        object.__setattr__(self, "before", tuple(float(x) for x in before))
        object.__setattr__(self, "after", tuple(float(x) for x in after))
        if len(self.before) != len(self.after):
            raise ValueError("before and after must have equal length")
        if len(self.before) < 2:
            raise ValueError("need at least 2 pairs")

    def diffs(self) -> np.ndarray:
        return np.asarray(self.after) - np.asarray(self.before)


@dataclass(frozen=True)
class TestResult:
    statistic: float
    df: float | tuple[float, float] | None
    p: float
    method: str

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"p out of (0,1]: {self.p}")

    def as_dict(self) -> dict:
        df = list(self.df) if isinstance(self.df, tuple) else self.df
        return {"statistic": self.statistic, "df": df, "p": self.p, "method": self.method}


@dataclass(frozen=True)
class PairwiseResult:
    pair: tuple[str, str]
    statistic: float
    p: float
    method: str

    def as_dict(self) -> dict:
        return {"pair": list(self.pair), "statistic": self.statistic, "p": self.p, "method": self.method}


@dataclass(frozen=True)
class TwoWayResult:
    ss: dict
    df: dict
    F: dict
    p: dict

    def as_dict(self) -> dict:
        return {"ss": dict(self.ss), "df": dict(self.df), "F": dict(self.F), "p": dict(self.p)}


def _clamp_p(p: float) -> float:
    return min(1.0, max(p, 5e-324))


# -- Shapiro-Wilk (Royston's AS R94 approximation, n in [3, 50]) ------------

_SW_C1 = (0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056)
_SW_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)


def _sw_poly(c, u):
    return c[1] * u + c[2] * u**2 + c[3] * u**3 + c[4] * u**4 + c[5] * u**5


def shapiro_wilk(x) -> TestResult:
    """W statistic and approximate p for normality, 3 <= n <= 50."""
    x = np.sort(np.asarray(x, dtype=np.float64))
    n = x.size
    if not 3 <= n <= 50:
        raise ValueError(f"shapiro_wilk requires 3 <= n <= 50, got {n}")
    ssq = float(np.sum((x - x.mean()) ** 2))
    if ssq <= 1e-12 * max(1.0, x[-1] ** 2) * n:
        raise DegenerateDataError("degenerate sample (zero variance)")

    m = np.array([sp.normal_ppf((i - 0.375) / (n + 0.25)) for i in range(1, n + 1)])
    msq = float(np.sum(m * m))
    u = 1.0 / math.sqrt(n)
    a = np.empty(n)
    cn = m[-1] / math.sqrt(msq)
    an = cn + _sw_poly(_SW_C1, u)
    if n == 3:
        a[:] = (-math.sqrt(0.5), 0.0, math.sqrt(0.5))
    elif n <= 5:
        phi = (msq - 2.0 * m[-1] ** 2) / (1.0 - 2.0 * an**2)
        a[1:-1] = m[1:-1] / math.sqrt(phi)
        a[-1] = an
        a[0] = -an
    else:
        cn1 = m[-2] / math.sqrt(msq)
        an1 = cn1 + _sw_poly(_SW_C2, u)
        phi = (msq - 2.0 * m[-1] ** 2 - 2.0 * m[-2] ** 2) / (1.0 - 2.0 * an**2 - 2.0 * an1**2)
        a[2:-2] = m[2:-2] / math.sqrt(phi)
        a[-1] = an
        a[-2] = an1
        a[0] = -an
        a[1] = -an1

    w = float(np.dot(a, x) ** 2 / ssq)
    w = min(w, 1.0)

    if n == 3:
        p = 6.0 / math.pi * (math.asin(math.sqrt(w)) - math.asin(math.sqrt(0.75)))
        p = _clamp_p(max(p, 1e-300))
        return TestResult(statistic=w, df=float(n), p=p, method="shapiro")
    one_minus = max(1.0 - w, 1e-300)
    if n <= 11:
        gamma = -2.273 + 0.459 * n
        mu = 0.5440 - 0.39978 * n + 0.025054 * n**2 - 6.714e-4 * n**3
        sigma = math.exp(1.3822 - 0.77857 * n + 0.062767 * n**2 - 0.0020322 * n**3)
        arg = gamma - math.log(one_minus)
        if arg <= 0:
            return TestResult(statistic=w, df=float(n), p=_clamp_p(1e-300), method="shapiro")
        z = (-math.log(arg) - mu) / sigma
    else:
        ln_n = math.log(n)
        mu = -1.5861 - 0.31082 * ln_n - 0.083751 * ln_n**2 + 0.0038915 * ln_n**3
        sigma = math.exp(-0.4803 - 0.082676 * ln_n + 0.0030302 * ln_n**2)
        z = (math.log(one_minus) - mu) / sigma
    return TestResult(statistic=w, df=float(n), p=_clamp_p(sp.normal_sf(z)), method="shapiro")


# -- paired comparisons ------------------------------------------------------

def paired_t(s: PairedSample) -> TestResult:
    """Two-sided paired t test on after-before differences."""
    d = s.diffs()
    n = d.size
    sd = float(np.std(d, ddof=1))
    if sd <= 0.0:
        raise DegenerateDataError("zero-variance differences")
    t = float(np.mean(d) / (sd / math.sqrt(n)))
    p = _clamp_p(2.0 * sp.t_sf(abs(t), n - 1))
    return TestResult(statistic=t, df=float(n - 1), p=p, method="paired_t")


def _tie_ranks(absd: np.ndarray) -> np.ndarray:
    order = np.argsort(absd, kind="stable")
    ranks = np.empty(absd.size)
    sorted_vals = absd[order]
    i = 0
    while i < absd.size:
        j = i
        while j + 1 < absd.size and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def wilcoxon_signed_rank(s: PairedSample, exact_max_n: int = WILCOXON_EXACT_MAX_N) -> TestResult:
    """Two-sided signed-rank test; exact enumeration for n <= exact_max_n,
    normal approximation with tie and continuity corrections above."""
    d = s.diffs()
    d = d[d != 0.0]
    n = d.size
    if n == 0:
        raise DegenerateDataError("all differences are zero")
    absd = np.abs(d)
    ranks = _tie_ranks(absd)
    w_pos = float(np.sum(ranks[d > 0]))
    w_neg = float(np.sum(ranks[d < 0]))
    w = min(w_pos, w_neg)

    if n <= exact_max_n:
        c_lo, c_hi = count_tails(ranks, min(w_pos, w_neg), max(w_pos, w_neg))
        p = _clamp_p((c_lo + c_hi) / 2.0**n)
        return TestResult(statistic=w, df=float(n), p=p, method="wilcoxon_exact")

    mu = n * (n + 1) / 4.0
    tie_term = 0.0
    _, counts = np.unique(absd, return_counts=True)
    tie_term = float(np.sum(counts**3 - counts)) / 48.0
    var = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term
    if var <= 0:
        raise DegenerateDataError("zero variance under ties")
    z = (w - mu + 0.5) / math.sqrt(var)  # w <= mu, continuity toward mean
    p = _clamp_p(2.0 * sp.normal_cdf(z))
    return TestResult(statistic=w, df=float(n), p=p, method="wilcoxon_normal")


def percent_change(s2: float, s3: float) -> float:
    """100 * (s3 - s2) / s2."""
    if s2 == 0:
        raise ValueError("percent change undefined for s2 = 0")
    return 100.0 * (s3 - s2) / s2


# -- k-group comparisons -----------------------------------------------------

def _check_groups(groups):
    if len(groups) < 2:
        raise ValueError("need at least 2 groups")
    arrs = [np.asarray(g, dtype=np.float64) for g in groups]
    for g in arrs:
        if g.size < 2:
            raise DegenerateDataError("each group needs n >= 2")
    return arrs


@dataclass(frozen=True)
class OneWayAnova:
    test: TestResult
    pairwise: tuple[PairwiseResult, ...] = field(default=())

    def as_dict(self) -> dict:
        return {"test": self.test.as_dict(), "pairwise": [pw.as_dict() for pw in self.pairwise]}


def anova_oneway(groups, labels=None, posthoc: bool = True) -> OneWayAnova:
    """One-way fixed-effects ANOVA with all-pairs Tukey HSD post-hoc."""
    arrs = _check_groups(groups)
    k = len(arrs)
    ns = np.array([g.size for g in arrs])
    big_n = int(ns.sum())
    means = np.array([g.mean() for g in arrs])
    grand = float(np.concatenate(arrs).mean())
    ss_b = float(np.sum(ns * (means - grand) ** 2))
    ss_w = float(sum(np.sum((g - m) ** 2) for g, m in zip(arrs, means)))
    df_b, df_w = k - 1, big_n - k
    if ss_w <= 0:
        raise DegenerateDataError("zero within-group variance")
    ms_w = ss_w / df_w
    f = (ss_b / df_b) / ms_w
    p = _clamp_p(sp.f_sf(f, df_b, df_w)) if f > 0 else 1.0
    test = TestResult(statistic=f, df=(float(df_b), float(df_w)), p=p, method="anova1")

    pairs = []
    if posthoc:
        labels = labels or [f"g{i}" for i in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                se = math.sqrt(ms_w / 2.0 * (1.0 / ns[i] + 1.0 / ns[j]))
                q = abs(means[i] - means[j]) / se
                pq = _clamp_p(studentized_range_sf(q, k, df_w))
                pairs.append(PairwiseResult(pair=(labels[i], labels[j]), statistic=q, p=pq, method="tukey"))
    return OneWayAnova(test=test, pairwise=tuple(pairs))


def kruskal_wallis(groups, labels=None) -> TestResult:
    """Kruskal-Wallis H with tie correction; p via chi-square."""
    arrs = _check_groups(groups)
    pooled = np.concatenate(arrs)
    if np.all(pooled == pooled[0]):
        raise DegenerateDataError("all values identical")
    ranks = _tie_ranks(pooled)
    big_n = pooled.size
    h = 0.0
    start = 0
    for g in arrs:
        r = ranks[start : start + g.size]
        h += float(r.sum()) ** 2 / g.size
        start += g.size
    h = 12.0 / (big_n * (big_n + 1)) * h - 3.0 * (big_n + 1)
    _, counts = np.unique(pooled, return_counts=True)
    correction = 1.0 - float(np.sum(counts**3 - counts)) / (big_n**3 - big_n)
    if correction <= 0:
        raise DegenerateDataError("all values identical")
    h /= correction
    k = len(arrs)
    p = _clamp_p(sp.chi2_sf(h, k - 1)) if h > 0 else 1.0
    return TestResult(statistic=h, df=float(k - 1), p=p, method="kruskal")


def kruskal_posthoc(groups, labels=None) -> tuple[PairwiseResult, ...]:
    """All-pairs two-group Kruskal-Wallis (rank-based) follow-up."""
    arrs = _check_groups(groups)
    labels = labels or [f"g{i}" for i in range(len(arrs))]
    out = []
    for i in range(len(arrs)):
        for j in range(i + 1, len(arrs)):
            try:
                r = kruskal_wallis([arrs[i], arrs[j]])
                out.append(PairwiseResult(pair=(labels[i], labels[j]), statistic=r.statistic, p=r.p, method="kruskal"))
            except DegenerateDataError:
                out.append(PairwiseResult(pair=(labels[i], labels[j]), statistic=0.0, p=1.0, method="kruskal"))
    return tuple(out)


def anova_twoway_2x2(cells: dict) -> TwoWayResult:
    """Balanced 2x2 ANOVA by cell-mean decomposition.

    ``cells`` maps (factor_a, factor_b) boolean pairs to value lists.
    Unbalanced designs are rejected.
    """
    keys = {(bool(a), bool(b)) for a, b in cells.keys()}
    if keys != {(False, False), (False, True), (True, False), (True, True)}:
        raise ValueError("cells must cover exactly the four (a, b) combinations")
    data = {(bool(a), bool(b)): np.asarray(v, dtype=np.float64) for (a, b), v in cells.items()}
    sizes = {k: v.size for k, v in data.items()}
    n = next(iter(sizes.values()))
    if any(sz != n for sz in sizes.values()):
        raise ValueError("unbalanced design: cell sizes differ")
    if n < 2:
        raise DegenerateDataError("each cell needs n >= 2")

    grand = float(np.concatenate(list(data.values())).mean())
    cell_means = {k: float(v.mean()) for k, v in data.items()}
    a_means = {a: 0.5 * (cell_means[(a, False)] + cell_means[(a, True)]) for a in (False, True)}
    b_means = {b: 0.5 * (cell_means[(False, b)] + cell_means[(True, b)]) for b in (False, True)}

    ss_a = ss_b = ss_ab = ss_w = ss_t = 0.0
    for (a, b), v in data.items():
        ss_a += n * (a_means[a] - grand) ** 2
        ss_b += n * (b_means[b] - grand) ** 2
        ss_ab += n * (cell_means[(a, b)] - a_means[a] - b_means[b] + grand) ** 2
        ss_w += float(np.sum((v - cell_means[(a, b)]) ** 2))
        ss_t += float(np.sum((v - grand) ** 2))

    df_w = 4 * (n - 1)
    if ss_w <= 0:
        raise DegenerateDataError("zero within-cell variance")
    ms_w = ss_w / df_w
    f = {eff: ss / ms_w for eff, ss in (("A", ss_a), ("B", ss_b), ("AB", ss_ab))}
    p = {eff: (_clamp_p(sp.f_sf(fv, 1, df_w)) if fv > 0 else 1.0) for eff, fv in f.items()}
    return TwoWayResult(
        ss={"A": ss_a, "B": ss_b, "AB": ss_ab, "within": ss_w, "total": ss_t},
        df={"A": 1.0, "B": 1.0, "AB": 1.0, "within": float(df_w), "total": float(4 * n - 1)},
        F=f,
        p=p,
    )
