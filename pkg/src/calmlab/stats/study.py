"""Full analysis pipeline over the session-export table.

For each measure: per-group normality screening on the S3-S2 differences
chooses paired t vs Wilcoxon; percent changes feed a between-group
one-way ANOVA (Kruskal-Wallis when any group fails normality) with
all-pairs post-hoc; and a balanced 2x2 ANOVA tests the personalization
and biofeedback main effects plus their interaction.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .inference import (
    DegenerateDataError,
    PairedSample,
    anova_oneway,
    anova_twoway_2x2,
    kruskal_posthoc,
    kruskal_wallis,
    paired_t,
    percent_change,
    shapiro_wilk,
    wilcoxon_signed_rank,
)

EXPORT_HEADER = (
    "pid,pers,bio,sdnn_s2,sdnn_s3,res_s2,res_s3,rrs_s2,rrs_s3,"
    "stai_s2,stai_s3,fss,relevance,ipq_gp,ipq_sp,ipq_inv,ipq_real"
)
EXPORT_COLUMNS = tuple(EXPORT_HEADER.split(","))

MEASURES = {
    "SDNN": ("sdnn_s2", "sdnn_s3"),
    "RES": ("res_s2", "res_s3"),
    "RRS": ("rrs_s2", "rrs_s3"),
    "STAI": ("stai_s2", "stai_s3"),
}

CELL_ORDER = ("PB", "PN", "NB", "NN")


class SchemaError(ValueError):
    """Export table is missing a required column."""


def condition_label(pers: bool, bio: bool) -> str:
    return ("P" if pers else "N") + ("B" if bio else "N")


def load_table(source) -> list[dict]:
    """Rows from a CSV path/text or an already-parsed list of dicts."""
    if isinstance(source, list):
        rows = source
    else:
        path = Path(source)
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError("empty table")
    missing = [c for c in EXPORT_COLUMNS if c not in rows[0]]
    if missing:
        raise SchemaError(f"missing columns: {', '.join(missing)}")
    out = []
    for r in rows:
        row = {"pid": str(r["pid"]), "pers": bool(int(r["pers"])), "bio": bool(int(r["bio"]))}
        for c in EXPORT_COLUMNS[3:]:
            row[c] = float(r[c])
        out.append(row)
    return out


def _result_or_note(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs), None
    except DegenerateDataError as exc:
        return None, str(exc)


def _summary(values: np.ndarray) -> dict:
    q1, med, q3 = np.percentile(values, [25, 50, 75])
    return {
        "n": int(values.size),
        "mean": float(values.mean()),
        "sd": float(values.std(ddof=1)) if values.size > 1 else 0.0,
        "min": float(values.min()),
        "q1": float(q1),
        "median": float(med),
        "q3": float(q3),
        "max": float(values.max()),
    }


def _analyze_measure(cells: dict[str, dict[str, np.ndarray]], alpha: float) -> dict:
    within = {}
    for cell in CELL_ORDER:
        s2, s3 = cells[cell]["s2"], cells[cell]["s3"]
        diffs = s3 - s2
        sw, sw_note = _result_or_note(shapiro_wilk, diffs)
        entry = {"shapiro": sw.as_dict() if sw else None, "note": sw_note, "mean_diff": float(diffs.mean())}
        if sw is None:
            entry["test"] = None
        else:
            sample = PairedSample(before=s2, after=s3)
            if sw.p > alpha:
                test, note = _result_or_note(paired_t, sample)
            else:
                test, note = _result_or_note(wilcoxon_signed_rank, sample)
            entry["test"] = test.as_dict() if test else None
            entry["note"] = note
        within[cell] = entry

    pct = {cell: np.array([percent_change(a, b) for a, b in zip(cells[cell]["s2"], cells[cell]["s3"])])
           for cell in CELL_ORDER}
    pct_summary = {cell: _summary(pct[cell]) for cell in CELL_ORDER}

    groups = [pct[cell] for cell in CELL_ORDER]
    normal = True
    for cell in CELL_ORDER:
        sw, _ = _result_or_note(shapiro_wilk, pct[cell])
        if sw is None or sw.p <= alpha:
            normal = False
            break
    between: dict = {"normal": normal}
    if normal:
        ow, note = _result_or_note(anova_oneway, groups, labels=list(CELL_ORDER))
        between["test"] = ow.test.as_dict() if ow else None
        between["pairwise"] = [pw.as_dict() for pw in ow.pairwise] if ow else []
        between["note"] = note
    else:
        kw, note = _result_or_note(kruskal_wallis, groups, labels=list(CELL_ORDER))
        between["test"] = kw.as_dict() if kw else None
        between["pairwise"] = [pw.as_dict() for pw in kruskal_posthoc(groups, labels=list(CELL_ORDER))] if kw else []
        between["note"] = note

    cells_2x2 = {}
    for cell in CELL_ORDER:
        pers = cell[0] == "P"
        bio = cell[1] == "B"
        cells_2x2[(pers, bio)] = pct[cell]
    twoway, tw_note = _result_or_note(anova_twoway_2x2, cells_2x2)

    sig = {
        "between": bool(between["test"] and between["test"]["p"] < alpha),
        "pers_main": bool(twoway and twoway.p["A"] < alpha),
        "bio_main": bool(twoway and twoway.p["B"] < alpha),
        "interaction": bool(twoway and twoway.p["AB"] < alpha),
    }
    return {
        "within": within,
        "percent_change": pct_summary,
        "between": between,
        "twoway": twoway.as_dict() if twoway else None,
        "twoway_note": tw_note,
        "significant": sig,
    }


def analyze_study(source, alpha: float = 0.05, measures=None) -> dict:
    """Run the full pipeline; returns a JSON-serializable report."""
    rows = load_table(source)
    wanted = tuple(measures) if measures else tuple(MEASURES)
    unknown = [m for m in wanted if m not in MEASURES]
    if unknown:
        raise ValueError(f"unknown measures: {unknown}")

    by_cell: dict[str, list[dict]] = {c: [] for c in CELL_ORDER}
    for r in rows:
        by_cell[condition_label(r["pers"], r["bio"])].append(r)
    for cell, members in by_cell.items():
        if len(members) < 2:
            raise ValueError(f"cell {cell} has fewer than 2 rows")

    report: dict = {
        "alpha": alpha,
        "n": len(rows),
        "cells": {c: len(v) for c, v in by_cell.items()},
        "measures": {},
    }
    for measure in wanted:
        c2, c3 = MEASURES[measure]
        cells = {
            cell: {
                "s2": np.array([r[c2] for r in by_cell[cell]]),
                "s3": np.array([r[c3] for r in by_cell[cell]]),
            }
            for cell in CELL_ORDER
        }
        report["measures"][measure] = _analyze_measure(cells, alpha)
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def report_text(report: dict) -> str:
    """Human-readable summary table."""
    lines = [f"study analysis (alpha={report['alpha']}, n={report['n']})"]
    for measure, m in report["measures"].items():
        lines.append("")
        lines.append(f"== {measure} ==")
        lines.append("  percent change by group (mean +/- sd):")
        for cell in CELL_ORDER:
            s = m["percent_change"][cell]
            lines.append(f"    {cell}: {s['mean']:+7.1f} +/- {s['sd']:5.1f}  (n={s['n']})")
        lines.append("  within-group S3 vs S2:")
        for cell in CELL_ORDER:
            w = m["within"][cell]
            if w["test"]:
                t = w["test"]
                lines.append(
                    f"    {cell}: {t['method']} stat={t['statistic']:.3f} p={t['p']:.4f}"
                )
            else:
                lines.append(f"    {cell}: skipped ({w['note']})")
        b = m["between"]
        if b["test"]:
            t = b["test"]
            df = t["df"]
            df_s = f"({df[0]:.0f},{df[1]:.0f})" if isinstance(df, list) else f"({df:.0f})"
            lines.append(f"  between groups: {t['method']}{df_s} stat={t['statistic']:.3f} p={t['p']:.4f}")
            for pw in b["pairwise"]:
                lines.append(f"    {pw['pair'][0]} vs {pw['pair'][1]}: p={pw['p']:.4f}")
        if m["twoway"]:
            tw = m["twoway"]
            for eff, name in (("A", "personalization"), ("B", "biofeedback"), ("AB", "interaction")):
                lines.append(
                    f"  2x2 {name}: F(1,{tw['df']['within']:.0f})={tw['F'][eff]:.3f} p={tw['p'][eff]:.4f}"
                )
    return "\n".join(lines) + "\n"


def plot_data_csv(report: dict) -> dict[str, str]:
    """Per-measure box/bar summary CSVs keyed by measure name."""
    out = {}
    for measure, m in report["measures"].items():
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["group", "n", "mean", "sd", "min", "q1", "median", "q3", "max"])
        for cell in CELL_ORDER:
            s = m["percent_change"][cell]
            writer.writerow([cell, s["n"], s["mean"], s["sd"], s["min"], s["q1"], s["median"], s["q3"], s["max"]])
        out[measure] = buf.getvalue()
    return out
