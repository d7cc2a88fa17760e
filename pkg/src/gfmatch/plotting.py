"""Matplotlib figures for benchmark records.

``repetition_scatter`` orders instances by text repetition count;
``alphabet_scatter`` groups them by pattern alphabet size and sorts each
group by baseline time.  Both use a log time axis and mark the cutoff.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bench import BASELINE, HEURISTIC, PORTFOLIO, BenchRecord  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 11,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
    "svg.hashsalt": "gfmatch",
    "figure.dpi": 100,
}
MARKERS = {HEURISTIC: ("o", "#c0392b"), BASELINE: ("s", "#2c3e50"), PORTFOLIO: (".", "#27ae60")}


def _by_instance(records: Sequence[BenchRecord]) -> dict[int, dict[str, BenchRecord]]:
    rows: dict[int, dict[str, BenchRecord]] = {}
    for r in records:
        rows.setdefault(r.instance_id, {})[r.algorithm] = r
    return rows


def _draw(ax, order, rows, cutoff_ms):
    for name, (marker, colour) in MARKERS.items():
        xs, ys = [], []
        for x, iid in enumerate(order):
            rec = rows[iid].get(name)
            if rec is not None:
                xs.append(x)
                ys.append(max(rec.time_ms, 1e-3))
        if xs:
            ax.scatter(xs, ys, s=9 if name != PORTFOLIO else 4, marker=marker, color=colour,
                       label=name, alpha=0.75, linewidths=0)
    if cutoff_ms:
        ax.axhline(cutoff_ms, color="#7f7f7f", lw=0.8, ls="--")
    ax.set_yscale("log")
    ax.set_ylabel("wall time (ms)")
    ax.legend(loc="upper left", markerscale=2)


def _save(fig, path: str | Path) -> None:
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
    plt.close(fig)


def repetition_scatter(records: Sequence[BenchRecord], path: str | Path, cutoff_ms: float | None = None) -> None:
    rows = _by_instance(records)
    order = sorted(rows, key=lambda i: (next(iter(rows[i].values())).rep_count, i))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(8, 4))
        _draw(ax, order, rows, cutoff_ms)
        reps = [next(iter(rows[i].values())).rep_count for i in order]
        ax.set_xlabel(f"instances by text repetition count ({min(reps)}..{max(reps)})")
        _save(fig, path)


def alphabet_scatter(records: Sequence[BenchRecord], path: str | Path, cutoff_ms: float | None = None) -> None:
    rows = _by_instance(records)

    def key(i):
        row = rows[i]
        first = next(iter(row.values()))
        base = row.get(BASELINE)
        return (first.pat_sigma, base.time_ms if base else 0.0, i)

    order = sorted(rows, key=key)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(8, 4))
        _draw(ax, order, rows, cutoff_ms)
        sigmas = [key(i)[0] for i in order]
        for x in range(1, len(sigmas)):
            if sigmas[x] != sigmas[x - 1]:
                ax.axvline(x - 0.5, color="#bbbbbb", lw=0.8)
        ax.set_xlabel("instances by pattern alphabet size, then baseline time")
        _save(fig, path)


def plot_records(records: Sequence[BenchRecord], path: str | Path, kind: str = "repetitions",
                 cutoff_ms: float | None = None) -> None:
    if kind == "alphabet":
        alphabet_scatter(records, path, cutoff_ms)
    else:
        repetition_scatter(records, path, cutoff_ms)
