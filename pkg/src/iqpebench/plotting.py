"""Render sweep results as figures.

The CSV is the data contract; these helpers only consume records (from
memory or from a CSV written by the harness) and save matplotlib figures
to files.  The x axis is the error-strength grid, except for collections
of records that vary only the block count n_p, which plot against n_p.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .harness import SweepRecord, read_csv

_MARKERS = ["o", "s", "^", "v", "D", "x", "+", "*"]


def _group_label(scenario: str, n_p: int) -> str:
    if scenario in ("parec", "parec_noisy"):
        return f"{scenario} (n_p={n_p})"
    return scenario


def plot_records(
    records: Sequence[SweepRecord],
    out_path: str | Path,
    title: str | None = None,
) -> Path:
    """Plot success rate with error bars, one curve per (scenario, n_p)."""
    if not records:
        raise ValueError("no records to plot")

    strengths = {max(r.epsilon1, r.epsilon2) for r in records}
    versus_np = len(strengths) == 1 and len({r.n_p for r in records}) > 1

    groups: dict[tuple[str, int], list[SweepRecord]] = {}
    for r in records:
        key = (r.scenario, 0 if versus_np else r.n_p)
        groups.setdefault(key, []).append(r)

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for i, ((scenario, n_p), rows) in enumerate(groups.items()):
        if versus_np:
            xs = [r.n_p for r in rows]
            label = scenario
        else:
            xs = [max(r.epsilon1, r.epsilon2) for r in rows]
            label = _group_label(scenario, n_p)
        ys = [r.success_rate for r in rows]
        errs = [r.std_err for r in rows]
        if not versus_np and len(set(xs)) == 1 and len(xs) > 1:
            # degenerate x (e.g. the ideal scenario): draw the mean level
            ax.axhline(sum(ys) / len(ys), linestyle="--", label=label)
            continue
        ax.errorbar(xs, ys, yerr=errs, marker=_MARKERS[i % len(_MARKERS)],
                    capsize=2, label=label)

    ax.set_xlabel("PAREC blocks per gap" if versus_np else "error strength")
    ax.set_ylabel("success probability")
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    out = Path(out_path)
    fig.savefig(out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return out


def plot_csv(
    csv_paths: Iterable[str | Path],
    out_path: str | Path,
    title: str | None = None,
) -> Path:
    """Plot one or more sweep CSVs into a single figure file."""
    records: list[SweepRecord] = []
    for p in csv_paths:
        records.extend(read_csv(p))
    return plot_records(records, out_path, title=title)
