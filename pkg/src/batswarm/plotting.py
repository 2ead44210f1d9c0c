"""Figures written next to bench/compare reports."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .experiments import ComparisonRow, RunRecord  # noqa: E402

COLORS = {"ba": "#1f77b4", "mba": "#d62728"}
LABELS = {"ba": "BA", "mba": "MBA"}

_STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
}


def _use_log(values: np.ndarray) -> bool:
    v = values[np.isfinite(values)]
    return v.size > 0 and np.all(v > 0) and v.max() / max(v.min(), 1e-300) > 100


def convergence_figure(records: Sequence[RunRecord], function: str, path) -> Path:
    """Mean incumbent-best curve per algorithm with a min/max band over runs."""
    path = Path(path)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3.0))
        all_vals = []
        for algo in ("ba", "mba"):
            recs = [r for r in records if r.function == function and r.algorithm == algo]
            if not recs:
                continue
            traces = np.array([r.result.trace for r in recs])
            it = np.arange(1, traces.shape[1] + 1)
            ax.plot(it, traces.mean(axis=0), color=COLORS[algo], lw=1.4, label=f"{LABELS[algo]} (n={len(recs)})")
            ax.fill_between(it, traces.min(axis=0), traces.max(axis=0), color=COLORS[algo], alpha=0.15, lw=0)
            all_vals.append(traces.ravel())
        if all_vals and _use_log(np.concatenate(all_vals)):
            ax.set_yscale("log")
        ax.set_xlabel("iteration")
        ax.set_ylabel("best fitness")
        ax.set_title(f"{function} convergence")
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def finals_figure(row: ComparisonRow, path) -> Path:
    path = Path(path)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(3.2, 3.0))
        bp = ax.boxplot([row.ba_finals, row.mba_finals], widths=0.5, patch_artist=True)
        ax.set_xticks([1, 2], ["BA", "MBA"])
        for patch, algo in zip(bp["boxes"], ("ba", "mba")):
            patch.set_facecolor(COLORS[algo])
            patch.set_alpha(0.35)
        if _use_log(np.asarray(row.ba_finals + row.mba_finals)):
            ax.set_yscale("log")
        ax.set_ylabel("final best fitness")
        ax.set_title(f"{row.function}  p = {row.rank_sum.p_value:.3g}")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def write_figures(out_dir, records: Sequence[RunRecord], rows: Sequence[ComparisonRow] = ()) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for fid in dict.fromkeys(r.function for r in records):
        written.append(convergence_figure(records, fid, out_dir / f"{fid}_convergence.png"))
    for row in rows:
        written.append(finals_figure(row, out_dir / f"{row.function}_finals.png"))
    return written
