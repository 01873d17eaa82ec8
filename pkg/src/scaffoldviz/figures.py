"""Matplotlib summary figures for the report commands.

These complement the delimited outputs: the hyperblock report gets a
block-size chart annotated with purity, and the experiment report gets a
grouped accuracy chart with the cross-validation spread.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .evaluation import ExperimentReport
from .hyperblocks import PurityRow
from .render import DEFAULT_PALETTE


def save_purity_figure(
    rows: "list[PurityRow]",
    classes: "tuple[str, ...]",
    path: "str | Path",
    dataset_name: str = "",
) -> Path:
    color_for = {c: DEFAULT_PALETTE[i % len(DEFAULT_PALETTE)] for i, c in enumerate(classes)}
    fig, ax = plt.subplots(figsize=(9, 5))
    xs = np.arange(len(rows))
    counts = [r.sample_count for r in rows]
    colors = [color_for[r.majority_class] for r in rows]
    ax.bar(xs, counts, color=colors, edgecolor="black", linewidth=0.5)
    for x, r in zip(xs, rows):
        ax.annotate(
            f"{r.purity_pct:.1f}%",
            (x, r.sample_count),
            ha="center",
            va="bottom",
            fontsize=8,
        )
    ax.set_xticks(xs)
    ax.set_xticklabels([f"HB{r.block_index}" for r in rows])
    ax.set_ylabel("samples")
    title = "Hyperblock sizes and purity"
    if dataset_name:
        title += f" ({dataset_name})"
    ax.set_title(title)
    handles = [plt.Rectangle((0, 0), 1, 1, color=color_for[c]) for c in classes]
    ax.legend(handles, classes, title="majority class")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_experiment_figure(report: ExperimentReport, path: "str | Path") -> Path:
    fig, ax = plt.subplots(figsize=(8, 5))
    xs = np.arange(len(report.rows))
    width = 0.38
    cv_avg = [r.cv_average for r in report.rows]
    cv_err = [
        [r.cv_average - r.cv_min for r in report.rows],
        [r.cv_max - r.cv_average for r in report.rows],
    ]
    worst = [r.worst_split_accuracy for r in report.rows]
    ax.bar(
        xs - width / 2,
        cv_avg,
        width,
        yerr=cv_err,
        capsize=4,
        label=f"{report.k}-fold CV average",
        color="#377eb8",
    )
    ax.bar(xs + width / 2, worst, width, label="worst-split accuracy", color="#e41a1c")
    ax.set_xticks(xs)
    ax.set_xticklabels([r.classifier for r in report.rows])
    ax.set_ylabel("accuracy (%)")
    ax.set_ylim(0, 105)
    ax.set_title(
        f"CV vs worst-split accuracy ({report.dataset_name}, "
        f"validation n={report.validation_size})"
    )
    ax.legend(loc="lower right")
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
