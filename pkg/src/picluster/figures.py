"""Figure rendering for the CLI report paths.

All figures are written straight to files with the Agg backend; nothing
here opens a window. Rendering sits beside the delimited outputs so a run
directory is self-describing.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .data import DataSet


def save_cluster_scatter(d: DataSet, labels: np.ndarray, path: str | Path) -> bool:
    """Scatter the points colored by cluster id. Only 2-D data is drawn."""
    if d.m != 2:
        return False
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(d.points[:, 0], d.points[:, 1], c=labels, s=8, cmap="tab10")
    ax.set_title(d.name or "clusters")
    ax.set_aspect("equal")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return True


def save_phase_bars(report: dict, path: str | Path) -> None:
    """Mean seconds per pipeline phase, one bar each."""
    runs = report["runs"]
    phases = list(runs[0]["phases"])
    means = [sum(r["phases"][ph] for r in runs) / len(runs) for ph in phases]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(phases, means, color="steelblue")
    ax.set_ylabel("seconds")
    share = 100.0 * report["affinity_share"]
    ax.set_title(f"{report['dataset']} n={report['n']} ({report['backend']}), "
                 f"affinity {share:.1f}% of total")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def save_quality_curves(rows: list[dict], path: str | Path) -> None:
    """Validity indices versus subsample fraction with one-sigma error bars."""
    fracs = [r["fraction"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.errorbar(fracs, [r["ari_mean"] for r in rows],
                yerr=[r["ari_std"] for r in rows], marker="o", label="adjusted Rand")
    ax.errorbar(fracs, [r["jaccard_mean"] for r in rows],
                yerr=[r["jaccard_std"] for r in rows], marker="s", label="Jaccard")
    ax.set_xscale("log")
    ax.set_xlabel("subsample fraction")
    ax.set_ylabel("index value")
    ax.set_ylim(-0.05, 1.05)
    ax.legend()
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
