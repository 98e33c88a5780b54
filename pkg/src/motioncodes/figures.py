"""Matplotlib figure rendering for analysis reports and embeddings.

Figures are written straight to files; the non-interactive Agg backend
is forced so headless runs behave the same as desktop ones.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .embedding import Embedding2D
from .trajectory import PrismaticAnalysis, RevoluteAnalysis, Trajectory


def _bar_from_histogram(ax, histogram, title: str) -> None:
    centers = (histogram.bin_edges[:-1] + histogram.bin_edges[1:]) / 2.0
    ax.bar(centers, histogram.counts, width=np.diff(histogram.bin_edges), edgecolor="white")
    ax.set_xlim(0, 180)
    ax.set_xlabel("angle (deg)")
    ax.set_ylabel("steps")
    ax.set_title(title, fontsize=9)


def save_prismatic_figure(traj: Trajectory, analysis: PrismaticAnalysis, path: str | Path) -> Path:
    """Trajectory in the top two PCs plus velocity-alignment histograms."""
    path = Path(path)
    fig, axes = plt.subplots(1, 4, figsize=(16, 4))
    positions = traj.positions - traj.positions.mean(axis=0)
    projected = positions @ analysis.components[:2].T
    axes[0].plot(projected[:, 0], projected[:, 1], "-", lw=0.8, alpha=0.7)
    axes[0].scatter(projected[:, 0], projected[:, 1], s=6)
    axes[0].set_xlabel("PC1 (m)")
    axes[0].set_ylabel("PC2 (m)")
    axes[0].set_title(
        "translation, ratios "
        + "/".join(f"{ratio:.2f}" for ratio in analysis.variance_ratios)
        + f", dof {analysis.dof}",
        fontsize=9,
    )
    axes[0].set_aspect("equal", adjustable="datalim")
    for index, histogram in enumerate(analysis.alignment_histograms):
        _bar_from_histogram(axes[index + 1], histogram, f"velocity vs PC{index + 1}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_revolute_figure(analysis: RevoluteAnalysis, path: str | Path) -> Path:
    """Per-axis cumulative rotation plus axis-similarity histograms."""
    path = Path(path)
    fig, axes = plt.subplots(1, 4, figsize=(16, 4))
    defined = ~np.isnan(analysis.axes[:, 0])
    steps = np.arange(len(analysis.angles))
    for axis_index, tool_axis in enumerate(analysis.tool_axes):
        contributions = np.zeros(len(analysis.angles))
        contributions[defined] = analysis.angles[defined] * (analysis.axes[defined] @ tool_axis)
        axes[0].plot(steps, np.degrees(np.cumsum(contributions)), label=f"axis {axis_index + 1}")
    axes[0].set_xlabel("step")
    axes[0].set_ylabel("cumulative rotation (deg)")
    axes[0].set_title(f"rotation per tool axis, dof {analysis.dof}", fontsize=9)
    axes[0].legend(fontsize=8)
    for index, histogram in enumerate(analysis.axis_similarity_histograms):
        _bar_from_histogram(axes[index + 1], histogram, f"K vs tool axis {index + 1}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_embedding_figure(embedding: Embedding2D, path: str | Path, title: str | None = None) -> Path:
    """Scatter of the 2-D layout with one annotation per label."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(9, 9))
    ax.scatter(embedding.coordinates[:, 0], embedding.coordinates[:, 1], s=18)
    for label, (x, y) in zip(embedding.labels, embedding.coordinates):
        ax.annotate(label, (x, y), textcoords="offset points", xytext=(4, 2), fontsize=7)
    ax.set_xlabel("t-SNE 1")
    ax.set_ylabel("t-SNE 2")
    if title:
        ax.set_title(title, fontsize=10)
    ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_analysis_figures(
    traj: Trajectory,
    prismatic: PrismaticAnalysis,
    revolute: RevoluteAnalysis,
    directory: str | Path,
    stem: str = "analysis",
) -> list[Path]:
    """Render both per-recording figures into a directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    return [
        save_prismatic_figure(traj, prismatic, directory / f"{stem}_prismatic.png"),
        save_revolute_figure(revolute, directory / f"{stem}_revolute.png"),
    ]
