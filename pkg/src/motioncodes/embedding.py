"""Exact t-SNE over precomputed distances, plus PCA reduction.

The t-SNE here is the exact O(n^2) formulation: per-point Gaussian
bandwidths found by binary search so each conditional distribution's
Shannon entropy matches log(perplexity), symmetrized affinities, early
exaggeration, and plain gradient descent with momentum and per-parameter
adaptive gains. No tree or interpolation approximations, and strictly
sequential accumulation, so runs are bit-reproducible for a given seed.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .errors import EmbeddingError
from .metrics import DistanceMatrix

PROBABILITY_FLOOR = 1e-12
ENTROPY_TOL = 1e-5
MAX_BISECTIONS = 64


@dataclass(frozen=True)
class TsneParams:
    """t-SNE hyperparameters.

    Defaults follow the common reference implementation: 1000 iterations
    at learning rate 200, early exaggeration for the first 250, momentum
    0.5 switching to 0.8 at iteration 250.
    """

    perplexity: float = 12.0
    early_exaggeration: float = 36.0
    exaggeration_iters: int = 250
    total_iters: int = 1000
    learning_rate: float = 200.0
    initial_momentum: float = 0.5
    final_momentum: float = 0.8
    momentum_switch_iter: int = 250
    seed: int = 0

    def __post_init__(self) -> None:
        if self.perplexity <= 0:
            raise EmbeddingError("perplexity must be positive")
        if self.early_exaggeration <= 0:
            raise EmbeddingError("early_exaggeration must be positive")
        if self.learning_rate <= 0:
            raise EmbeddingError("learning_rate must be positive")
        if self.total_iters < 1:
            raise EmbeddingError("total_iters must be at least 1")
        if self.exaggeration_iters < 0 or self.exaggeration_iters > self.total_iters:
            raise EmbeddingError("exaggeration_iters must lie in [0, total_iters]")

    def check_feasible(self, n: int) -> None:
        if n < 4:
            raise EmbeddingError(f"t-SNE needs at least 4 points, got {n}")
        if self.perplexity >= (n - 1) / 3:
            raise EmbeddingError(
                f"perplexity {self.perplexity} is infeasible for {n} points; "
                f"it must be below (n - 1) / 3 = {(n - 1) / 3:.3f}"
            )


@dataclass(frozen=True)
class Embedding2D:
    """A 2-D layout of labeled points with its optimization trace."""

    labels: tuple[str, ...]
    coordinates: np.ndarray
    kl_trace: np.ndarray

    def __post_init__(self) -> None:
        coordinates = np.array(self.coordinates, dtype=float)
        trace = np.array(self.kl_trace, dtype=float)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        if coordinates.shape != (len(self.labels), 2):
            raise ValueError(f"coordinates must be ({len(self.labels)}, 2)")
        if not np.all(np.isfinite(coordinates)):
            raise ValueError("coordinates must be finite")
        if not np.all(np.isfinite(trace)):
            raise ValueError("kl_trace must be finite")
        coordinates.flags.writeable = False
        trace.flags.writeable = False
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "coordinates", coordinates)
        object.__setattr__(self, "kl_trace", trace)

    @property
    def final_kl(self) -> float:
        return float(self.kl_trace[-1])

    def to_csv_text(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["label", "x", "y"])
        for label, (x, y) in zip(self.labels, self.coordinates):
            writer.writerow([label, f"{x:.6f}", f"{y:.6f}"])
        return buffer.getvalue()

    def save_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv_text(), encoding="utf-8")

    def to_svg_text(self, *, size: int = 800, margin: float = 60.0) -> str:
        """Scatter plot as a standalone SVG with one circle and one text
        label per point, uniformly styled."""
        span = self.coordinates.max(axis=0) - self.coordinates.min(axis=0)
        center = (self.coordinates.max(axis=0) + self.coordinates.min(axis=0)) / 2.0
        scale = (size - 2.0 * margin) / max(float(span.max()), 1e-9)
        lines = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" '
            f'width="{size}" height="{size}">',
            f'<rect width="{size}" height="{size}" fill="white"/>',
            '<g font-family="sans-serif" font-size="10" fill="#202020">',
        ]
        for label, point in zip(self.labels, self.coordinates):
            x = (point[0] - center[0]) * scale + size / 2.0
            # SVG y grows downward; flip so the layout keeps its orientation.
            y = (center[1] - point[1]) * scale + size / 2.0
            lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#3a6ea5"/>')
            lines.append(f'<text x="{x + 6:.2f}" y="{y + 3:.2f}">{escape(label)}</text>')
        lines.append("</g>")
        lines.append("</svg>")
        return "\n".join(lines) + "\n"

    def save_svg(self, path: str | Path) -> None:
        Path(path).write_text(self.to_svg_text(), encoding="utf-8")

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "coordinates": [[float(x), float(y)] for x, y in self.coordinates],
            "final_kl": self.final_kl,
            "kl_trace": [float(value) for value in self.kl_trace],
        }


def _conditional_probabilities(squared: np.ndarray, perplexity: float) -> np.ndarray:
    """Per-row Gaussian affinities whose entropy matches log(perplexity).

    For each point the precision beta is bisected (doubling upward while
    unbounded) until the conditional distribution's Shannon entropy is
    within 1e-5 of the target, or 64 steps pass.
    """
    n = len(squared)
    target = math.log(perplexity)
    conditional = np.zeros((n, n))
    indices = np.arange(n)
    for i in range(n):
        others = indices[indices != i]
        d = squared[i, others]
        beta, lo, hi = 1.0, 0.0, math.inf
        probs = np.full(len(others), 1.0 / len(others))
        for _ in range(MAX_BISECTIONS):
            weights = np.exp(-d * beta)
            total = weights.sum()
            if total <= 0.0:
                hi = beta
                beta = (lo + hi) / 2.0
                continue
            probs = weights / total
            nonzero = probs > 0.0
            entropy = float(-np.sum(probs[nonzero] * np.log(probs[nonzero])))
            if abs(entropy - target) < ENTROPY_TOL:
                break
            if entropy > target:
                lo = beta
                beta = beta * 2.0 if math.isinf(hi) else (lo + hi) / 2.0
            else:
                hi = beta
                beta = (lo + hi) / 2.0
        conditional[i, others] = probs
    return conditional


def _joint_probabilities(distances: np.ndarray, perplexity: float) -> np.ndarray:
    conditional = _conditional_probabilities(distances**2, perplexity)
    joint = (conditional + conditional.T) / (2.0 * len(conditional))
    return np.maximum(joint, PROBABILITY_FLOOR)


def _low_dim_affinities(coordinates: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    deltas = coordinates[:, None, :] - coordinates[None, :, :]
    kernel = 1.0 / (1.0 + np.sum(deltas**2, axis=2))
    np.fill_diagonal(kernel, 0.0)
    q = np.maximum(kernel / kernel.sum(), PROBABILITY_FLOOR)
    return q, kernel


def tsne(
    distances: DistanceMatrix,
    params: TsneParams | None = None,
    *,
    init: np.ndarray | None = None,
) -> Embedding2D:
    """Embed a distance matrix into 2-D with exact t-SNE.

    Distances are squared inside the Gaussian kernel. The initial layout
    is drawn from a seeded Gaussian (sigma = 1e-4) unless ``init``
    supplies explicit starting coordinates, which makes equivariance
    checks possible. The returned kl_trace holds the KL divergence
    against the true (non-exaggerated) affinities after every iteration.
    """
    if not isinstance(distances, DistanceMatrix):
        raise EmbeddingError("tsne needs a DistanceMatrix input")
    p = params if params is not None else TsneParams()
    n = len(distances)
    p.check_feasible(n)
    joint = _joint_probabilities(np.asarray(distances.values), p.perplexity)

    if init is None:
        rng = np.random.default_rng(p.seed)
        coordinates = rng.normal(0.0, 1e-4, size=(n, 2))
    else:
        coordinates = np.array(init, dtype=float)
        if coordinates.shape != (n, 2):
            raise EmbeddingError(f"init must have shape ({n}, 2), got {coordinates.shape}")

    velocity = np.zeros((n, 2))
    gains = np.ones((n, 2))
    trace = np.zeros(p.total_iters)
    for iteration in range(p.total_iters):
        target = joint * p.early_exaggeration if iteration < p.exaggeration_iters else joint
        q, kernel = _low_dim_affinities(coordinates)
        deltas = coordinates[:, None, :] - coordinates[None, :, :]
        gradient = 4.0 * np.einsum("ij,ij,ijk->ik", target - q, kernel, deltas)

        momentum = (
            p.initial_momentum if iteration < p.momentum_switch_iter else p.final_momentum
        )
        same_direction = (gradient > 0.0) == (velocity > 0.0)
        gains = np.where(same_direction, gains * 0.8, gains + 0.2)
        np.clip(gains, 0.01, None, out=gains)
        velocity = momentum * velocity - p.learning_rate * gains * gradient
        coordinates = coordinates + velocity
        coordinates = coordinates - coordinates.mean(axis=0)

        q, _ = _low_dim_affinities(coordinates)
        trace[iteration] = float(np.sum(joint * np.log(joint / q)))

    if not np.all(np.isfinite(coordinates)):
        raise EmbeddingError("optimization diverged to non-finite coordinates")
    return Embedding2D(distances.labels, coordinates, trace)


@dataclass(frozen=True)
class PcaReduction:
    """Mean-centered projection onto the top principal components."""

    vectors: np.ndarray
    variance_ratios: np.ndarray
    components: np.ndarray


def pca_reduce(vectors: Sequence[Sequence[float]] | np.ndarray, target_dims: int) -> PcaReduction:
    """Project mean-centered vectors onto their top principal components.

    ``variance_ratios`` reports, for each kept component, its share of
    the total variance across all components.
    """
    data = np.array(vectors, dtype=float)
    if data.ndim != 2 or data.size == 0:
        raise EmbeddingError("pca_reduce needs a non-empty 2-D array of vectors")
    n, d = data.shape
    if not 1 <= target_dims <= min(n, d):
        raise EmbeddingError(
            f"target_dims must lie in [1, min(n, d)] = [1, {min(n, d)}], got {target_dims}"
        )
    centered = data - data.mean(axis=0)
    _, singular, rows = np.linalg.svd(centered, full_matrices=False)
    variances = singular**2
    total = float(variances.sum())
    ratios = variances / total if total > 0.0 else np.zeros_like(variances)
    components = rows[:target_dims]
    return PcaReduction(
        vectors=centered @ components.T,
        variance_ratios=ratios[:target_dims],
        components=components,
    )
