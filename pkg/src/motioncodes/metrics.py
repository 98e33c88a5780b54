"""Distance metrics over motion codes and pairwise-distance utilities.

Two metrics are provided. ``hamming`` counts differing bits. The
``weighted_distance`` prices disagreements by mechanical importance
instead of bit count: contact and structural bits carry weight alpha
each, trajectory degrees of freedom carry beta per component (halved
when both motions move but with different DOF, since some motion is
shared), and the recurrence and tool bits carry a unit penalty.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .codec import MotionCode, TrajectoryDescriptor, format_code
from .registry import LabelRegistry

Metric = Callable[[MotionCode, MotionCode], float]

# Contact, engagement, duration, and both structural outcomes.
CONTACT_STRUCTURAL_BITS = slice(0, 7)
# Recurrence + DOF fields for both sides.
TRAJECTORY_BITS = slice(7, 17)


@dataclass(frozen=True)
class WeightConfig:
    """Penalty weights for the taxonomy-aware distance.

    ``alpha`` prices each differing contact/structural bit, ``beta``
    prices each trajectory DOF component that disagrees (halved when
    both sides move), and ``unit`` prices the recurrence and tool bits.
    All weights must be non-negative; a zero weight yields a pseudometric
    in which distinct codes can sit at distance zero.
    """

    alpha: float = 1.0
    beta: float = 1.0
    unit: float = 1.0

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "unit"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @classmethod
    def contact_priority(cls) -> "WeightConfig":
        """Emphasize what the motion does over how it moves."""
        return cls(alpha=4.0, beta=1.0, unit=1.0)

    @classmethod
    def trajectory_priority(cls) -> "WeightConfig":
        """Emphasize how the motion moves over what it does."""
        return cls(alpha=1.0, beta=4.0, unit=1.0)


def hamming(a: MotionCode, b: MotionCode) -> int:
    """Number of bit positions at which two codes differ."""
    return sum(x != y for x, y in zip(format_code(a), format_code(b)))


def _dof_cost(dof_a: int, dof_b: int, beta: float) -> float:
    if dof_a == dof_b:
        return 0.0
    if dof_a == 0 or dof_b == 0:
        return beta
    return beta / 2.0


def _trajectory_cost(
    a: TrajectoryDescriptor, b: TrajectoryDescriptor, beta: float, unit: float
) -> float:
    cost = unit * (a.recurrent != b.recurrent)
    cost += _dof_cost(a.prismatic_dof, b.prismatic_dof, beta)
    cost += _dof_cost(a.revolute_dof, b.revolute_dof, beta)
    return cost


def weighted_distance(
    a: MotionCode,
    b: MotionCode,
    weights: WeightConfig | None = None,
    *,
    alpha_contact_only: bool = False,
    trajectory_bitwise: bool = False,
) -> float:
    """Mechanically weighted distance between two motion codes.

    With ``alpha_contact_only`` the alpha weight covers only bits 0-2 and
    the structural bits fall back to the unit penalty. With
    ``trajectory_bitwise`` the DOF fields are compared bit by bit at unit
    cost instead of per component; at all-ones weights this reduces the
    whole metric to plain Hamming distance.
    """
    w = weights if weights is not None else WeightConfig()
    bits_a, bits_b = format_code(a), format_code(b)

    def differing(region: slice) -> int:
        return sum(x != y for x, y in zip(bits_a[region], bits_b[region]))

    if alpha_contact_only:
        distance = w.alpha * differing(slice(0, 3)) + w.unit * differing(slice(3, 7))
    else:
        distance = w.alpha * differing(CONTACT_STRUCTURAL_BITS)
    if trajectory_bitwise:
        distance += w.unit * differing(TRAJECTORY_BITS)
    else:
        distance += _trajectory_cost(a.active_trajectory, b.active_trajectory, w.beta, w.unit)
        distance += _trajectory_cost(a.passive_trajectory, b.passive_trajectory, w.beta, w.unit)
    distance += w.unit * (a.with_tool != b.with_tool)
    return float(distance)


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise distances between labeled items.

    The value array is stored read-only; instances are safe to share.
    """

    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("labels must be unique")
        if values.shape != (n, n):
            raise ValueError(f"values must have shape ({n}, {n}), got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("distances must be finite")
        if np.any(values < 0):
            raise ValueError("distances must be non-negative")
        if not np.array_equal(values, values.T):
            raise ValueError("distance matrix must be exactly symmetric")
        if np.any(np.diag(values) != 0):
            raise ValueError("diagonal must be zero")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", tuple(self.labels))

    def __len__(self) -> int:
        return len(self.labels)

    def distance(self, label_a: str, label_b: str) -> float:
        i = self.labels.index(label_a)
        j = self.labels.index(label_b)
        return float(self.values[i, j])

    def to_csv_text(self) -> str:
        """CSV with a label header row and six-decimal values."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["label", *self.labels])
        for label, row in zip(self.labels, self.values):
            writer.writerow([label, *(f"{value:.6f}" for value in row)])
        return buffer.getvalue()

    def save_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv_text(), encoding="utf-8")


def distance_matrix(registry: LabelRegistry, metric: Metric = hamming) -> DistanceMatrix:
    """Pairwise distances between all registry labels under a metric.

    Each unordered pair is evaluated once and mirrored, so the result is
    exactly symmetric even if the metric itself rounds asymmetrically.
    """
    codes = registry.codes
    n = len(codes)
    values = np.zeros((n, n), dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            d = float(metric(codes[i], codes[j]))
            values[i, j] = d
            values[j, i] = d
    return DistanceMatrix(registry.labels, values)


def nearest(
    query: str | MotionCode,
    registry: LabelRegistry,
    metric: Metric = hamming,
    k: int = 1,
) -> list[tuple[str, float]]:
    """The k nearest registry labels to a label or a raw code.

    A label query never returns itself (aliases at distance zero do
    appear). Ties keep registry order; k is clamped to the candidates.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if isinstance(query, str):
        code = registry.code_for_label(query)
        exclude = query
    else:
        code = query
        exclude = None
    candidates = [
        (label, float(metric(code, entry))) for label, entry in registry if label != exclude
    ]
    candidates.sort(key=lambda pair: pair[1])
    return candidates[:k]


def consolidate(registry: LabelRegistry) -> list[list[str]]:
    """Partition registry labels into alias groups sharing one code.

    Groups (and labels within each group) keep first-appearance order.
    """
    groups: dict[str, list[str]] = {}
    for label, code in registry:
        groups.setdefault(format_code(code), []).append(label)
    return list(groups.values())
