"""Trajectory attribute extraction from 6-DOF pose recordings.

Recordings are CSV files of timestamped positions and orientations. The
analyses here reduce a recording to the three trajectory attributes a
motion code needs: prismatic degrees of freedom (how many principal
directions the translation occupies), revolute degrees of freedom (how
many tool axes accumulate significant rotation), and recurrence (whether
the dominant translation component repeats).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .codec import TrajectoryDescriptor
from .errors import TrajectoryError
from .rotations import DEGENERATE_ANGLE, axis_angle_from_matrix, quat_to_matrix

CSV_HEADER = "t,x,y,z,qw,qx,qy,qz"
QUAT_NORM_TOL = 1e-3
TOOL_AXES_TOL = 1e-9

# A motion-code trajectory attribute set is exactly a TrajectoryDescriptor;
# reusing the codec type keeps the 5-bit packing in one place.
TrajectoryAttributes = TrajectoryDescriptor


def _readonly(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class PoseSample:
    """One timestamped pose: position in meters, orientation as a unit
    quaternion (w, x, y, z). The quaternion must be within 1e-3 of unit
    norm and is renormalized exactly on construction."""

    t: float
    position: np.ndarray
    orientation: np.ndarray

    def __post_init__(self) -> None:
        position = np.array(self.position, dtype=float)
        orientation = np.array(self.orientation, dtype=float)
        if position.shape != (3,):
            raise TrajectoryError(f"position needs 3 components, got shape {position.shape}")
        if orientation.shape != (4,):
            raise TrajectoryError(f"orientation needs 4 components, got shape {orientation.shape}")
        norm = float(np.linalg.norm(orientation))
        if abs(norm - 1.0) > QUAT_NORM_TOL:
            raise TrajectoryError(f"quaternion norm {norm:.6g} deviates from 1 by more than {QUAT_NORM_TOL}")
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "position", _readonly(position))
        object.__setattr__(self, "orientation", _readonly(orientation / norm))


@dataclass(frozen=True)
class Trajectory:
    """An ordered pose recording plus the tool's principal frame.

    ``tool_axes`` rows are the tool axes expressed in the world frame;
    they default to the world axes and must be orthonormal.
    """

    samples: tuple[PoseSample, ...]
    tool_axes: np.ndarray | None = None

    def __post_init__(self) -> None:
        samples = tuple(self.samples)
        if len(samples) < 2:
            raise TrajectoryError(f"a trajectory needs at least 2 samples, got {len(samples)}")
        for index in range(1, len(samples)):
            if samples[index].t <= samples[index - 1].t:
                raise TrajectoryError(
                    f"t must increase strictly: sample {index} has t={samples[index].t!r} "
                    f"after t={samples[index - 1].t!r}"
                )
        axes = np.eye(3) if self.tool_axes is None else np.array(self.tool_axes, dtype=float)
        if axes.shape != (3, 3):
            raise TrajectoryError(f"tool_axes must be 3x3, got shape {axes.shape}")
        if not np.allclose(axes @ axes.T, np.eye(3), atol=TOOL_AXES_TOL, rtol=0.0):
            raise TrajectoryError("tool_axes rows must be orthonormal")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "tool_axes", _readonly(axes))

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def times(self) -> np.ndarray:
        return np.array([sample.t for sample in self.samples])

    @property
    def positions(self) -> np.ndarray:
        return np.array([sample.position for sample in self.samples])

    @property
    def quaternions(self) -> np.ndarray:
        return np.array([sample.orientation for sample in self.samples])

    @property
    def duration(self) -> float:
        return self.samples[-1].t - self.samples[0].t


def _parse_tool_axes(text: str, context: str) -> np.ndarray:
    tokens = text.replace(",", " ").split()
    if len(tokens) != 9:
        raise TrajectoryError(f"{context}: tool_axes needs 9 numbers, got {len(tokens)}")
    try:
        values = [float(token) for token in tokens]
    except ValueError as exc:
        raise TrajectoryError(f"{context}: {exc}") from None
    return np.array(values).reshape(3, 3)


def load_trajectory(path: str | Path) -> Trajectory:
    """Read a pose CSV into a validated Trajectory.

    The first non-comment line must be the header ``t,x,y,z,qw,qx,qy,qz``.
    A comment of the form ``# tool_axes: <9 numbers>`` (row-major) anywhere
    in the file overrides the default world-frame tool axes. All parse and
    validation failures report the offending line number.
    """
    path = Path(path)
    samples: list[PoseSample] = []
    tool_axes: np.ndarray | None = None
    header_seen = False
    with path.open(encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("tool_axes:"):
                    tool_axes = _parse_tool_axes(
                        body[len("tool_axes:"):], f"{path.name}:{lineno}"
                    )
                continue
            if not header_seen:
                if line.replace(" ", "") != CSV_HEADER:
                    raise TrajectoryError(
                        f"{path.name}:{lineno}: header must be {CSV_HEADER!r}, got {line!r}"
                    )
                header_seen = True
                continue
            fields = line.split(",")
            if len(fields) != 8:
                raise TrajectoryError(f"{path.name}:{lineno}: expected 8 fields, got {len(fields)}")
            try:
                values = [float(field) for field in fields]
            except ValueError as exc:
                raise TrajectoryError(f"{path.name}:{lineno}: {exc}") from None
            try:
                sample = PoseSample(values[0], np.array(values[1:4]), np.array(values[4:8]))
            except TrajectoryError as exc:
                raise TrajectoryError(f"{path.name}:{lineno}: {exc}") from None
            if samples and sample.t <= samples[-1].t:
                raise TrajectoryError(
                    f"{path.name}:{lineno}: t={sample.t!r} does not increase over previous "
                    f"t={samples[-1].t!r}"
                )
            samples.append(sample)
    if not header_seen:
        raise TrajectoryError(f"{path.name}: missing header line {CSV_HEADER!r}")
    if len(samples) < 2:
        raise TrajectoryError(f"{path.name}: needs at least 2 pose rows, got {len(samples)}")
    return Trajectory(tuple(samples), tool_axes)


@dataclass(frozen=True)
class AngleHistogram:
    """Counts of angles in degrees over 18 equal bins spanning [0, 180]."""

    bin_edges: np.ndarray
    counts: np.ndarray

    def to_dict(self) -> dict:
        return {
            "bin_edges_deg": [float(edge) for edge in self.bin_edges],
            "counts": [int(count) for count in self.counts],
        }


def _angle_histogram(angles_deg: np.ndarray, bins: int = 18) -> AngleHistogram:
    counts, edges = np.histogram(angles_deg, bins=bins, range=(0.0, 180.0))
    return AngleHistogram(_readonly(edges), _readonly(counts))


def _angles_to_axis_deg(vectors: np.ndarray, axis: np.ndarray) -> np.ndarray:
    cosines = np.clip(vectors @ axis, -1.0, 1.0)
    return np.degrees(np.arccos(cosines))


@dataclass(frozen=True)
class PrismaticAnalysis:
    """Principal-component view of the translation.

    ``components`` rows are unit PCs sorted by descending explained
    variance; ``variance_ratios`` sum to one. ``dof`` is the smallest
    number of PCs reaching the variance threshold, or zero when the
    whole trajectory moves less than the motion floor.
    """

    components: np.ndarray
    variance_ratios: np.ndarray
    dof: int
    alignment_histograms: tuple[AngleHistogram, AngleHistogram, AngleHistogram]
    total_std: float


def prismatic_analysis(
    traj: Trajectory,
    variance_threshold: float = 0.90,
    motion_floor: float = 1e-3,
) -> PrismaticAnalysis:
    """PCA of positions plus velocity-alignment histograms.

    The histogram for each PC bins the angles between the finite-difference
    velocity vectors and that PC, 18 bins over [0deg, 180deg]; steps with
    (numerically) zero displacement are skipped.
    """
    if not 0.0 < variance_threshold <= 1.0:
        raise ValueError("variance_threshold must lie in (0, 1]")
    if len(traj) < 3:
        raise TrajectoryError(f"prismatic analysis needs at least 3 samples, got {len(traj)}")
    positions = traj.positions
    centered = positions - positions.mean(axis=0)
    covariance = centered.T @ centered / len(positions)
    eigenvalues, eigenvectors = np.linalg.eigh(covariance)
    order = np.argsort(eigenvalues)[::-1]
    eigenvalues = np.clip(eigenvalues[order], 0.0, None)
    components = eigenvectors[:, order].T
    total_variance = float(eigenvalues.sum())
    if total_variance > 0.0:
        ratios = eigenvalues / total_variance
    else:
        ratios = np.full(3, 1.0 / 3.0)
    total_std = math.sqrt(total_variance)
    if total_std < motion_floor:
        dof = 0
    else:
        cumulative = np.cumsum(ratios)
        dof = int(np.searchsorted(cumulative, variance_threshold - 1e-12) + 1)
        dof = min(dof, 3)
    velocities = np.diff(positions, axis=0)
    speeds = np.linalg.norm(velocities, axis=1)
    moving = velocities[speeds > 1e-12]
    directions = moving / np.linalg.norm(moving, axis=1, keepdims=True) if len(moving) else moving
    histograms = tuple(
        _angle_histogram(_angles_to_axis_deg(directions, component)) for component in components
    )
    return PrismaticAnalysis(
        components=_readonly(components),
        variance_ratios=_readonly(ratios),
        dof=dof,
        alignment_histograms=histograms,
        total_std=total_std,
    )


@dataclass(frozen=True)
class RevoluteAnalysis:
    """Step-wise axis-angle view of the rotation.

    ``angles`` holds the rotation magnitude of each consecutive frame
    pair; ``axes`` the matching unit rotation axes (NaN where the step
    angle is too small to define one). ``cumulative_rotation`` is the
    signed accumulated rotation about each tool axis in radians; ``dof``
    counts the tool axes whose accumulated magnitude reaches the
    significance threshold.
    """

    angles: np.ndarray
    axes: np.ndarray
    axis_similarity_histograms: tuple[AngleHistogram, AngleHistogram, AngleHistogram]
    cumulative_rotation: np.ndarray
    dof: int
    tool_axes: np.ndarray


def revolute_analysis(traj: Trajectory, rotation_threshold_deg: float = 30.0) -> RevoluteAnalysis:
    """Accumulate relative rotations R_t^T R_{t+1} about the tool axes.

    Each step's axis K and angle theta come from the relative rotation
    between consecutive frames, so the signed contributions
    theta * (K . axis) add up over the recording.
    """
    if len(traj) < 2:
        raise TrajectoryError(f"revolute analysis needs at least 2 samples, got {len(traj)}")
    matrices = [quat_to_matrix(q) for q in traj.quaternions]
    step_count = len(matrices) - 1
    angles = np.zeros(step_count)
    axes = np.full((step_count, 3), np.nan)
    for index in range(step_count):
        relative = matrices[index].T @ matrices[index + 1]
        angle, axis = axis_angle_from_matrix(relative)
        angles[index] = angle
        if axis is not None:
            axes[index] = axis
    defined = ~np.isnan(axes[:, 0])
    cumulative = np.zeros(3)
    histograms = []
    for axis_index, tool_axis in enumerate(traj.tool_axes):
        contributions = angles[defined] * (axes[defined] @ tool_axis)
        cumulative[axis_index] = contributions.sum()
        histograms.append(_angle_histogram(_angles_to_axis_deg(axes[defined], tool_axis)))
    threshold = math.radians(rotation_threshold_deg)
    dof = int(np.count_nonzero(np.abs(cumulative) >= threshold))
    return RevoluteAnalysis(
        angles=_readonly(angles),
        axes=_readonly(axes),
        axis_similarity_histograms=tuple(histograms),
        cumulative_rotation=_readonly(cumulative),
        dof=min(dof, 3),
        tool_axes=traj.tool_axes,
    )


def recurrence_detect(
    traj: Trajectory,
    analysis: PrismaticAnalysis,
    min_period_count: int = 2,
    autocorr_threshold: float = 0.5,
) -> bool:
    """Detect repetition in the dominant translation component.

    Positions are projected onto PC1 and the normalized (biased)
    autocorrelation is scanned for a local maximum of at least
    ``autocorr_threshold`` at a non-zero lag short enough that the
    recording spans ``min_period_count`` periods. Degenerate or static
    trajectories are never recurrent.
    """
    if min_period_count < 1:
        raise ValueError("min_period_count must be at least 1")
    positions = traj.positions
    projected = (positions - positions.mean(axis=0)) @ analysis.components[0]
    projected = projected - projected.mean()
    energy = float(projected @ projected)
    n = len(projected)
    if energy < 1e-24 or n < 4:
        return False
    correlation = np.correlate(projected, projected, mode="full")[n - 1 :] / energy
    for lag in range(1, n - 2):
        if (n - 1) < min_period_count * lag:
            break
        if correlation[lag] < autocorr_threshold:
            continue
        if correlation[lag] >= correlation[lag - 1] and correlation[lag] >= correlation[lag + 1]:
            return True
    return False


def derive_trajectory_substring(
    traj: Trajectory,
    *,
    variance_threshold: float = 0.90,
    motion_floor: float = 1e-3,
    rotation_threshold_deg: float = 30.0,
    min_period_count: int = 2,
    autocorr_threshold: float = 0.5,
) -> tuple[TrajectoryAttributes, str]:
    """Run all three analyses and pack [recurrent][prismatic][revolute]."""
    prismatic = prismatic_analysis(traj, variance_threshold, motion_floor)
    revolute = revolute_analysis(traj, rotation_threshold_deg)
    recurrent = recurrence_detect(traj, prismatic, min_period_count, autocorr_threshold)
    attributes = TrajectoryAttributes(
        recurrent=recurrent,
        prismatic_dof=prismatic.dof,
        revolute_dof=revolute.dof,
    )
    return attributes, attributes.bits


def analysis_report(
    traj: Trajectory,
    *,
    variance_threshold: float = 0.90,
    motion_floor: float = 1e-3,
    rotation_threshold_deg: float = 30.0,
    min_period_count: int = 2,
    autocorr_threshold: float = 0.5,
) -> dict:
    """JSON-ready summary of all analyses for one recording."""
    prismatic = prismatic_analysis(traj, variance_threshold, motion_floor)
    revolute = revolute_analysis(traj, rotation_threshold_deg)
    recurrent = recurrence_detect(traj, prismatic, min_period_count, autocorr_threshold)
    attributes = TrajectoryAttributes(
        recurrent=recurrent,
        prismatic_dof=prismatic.dof,
        revolute_dof=revolute.dof,
    )
    return {
        "samples": len(traj),
        "duration_s": float(traj.duration),
        "prismatic": {
            "variance_ratios": [float(r) for r in prismatic.variance_ratios],
            "components": [[float(x) for x in row] for row in prismatic.components],
            "total_std_m": prismatic.total_std,
            "dof": prismatic.dof,
            "alignment_histograms": [h.to_dict() for h in prismatic.alignment_histograms],
        },
        "revolute": {
            "cumulative_rotation_deg": [float(np.degrees(v)) for v in revolute.cumulative_rotation],
            "dof": revolute.dof,
            "axis_similarity_histograms": [h.to_dict() for h in revolute.axis_similarity_histograms],
        },
        "recurrent": recurrent,
        "attributes": {
            "recurrent": attributes.recurrent,
            "prismatic_dof": attributes.prismatic_dof,
            "revolute_dof": attributes.revolute_dof,
        },
        "substring": attributes.bits,
    }
