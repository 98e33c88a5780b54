import numpy as np
import pytest

import motioncodes as mc
from motioncodes.rotations import matrix_from_axis_angle, matrix_to_quat

IDENTITY_QUAT = np.array([1.0, 0.0, 0.0, 0.0])


@pytest.fixture(scope="session")
def registry():
    return mc.bundled_registry()


def make_trajectory(positions, quaternions=None, times=None, tool_axes=None):
    """Trajectory from raw arrays, with identity orientation by default."""
    positions = np.asarray(positions, dtype=float)
    n = len(positions)
    if quaternions is None:
        quaternions = [IDENTITY_QUAT] * n
    if times is None:
        times = np.arange(n, dtype=float)
    samples = tuple(
        mc.PoseSample(float(t), p, q) for t, p, q in zip(times, positions, quaternions)
    )
    return mc.Trajectory(samples, tool_axes)


def rotation_sequence(axis, total_angle, steps):
    """Quaternions sweeping from identity to a rotation of total_angle."""
    angles = np.linspace(0.0, total_angle, steps)
    return [matrix_to_quat(matrix_from_axis_angle(axis, a)) for a in angles]


def random_rotation(rng):
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    angle = rng.uniform(0.01, np.pi - 0.01)
    return matrix_from_axis_angle(axis, angle)


def random_valid_code(rng):
    """One uniformly field-sampled valid MotionCode."""
    contact = bool(rng.integers(2))
    outcomes = ("none", "temporary", "permanent")
    return mc.build_code(
        contact=contact,
        engagement=("rigid", "soft")[rng.integers(2)] if contact else None,
        duration=("discontinuous", "continuous")[rng.integers(2)] if contact else None,
        active_outcome=outcomes[rng.integers(3)],
        passive_outcome=outcomes[rng.integers(3)],
        active_trajectory=(bool(rng.integers(2)), int(rng.integers(4)), int(rng.integers(4))),
        passive_trajectory=(bool(rng.integers(2)), int(rng.integers(4)), int(rng.integers(4))),
        tool=bool(rng.integers(2)),
    )


def write_pose_csv(path, positions, quaternions=None, times=None, tool_axes=None):
    """Write arrays as a pose CSV in the format load_trajectory expects."""
    positions = np.asarray(positions, dtype=float)
    n = len(positions)
    if quaternions is None:
        quaternions = [IDENTITY_QUAT] * n
    if times is None:
        times = np.arange(n, dtype=float)
    lines = []
    if tool_axes is not None:
        flat = " ".join(f"{v:.12g}" for v in np.asarray(tool_axes, dtype=float).ravel())
        lines.append(f"# tool_axes: {flat}")
    lines.append("t,x,y,z,qw,qx,qy,qz")
    for t, p, q in zip(times, positions, quaternions):
        lines.append(
            f"{t:.9f},{p[0]:.9f},{p[1]:.9f},{p[2]:.9f},{q[0]:.12f},{q[1]:.12f},{q[2]:.12f},{q[3]:.12f}"
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
