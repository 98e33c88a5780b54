"""Conversions between quaternions, rotation matrices, and axis-angle.

Quaternions are ordered (w, x, y, z) and assumed unit length.
"""

from __future__ import annotations

import numpy as np

DEGENERATE_ANGLE = 1e-6
NEAR_PI_ANGLE = 3.0


def quat_to_matrix(q) -> np.ndarray:
    """Rotation matrix of a unit quaternion (w, x, y, z)."""
    w, x, y, z = np.asarray(q, dtype=float)
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def matrix_to_quat(rotation) -> np.ndarray:
    """Unit quaternion (w, x, y, z) of a rotation matrix, with w >= 0.

    Uses Shepperd's method: branch on the largest of the trace and the
    diagonal entries so the division is always well conditioned.
    """
    r = np.asarray(rotation, dtype=float)
    trace = r[0, 0] + r[1, 1] + r[2, 2]
    choices = [trace, r[0, 0], r[1, 1], r[2, 2]]
    branch = int(np.argmax(choices))
    if branch == 0:
        s = 2.0 * np.sqrt(1.0 + trace)
        q = np.array(
            [0.25 * s, (r[2, 1] - r[1, 2]) / s, (r[0, 2] - r[2, 0]) / s, (r[1, 0] - r[0, 1]) / s]
        )
    elif branch == 1:
        s = 2.0 * np.sqrt(1.0 + r[0, 0] - r[1, 1] - r[2, 2])
        q = np.array(
            [(r[2, 1] - r[1, 2]) / s, 0.25 * s, (r[0, 1] + r[1, 0]) / s, (r[0, 2] + r[2, 0]) / s]
        )
    elif branch == 2:
        s = 2.0 * np.sqrt(1.0 - r[0, 0] + r[1, 1] - r[2, 2])
        q = np.array(
            [(r[0, 2] - r[2, 0]) / s, (r[0, 1] + r[1, 0]) / s, 0.25 * s, (r[1, 2] + r[2, 1]) / s]
        )
    else:
        s = 2.0 * np.sqrt(1.0 - r[0, 0] - r[1, 1] + r[2, 2])
        q = np.array(
            [(r[1, 0] - r[0, 1]) / s, (r[0, 2] + r[2, 0]) / s, (r[1, 2] + r[2, 1]) / s, 0.25 * s]
        )
    q /= np.linalg.norm(q)
    if q[0] < 0:
        q = -q
    return q


def matrix_from_axis_angle(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation matrix for a unit axis and an angle in radians."""
    k = np.asarray(axis, dtype=float)
    k = k / np.linalg.norm(k)
    kx = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + np.sin(angle) * kx + (1 - np.cos(angle)) * (kx @ kx)


def axis_angle_from_matrix(rotation) -> tuple[float, np.ndarray | None]:
    """Rotation angle in [0, pi] and unit axis of a rotation matrix.

    Near-zero rotations (angle < 1e-6 rad) have no meaningful axis and
    return (angle, None). Near pi the off-diagonal differences vanish, so
    angles above 3.0 rad are recovered through the quaternion form instead.
    """
    r = np.asarray(rotation, dtype=float)
    trace = r[0, 0] + r[1, 1] + r[2, 2]
    angle = float(np.arccos(np.clip((trace - 1.0) / 2.0, -1.0, 1.0)))
    if angle < DEGENERATE_ANGLE:
        return angle, None
    if angle > NEAR_PI_ANGLE:
        q = matrix_to_quat(r)
        vector_norm = float(np.linalg.norm(q[1:]))
        if vector_norm == 0.0:
            return 0.0, None
        return 2.0 * float(np.arctan2(vector_norm, q[0])), q[1:] / vector_norm
    axis = np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
    axis /= 2.0 * np.sin(angle)
    return angle, axis / np.linalg.norm(axis)
