"""Exponential-map and intrinsic Z-Y-X Euler conversions.

Euler vectors are ordered (yaw, pitch, roll) with pitch in [-pi/2, pi/2].
At gimbal lock roll is set to 0 and the remaining rotation is folded into
yaw.
"""

import warnings

import numpy as np
from scipy.spatial.transform import Rotation

from motionloom.exceptions import InvalidArgument

EULER_SEQUENCE = "ZYX"
ORTHONORMAL_TOLERANCE = 1e-6


def expmap_to_rotmat(v) -> np.ndarray:
    """Rodrigues formula; rotation vectors of norm < 1e-12 map to I."""
    vector = np.asarray(v, dtype=np.float64)
    if vector.shape[-1] != 3 or not np.isfinite(vector).all():
        raise InvalidArgument("exponential maps are finite 3-vectors")
    return Rotation.from_rotvec(vector).as_matrix()


def _euler(rotation: Rotation) -> np.ndarray:
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message=".*[Gg]imbal lock.*")
        return rotation.as_euler(EULER_SEQUENCE)


def rotmat_to_euler(rotmat) -> np.ndarray:
    matrix = np.asarray(rotmat, dtype=np.float64)
    if matrix.shape[-2:] != (3, 3):
        raise InvalidArgument(f"expected 3x3 matrices, got {matrix.shape}")
    residual = np.abs(
        np.swapaxes(matrix, -1, -2) @ matrix - np.eye(3)
    ).max(initial=0.0)
    if not residual <= ORTHONORMAL_TOLERANCE or (np.linalg.det(matrix) <= 0).any():
        raise InvalidArgument(
            f"matrix is not a rotation (orthonormality residual {residual:.2e})"
        )
    return _euler(Rotation.from_matrix(matrix))


def euler_to_rotmat(angles) -> np.ndarray:
    return Rotation.from_euler(
        EULER_SEQUENCE, np.asarray(angles, dtype=np.float64)
    ).as_matrix()


def expmap_to_euler(frames: np.ndarray) -> np.ndarray:
    """Convert an N x 3J exponential-map sequence to N x 3J Euler angles."""
    frames = np.asarray(frames, dtype=np.float64)
    if frames.shape[-1] % 3:
        raise InvalidArgument(
            f"pose dimension {frames.shape[-1]} is not a multiple of 3"
        )
    vectors = frames.reshape(-1, 3)
    return _euler(Rotation.from_rotvec(vectors)).reshape(frames.shape)
