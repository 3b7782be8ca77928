"""
Relative angle computations between an observer and a target.
"""

import math
from typing import Tuple

import numpy as np

from src.utils.errors import GeometryError


def unit_vector(vector) -> np.ndarray:
    """Normalize a 3D vector; raises GeometryError for a zero vector."""
    vector = np.asarray(vector, dtype=float)
    norm = np.linalg.norm(vector)
    if norm == 0.0:
        raise GeometryError("cannot normalize a zero-length vector")
    return vector / norm


def relative_angles(observer_pos, observer_boresight, target_pos) -> Tuple[float, float]:
    """
    Azimuth and elevation of a target as seen by an observer.

    The azimuth is the signed horizontal-plane angle from the boresight's
    horizontal projection to the observer->target ray (counter-clockwise
    positive). The elevation is the ray's angle above the horizontal plane.

    Args:
        observer_pos: Observer position (3,)
        observer_boresight: Boresight vector with a non-zero horizontal part
        target_pos: Target position (3,)

    Returns:
        Tuple[float, float]: (azimuth, elevation) in degrees, each in (-180, 180]
    """
    ray = np.asarray(target_pos, dtype=float) - np.asarray(observer_pos, dtype=float)
    if not np.any(ray):
        raise GeometryError("observer and target coincide")
    boresight = np.asarray(observer_boresight, dtype=float)
    if boresight[0] == 0.0 and boresight[1] == 0.0:
        raise GeometryError("boresight has no horizontal component")

    horizontal = math.hypot(ray[0], ray[1])
    elevation = math.degrees(math.atan2(ray[2], horizontal))
    if horizontal == 0.0:
        return 0.0, elevation

    cross = boresight[0] * ray[1] - boresight[1] * ray[0]
    dot = boresight[0] * ray[0] + boresight[1] * ray[1]
    azimuth = math.degrees(math.atan2(cross, dot))
    if azimuth <= -180.0:
        azimuth += 360.0
    return azimuth, elevation
