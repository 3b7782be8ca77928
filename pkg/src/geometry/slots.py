"""
Per-slot relative geometry between the plane and every base station.
"""

from dataclasses import dataclass
from typing import List, Union

import numpy as np

from .angles import relative_angles
from .layout import NetworkLayout
from .trajectory import DescentTrajectory, EvaluatedSlot, SlotGrid

# Angles are reported in a ground frame whose azimuth reference is the +x axis
_REFERENCE_BORESIGHT = np.array([1.0, 0.0, 0.0])


@dataclass(frozen=True)
class BsGeometry:
    """Geometry of one base station toward the plane during a slot."""

    bs_position: np.ndarray
    plane_position: np.ndarray  # at the distance-minimizing slot endpoint
    tau: float
    distance: float
    azimuth_deg: float
    elevation_deg: float

    @property
    def direction_to_plane(self) -> np.ndarray:
        return (self.plane_position - self.bs_position) / self.distance

    @property
    def direction_to_bs(self) -> np.ndarray:
        return -self.direction_to_plane


@dataclass(frozen=True)
class SlotGeometry:
    slot: EvaluatedSlot
    abs: BsGeometry
    tbs: List[BsGeometry]


def _bs_geometry(bs_position: np.ndarray, slot: EvaluatedSlot, traj: DescentTrajectory) -> BsGeometry:
    candidates = []
    for tau in (slot.tau_end, slot.tau_start):
        plane = traj.position(tau)
        candidates.append((float(np.linalg.norm(plane - bs_position)), tau, plane))
    # the later endpoint wins ties so that a stationary distance uses tau_end
    distance, tau, plane = min(candidates, key=lambda item: item[0])
    azimuth, elevation = relative_angles(bs_position, _REFERENCE_BORESIGHT, plane)
    return BsGeometry(bs_position, plane, tau, distance, azimuth, elevation)


def slot_geometry(
    slot: Union[int, EvaluatedSlot],
    grid: SlotGrid,
    traj: DescentTrajectory,
    layout: NetworkLayout,
) -> SlotGeometry:
    """
    Infimum distance and angles from each BS to the plane over one slot.

    The plane moves linearly within a slot, so the minimum of the two endpoint
    distances is taken; angles are evaluated at the minimizing endpoint.

    Args:
        slot: Evaluated slot, or its index in grid.evaluated_slots()
        grid: Slot grid the index refers to
        traj: Descent trajectory
        layout: ABS and TBS positions

    Returns:
        SlotGeometry: ABS geometry and one entry per TBS, in layout order
    """
    if not isinstance(slot, EvaluatedSlot):
        slots = grid.evaluated_slots()
        if not 0 <= slot < len(slots):
            raise IndexError(f"slot index {slot} outside the transmission window ({len(slots)} slots)")
        slot = slots[slot]

    abs_geometry = _bs_geometry(layout.abs_position, slot, traj)
    tbs_geometry = [_bs_geometry(position, slot, traj) for position in layout.tbs_positions]
    return SlotGeometry(slot, abs_geometry, tbs_geometry)
