"""
Geometry module for descentlink.

Descent trajectory, slot grid, base-station layout and the per-slot relative
geometry between the plane, the airport base station (ABS) and the
terrestrial base stations (TBSs).
"""

from .trajectory import DescentTrajectory, SlotGrid, EvaluatedSlot, plane_position
from .angles import relative_angles, unit_vector
from .layout import (
    RegionSpec,
    NetworkLayout,
    generate_tbs_layout,
    layout_from_document,
    layout_to_document,
    load_layout,
    save_layout,
)
from .slots import BsGeometry, SlotGeometry, slot_geometry

__all__ = [
    "DescentTrajectory",
    "SlotGrid",
    "EvaluatedSlot",
    "plane_position",
    "relative_angles",
    "unit_vector",
    "RegionSpec",
    "NetworkLayout",
    "generate_tbs_layout",
    "layout_from_document",
    "layout_to_document",
    "load_layout",
    "save_layout",
    "BsGeometry",
    "SlotGeometry",
    "slot_geometry",
]
