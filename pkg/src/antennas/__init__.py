"""
Antenna module for descentlink.

Directivity-gain models (omni, 3GPP-style tri-sector directional, uniform
planar arrays) plus array element geometry for steering computations.
"""

from .patterns import (
    AntennaModel,
    Omni,
    Directional,
    TriSector,
    Upa,
    Mounting,
    tri_sector_gain,
    directivity_gain,
    tbs_gain_upper_bound,
    antenna_from_descriptor,
    antenna_to_descriptor,
)
from .arrays import SteeringContext, element_positions

__all__ = [
    "AntennaModel",
    "Omni",
    "Directional",
    "TriSector",
    "Upa",
    "Mounting",
    "tri_sector_gain",
    "directivity_gain",
    "tbs_gain_upper_bound",
    "antenna_from_descriptor",
    "antenna_to_descriptor",
    "SteeringContext",
    "element_positions",
]
