"""
Array element geometry and exact-distance phase responses.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.utils.errors import AntennaTypeError

from .patterns import AntennaModel, Mounting, Upa


def element_positions(upa: AntennaModel, mounting: Optional[Mounting] = None) -> np.ndarray:
    """
    Element offsets of a planar array relative to its center.

    Args:
        upa: Array model
        mounting: Orientation override (default: the array's own mounting)

    Returns:
        np.ndarray: (rows*cols, 3) world-frame offsets, row-major
    """
    if not isinstance(upa, Upa):
        raise AntennaTypeError(f"element positions need a UPA, got {type(upa).__name__}")
    mounting = mounting if mounting is not None else upa.mounting

    z = (np.arange(upa.rows) - (upa.rows - 1) / 2.0) * upa.spacing_m
    y = (np.arange(upa.cols) - (upa.cols - 1) / 2.0) * upa.spacing_m
    zz, yy = np.meshgrid(z, y, indexing="ij")
    local = np.column_stack([np.zeros(zz.size), yy.ravel(), zz.ravel()])
    return mounting.rotation.apply(local)


@dataclass(frozen=True)
class SteeringContext:
    """Wavelength plus element offsets of one array (a single point for non-arrays)."""

    wavelength: float
    offsets: np.ndarray

    @classmethod
    def for_antenna(cls, antenna: AntennaModel, wavelength: float) -> "SteeringContext":
        if isinstance(antenna, Upa):
            return cls(wavelength, element_positions(antenna))
        return cls(wavelength, np.zeros((1, 3)))

    @property
    def n_elements(self) -> int:
        return len(self.offsets)

    def element_positions_at(self, center) -> np.ndarray:
        return np.asarray(center, dtype=float) + self.offsets

    def distances_to(self, center, other: "SteeringContext", other_center) -> np.ndarray:
        """Exact distances, shape (other elements, own elements)."""
        own = self.element_positions_at(center)
        peer = other.element_positions_at(other_center)
        return np.linalg.norm(peer[:, None, :] - own[None, :, :], axis=-1)

    def phase(self, distances: np.ndarray) -> np.ndarray:
        return np.exp(-2j * np.pi * distances / self.wavelength)
