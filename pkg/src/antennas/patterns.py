"""
Directivity-gain models.

Directions are world-frame vectors pointing from the antenna toward its peer.
Directional patterns follow the 3GPP sectorized model: parabolic attenuation
in azimuth and elevation, each clamped, with the total attenuation clamped too.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field, fields, replace
from functools import cached_property
from typing import Any, Dict, List, Optional, Union

import numpy as np
from scipy.spatial.transform import Rotation

from src.geometry.angles import relative_angles, unit_vector
from src.utils.errors import ConfigError
from src.utils.units import db_to_linear

_ORIGIN = np.zeros(3)


def tri_sector_gain(
    azimuth_deg: float,
    elevation_deg: float,
    tilt_deg: float,
    boresight_gain_dbi: float,
    az_beamwidth_deg: float = 65.0,
    el_beamwidth_deg: float = 7.0,
    max_attenuation_db: float = 20.0,
) -> float:
    """
    Linear gain of one sector of a 3GPP-style directional antenna.

    Args:
        azimuth_deg: Azimuth offset from the boresight
        elevation_deg: Elevation of the peer above the horizontal plane
        tilt_deg: Elevation of the beam peak
        boresight_gain_dbi: Peak gain
        az_beamwidth_deg: 3 dB beamwidth in azimuth
        el_beamwidth_deg: 3 dB beamwidth in elevation
        max_attenuation_db: Clamp applied per plane and to the sum

    Returns:
        float: Linear gain
    """
    a_h = -min(12.0 * (azimuth_deg / az_beamwidth_deg) ** 2, max_attenuation_db)
    a_v = -min(12.0 * ((elevation_deg - tilt_deg) / el_beamwidth_deg) ** 2, max_attenuation_db)
    return db_to_linear(boresight_gain_dbi - min(-a_v - a_h, max_attenuation_db))


@dataclass(frozen=True)
class Mounting:
    """
    Array orientation: boresight azimuth/elevation plus roll about the boresight.

    In the local frame the array lies in the y-z plane with its boresight
    along +x; columns run along local y, rows along local z.
    """

    azimuth_deg: float = 0.0
    elevation_deg: float = 0.0
    roll_deg: float = 0.0

    @cached_property
    def rotation(self) -> Rotation:
        return Rotation.from_euler("ZYX", [self.azimuth_deg, -self.elevation_deg, self.roll_deg], degrees=True)

    @property
    def boresight(self) -> np.ndarray:
        return self.rotation.apply([1.0, 0.0, 0.0])

    def to_local(self, direction) -> np.ndarray:
        return self.rotation.inv().apply(np.asarray(direction, dtype=float))


class AntennaModel(ABC):
    """Common interface of every antenna variant."""

    type_tag = ""

    @abstractmethod
    def gain(self, direction) -> float:
        """Linear gain toward a world-frame direction (per element for arrays)."""

    @property
    @abstractmethod
    def max_gain(self) -> float:
        """Peak linear gain (per element for arrays)."""

    @property
    def n_elements(self) -> int:
        return 1


@dataclass(frozen=True)
class Omni(AntennaModel):
    type_tag = "omni"

    gain_dbi: float = 0.0

    def gain(self, direction) -> float:
        return db_to_linear(self.gain_dbi)

    @property
    def max_gain(self) -> float:
        return db_to_linear(self.gain_dbi)


@dataclass(frozen=True)
class Directional(AntennaModel):
    """Single-beam directional antenna with a horizontal boresight."""

    type_tag = "directional"

    azimuth_deg: float = 0.0
    tilt_deg: float = 0.0
    boresight_gain_dbi: float = 17.7
    az_beamwidth_deg: float = 65.0
    el_beamwidth_deg: float = 7.0
    max_attenuation_db: float = 20.0

    @property
    def boresight(self) -> np.ndarray:
        azimuth = np.radians(self.azimuth_deg)
        return np.array([np.cos(azimuth), np.sin(azimuth), 0.0])

    def gain(self, direction) -> float:
        azimuth, elevation = relative_angles(_ORIGIN, self.boresight, direction)
        return tri_sector_gain(
            azimuth,
            elevation,
            self.tilt_deg,
            self.boresight_gain_dbi,
            self.az_beamwidth_deg,
            self.el_beamwidth_deg,
            self.max_attenuation_db,
        )

    @property
    def max_gain(self) -> float:
        return db_to_linear(self.boresight_gain_dbi)


@dataclass(frozen=True)
class TriSector(AntennaModel):
    """Three directional sectors 120 degrees apart; the best sector serves."""

    type_tag = "tri_sector"

    first_azimuth_deg: float = 90.0
    tilt_deg: float = 0.0
    boresight_gain_dbi: float = 17.7
    az_beamwidth_deg: float = 65.0
    el_beamwidth_deg: float = 7.0
    max_attenuation_db: float = 20.0

    @property
    def sectors(self) -> List[Directional]:
        return [
            Directional(
                self.first_azimuth_deg + offset,
                self.tilt_deg,
                self.boresight_gain_dbi,
                self.az_beamwidth_deg,
                self.el_beamwidth_deg,
                self.max_attenuation_db,
            )
            for offset in (0.0, 120.0, 240.0)
        ]

    def facing(self, azimuth_deg: float) -> "TriSector":
        """Copy with the first sector pointing at the given azimuth."""
        return replace(self, first_azimuth_deg=azimuth_deg)

    def gain(self, direction) -> float:
        return max(sector.gain(direction) for sector in self.sectors)

    @property
    def max_gain(self) -> float:
        return db_to_linear(self.boresight_gain_dbi)


def default_upa_element() -> Directional:
    return Directional(0.0, 0.0, 8.0, 65.0, 65.0, 20.0)


@dataclass(frozen=True)
class Upa(AntennaModel):
    """Uniform planar array of identical elements."""

    type_tag = "upa"

    rows: int = 1
    cols: int = 1
    spacing_m: float = 0.075
    element: Union[Omni, Directional] = field(default_factory=default_upa_element)
    mounting: Mounting = field(default_factory=Mounting)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ConfigError.single("upa", f"array needs at least one element, got {self.rows}x{self.cols}")
        if self.spacing_m <= 0:
            raise ConfigError.single("upa.spacing_m", "must be positive")
        if not isinstance(self.element, (Omni, Directional)):
            raise ConfigError.single("upa.element", "element must be omni or directional")

    @classmethod
    def half_wavelength(
        cls,
        rows: int,
        cols: int,
        wavelength: float,
        element: Optional[Union[Omni, Directional]] = None,
        mounting: Optional[Mounting] = None,
    ) -> "Upa":
        return cls(
            rows,
            cols,
            wavelength / 2.0,
            element if element is not None else default_upa_element(),
            mounting if mounting is not None else Mounting(),
        )

    @property
    def n_elements(self) -> int:
        return self.rows * self.cols

    def gain(self, direction) -> float:
        return self.element.gain(self.mounting.to_local(direction))

    @property
    def max_gain(self) -> float:
        return self.element.max_gain


def directivity_gain(antenna: AntennaModel, direction) -> float:
    """
    Linear directivity gain toward a direction.

    Arrays return the per-element gain; far-field distances make it identical
    for every element.
    """
    return antenna.gain(unit_vector(direction))


def tbs_gain_upper_bound(antenna: AntennaModel, direction=None) -> float:
    """
    Receive gain G^T used in the TBS interference constraints.

    Arrays get the element count times the peak element gain, an upper bound
    on any receive beamforming gain. Single antennas use the gain toward the
    plane, or their peak gain when no direction is given.
    """
    if isinstance(antenna, Upa):
        return antenna.n_elements * antenna.max_gain
    if direction is None:
        return antenna.max_gain
    return directivity_gain(antenna, direction)


# JSON descriptors

_VARIANTS = {cls.type_tag: cls for cls in (Omni, Directional, TriSector, Upa)}


def antenna_to_descriptor(antenna: AntennaModel) -> Dict[str, Any]:
    document: Dict[str, Any] = {"type": antenna.type_tag}
    for item in fields(antenna):
        value = getattr(antenna, item.name)
        if isinstance(value, AntennaModel):
            value = antenna_to_descriptor(value)
        elif isinstance(value, Mounting):
            value = {f.name: getattr(value, f.name) for f in fields(Mounting)}
        document[item.name] = value
    return document


def antenna_from_descriptor(
    document: Dict[str, Any], path: str = "antenna", wavelength: Optional[float] = None
) -> AntennaModel:
    """
    Build an antenna from its descriptor.

    Args:
        document: {"type": "omni" | "directional" | "tri_sector" | "upa", ...parameters}
        path: JSON path used in error messages
        wavelength: Used for a half-wavelength spacing when an array omits spacing_m

    Returns:
        AntennaModel: The described antenna
    """
    if not isinstance(document, dict):
        raise ConfigError.single(path, "antenna descriptor must be an object")
    tag = document.get("type")
    if tag not in _VARIANTS:
        raise ConfigError.single(f"{path}.type", f"unknown antenna type {tag!r}, expected one of {sorted(_VARIANTS)}")
    cls = _VARIANTS[tag]

    issues = []
    kwargs: Dict[str, Any] = {}
    names = {item.name for item in fields(cls)}
    for key, value in document.items():
        if key == "type":
            continue
        key_path = f"{path}.{key}"
        if key not in names:
            issues.append((key_path, "unknown key"))
        elif key == "element":
            try:
                kwargs[key] = antenna_from_descriptor(value, key_path)
            except ConfigError as e:
                issues.extend(e.issues)
        elif key == "mounting":
            kwargs[key] = _mounting(value, key_path, issues)
        elif key in ("rows", "cols"):
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                issues.append((key_path, "must be a positive integer"))
            else:
                kwargs[key] = value
        elif not isinstance(value, (int, float)) or isinstance(value, bool):
            issues.append((key_path, "must be a number"))
        else:
            kwargs[key] = float(value)

    if cls is Upa and "spacing_m" not in document:
        if wavelength is None:
            issues.append((f"{path}.spacing_m", "missing (no band to derive half-wavelength spacing from)"))
        else:
            kwargs["spacing_m"] = wavelength / 2.0
    if issues:
        raise ConfigError(issues)
    return cls(**kwargs)


def _mounting(value, path: str, issues: list) -> Mounting:
    if not isinstance(value, dict):
        issues.append((path, "must be an object"))
        return Mounting()
    kwargs = {}
    names = {item.name for item in fields(Mounting)}
    for key, item in value.items():
        if key not in names:
            issues.append((f"{path}.{key}", "unknown key"))
        elif not isinstance(item, (int, float)) or isinstance(item, bool):
            issues.append((f"{path}.{key}", "must be a number"))
        else:
            kwargs[key] = float(item)
    return Mounting(**kwargs)
