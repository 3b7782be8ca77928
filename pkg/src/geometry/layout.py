"""
Airport and terrestrial network layout.

The ABS sits at the runway midpoint; TBSs are either drawn uniformly inside a
rectangle with a seeded generator or loaded from a JSON layout document.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Union

import numpy as np

from src.utils.errors import ConfigError, OutputPathError

if TYPE_CHECKING:
    from src.antennas.patterns import AntennaModel

logger = logging.getLogger(__name__)

DEFAULT_BS_HEIGHT = 30.0
DEFAULT_CLEARANCE = 50.0  # minimum distance between a TBS and the descent path


@dataclass(frozen=True)
class RegionSpec:
    """Axis-aligned rectangle in the x-y plane where TBSs may be placed."""

    x_min: float = -10000.0
    x_max: float = 20000.0
    y_min: float = -4000.0
    y_max: float = 4000.0

    @property
    def area(self) -> float:
        return max(self.x_max - self.x_min, 0.0) * max(self.y_max - self.y_min, 0.0)

    def validate(self, path: str = "layout.region"):
        if not all(math.isfinite(v) for v in (self.x_min, self.x_max, self.y_min, self.y_max)):
            raise ConfigError.single(path, "region bounds must be finite")
        if self.area <= 0.0:
            raise ConfigError.single(path, "region must have positive area")

    def contains(self, point) -> bool:
        return self.x_min <= point[0] <= self.x_max and self.y_min <= point[1] <= self.y_max


@dataclass
class NetworkLayout:
    abs_position: np.ndarray
    tbs_positions: np.ndarray  # shape (K, 3)
    tbs_antennas: List["AntennaModel"] = field(default_factory=list)
    bs_height: float = DEFAULT_BS_HEIGHT

    def __post_init__(self):
        self.abs_position = np.asarray(self.abs_position, dtype=float)
        self.tbs_positions = np.asarray(self.tbs_positions, dtype=float).reshape(-1, 3)
        if len(self.tbs_antennas) != len(self.tbs_positions):
            raise ConfigError.single("layout.tbs", "every TBS needs exactly one antenna")

    @property
    def tbs_count(self) -> int:
        return len(self.tbs_positions)

    @staticmethod
    def abs_at_runway_midpoint(runway_length: float, bs_height: float = DEFAULT_BS_HEIGHT) -> np.ndarray:
        return np.array([-runway_length / 2.0, 0.0, bs_height])


def distance_to_descent_path(point, top_of_descent) -> float:
    """Distance from a point to the segment between the origin and the top of descent."""
    point = np.asarray(point, dtype=float)
    top = np.asarray(top_of_descent, dtype=float)
    t = float(np.clip(point @ top / (top @ top), 0.0, 1.0))
    return float(np.linalg.norm(point - t * top))


def sector_azimuth_toward_path(y: float) -> float:
    """Azimuth (deg from +x) perpendicular to the x-axis, pointing toward y = 0."""
    return -90.0 if y > 0 else 90.0


def generate_tbs_layout(
    seed: int,
    count: int,
    region: RegionSpec,
    runway_length: float = 4000.0,
    bs_height: float = DEFAULT_BS_HEIGHT,
    tbs_antenna: Optional["AntennaModel"] = None,
    top_of_descent=None,
    clearance: float = DEFAULT_CLEARANCE,
) -> NetworkLayout:
    """
    Seeded uniform TBS placement inside a rectangle.

    Tri-sector antennas are re-oriented so one sector faces the descent-path
    ground projection; other antenna models are used as given. Samples closer
    than `clearance` to the descent path are redrawn.

    Args:
        seed: Generator seed
        count: Number of TBSs (>= 0)
        region: Placement rectangle
        runway_length: Runway length R, fixes the ABS position
        bs_height: Height of every base station
        tbs_antenna: Antenna template for every TBS (default: 17.7 dBi tri-sector)
        top_of_descent: End point D of the descent segment (default: 12 km altitude at 3 deg)
        clearance: Minimum TBS to descent-path distance in meters

    Returns:
        NetworkLayout: Generated layout
    """
    from src.antennas.patterns import TriSector

    if count < 0:
        raise ConfigError.single("layout.count", "must be non-negative")
    region.validate()
    if tbs_antenna is None:
        tbs_antenna = TriSector()
    if top_of_descent is None:
        top_of_descent = np.array([12000.0 / math.tan(math.radians(3.0)), 0.0, 12000.0])

    rng = np.random.default_rng(seed)
    positions = []
    antennas = []
    attempts = 0
    while len(positions) < count:
        attempts += 1
        if attempts > 1000 * max(count, 1):
            raise ConfigError.single("layout.region", "region leaves no room clear of the descent path")
        x = rng.uniform(region.x_min, region.x_max)
        y = rng.uniform(region.y_min, region.y_max)
        point = np.array([x, y, bs_height])
        if distance_to_descent_path(point, top_of_descent) < clearance:
            continue
        positions.append(point)
        if isinstance(tbs_antenna, TriSector):
            antennas.append(tbs_antenna.facing(sector_azimuth_toward_path(y)))
        else:
            antennas.append(tbs_antenna)

    logger.debug(f"Generated {count} TBSs with seed {seed} ({attempts} draws)")
    return NetworkLayout(
        abs_position=NetworkLayout.abs_at_runway_midpoint(runway_length, bs_height),
        tbs_positions=np.array(positions).reshape(-1, 3),
        tbs_antennas=antennas,
        bs_height=bs_height,
    )


def layout_to_document(layout: NetworkLayout) -> Dict[str, Any]:
    from src.antennas.patterns import antenna_to_descriptor

    return {
        "abs_position": [float(v) for v in layout.abs_position],
        "bs_height": layout.bs_height,
        "tbs": [
            {"position": [float(v) for v in position], "antenna": antenna_to_descriptor(antenna)}
            for position, antenna in zip(layout.tbs_positions, layout.tbs_antennas)
        ],
    }


def layout_from_document(document: Dict[str, Any], path: str = "layout") -> NetworkLayout:
    """
    Build a layout from its JSON document form.

    Every problem found is collected before a single ConfigError is raised.
    """
    from src.antennas.patterns import antenna_from_descriptor

    issues = []
    if not isinstance(document, dict):
        raise ConfigError.single(path, "layout document must be an object")

    unknown = set(document) - {"abs_position", "bs_height", "tbs"}
    for key in sorted(unknown):
        issues.append((f"{path}.{key}", "unknown key"))

    bs_height = document.get("bs_height", DEFAULT_BS_HEIGHT)
    if not isinstance(bs_height, (int, float)) or isinstance(bs_height, bool) or bs_height < 0:
        issues.append((f"{path}.bs_height", "must be a non-negative number"))
        bs_height = DEFAULT_BS_HEIGHT

    abs_position = _point(document.get("abs_position"), f"{path}.abs_position", issues)
    if document.get("abs_position") is None:
        issues.append((f"{path}.abs_position", "missing"))

    positions = []
    antennas = []
    entries = document.get("tbs", [])
    if not isinstance(entries, list):
        issues.append((f"{path}.tbs", "must be a list"))
        entries = []
    for index, entry in enumerate(entries):
        entry_path = f"{path}.tbs[{index}]"
        if not isinstance(entry, dict):
            issues.append((entry_path, "must be an object"))
            continue
        point = _point(entry.get("position"), f"{entry_path}.position", issues)
        try:
            antenna = antenna_from_descriptor(entry.get("antenna", {"type": "tri_sector"}), f"{entry_path}.antenna")
        except ConfigError as e:
            issues.extend(e.issues)
            continue
        if point is not None:
            positions.append(point)
            antennas.append(antenna)

    if issues:
        raise ConfigError(issues)
    return NetworkLayout(abs_position, np.array(positions).reshape(-1, 3), antennas, float(bs_height))


def _point(value, path: str, issues: list) -> Optional[np.ndarray]:
    if value is None:
        return None
    if (
        not isinstance(value, list)
        or len(value) != 3
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        issues.append((path, "must be a list of three numbers"))
        return None
    return np.array(value, dtype=float)


def load_layout(path: Union[str, Path]) -> NetworkLayout:
    path = Path(path)
    try:
        with open(path, "r") as f:
            document = json.load(f)
    except FileNotFoundError:
        raise ConfigError.single("layout.file", f"file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError.single("layout.file", f"invalid JSON in {path}: {e}")
    layout = layout_from_document(document)
    logger.info(f"Loaded layout with {layout.tbs_count} TBSs from {path}")
    return layout


def save_layout(layout: NetworkLayout, path: Union[str, Path]):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump(layout_to_document(layout), f, indent=2)
    except OSError as e:
        raise OutputPathError(f"cannot write layout to {path}: {e}")
    logger.info(f"Saved layout to {path}")
