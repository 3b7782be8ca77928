"""
SNR to spectral-efficiency mappings.

McsTable is the discrete link-adaptation step function; ShannonRate is the
uncapped log2(1 + SNR) alternative. Both expose `efficiency`, `e_max` and
`top_threshold` (the SNR beyond which extra power buys no rate).
"""

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Sequence, Union

import numpy as np

from src.utils.errors import ConfigError
from src.utils.units import db_to_linear

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class McsTable:
    thresholds_db: Sequence[float]
    efficiencies: Sequence[float]
    name: str = "custom"

    def __post_init__(self):
        issues = []
        if len(self.thresholds_db) == 0 or len(self.thresholds_db) != len(self.efficiencies):
            issues.append(("mcs", "thresholds and efficiencies must be non-empty and of equal length"))
        elif np.any(np.diff(self.thresholds_db) <= 0):
            issues.append(("mcs.thresholds_db", "must be strictly increasing"))
        elif np.any(np.diff(self.efficiencies) <= 0) or self.efficiencies[0] <= 0:
            issues.append(("mcs.efficiencies", "must be positive and strictly increasing"))
        if issues:
            raise ConfigError(issues)
        object.__setattr__(self, "thresholds_db", tuple(float(v) for v in self.thresholds_db))
        object.__setattr__(self, "efficiencies", tuple(float(v) for v in self.efficiencies))
        object.__setattr__(self, "_thresholds", db_to_linear(np.array(self.thresholds_db)))
        object.__setattr__(self, "_steps", np.concatenate([[0.0], self.efficiencies]))

    @property
    def thresholds(self) -> np.ndarray:
        """Linear SNR thresholds."""
        return self._thresholds

    @property
    def e_max(self) -> float:
        return self.efficiencies[-1]

    @property
    def top_threshold(self) -> float:
        return float(self._thresholds[-1])

    def efficiency(self, snr):
        """Step-function efficiency; right-continuous, zero below the first threshold."""
        index = np.searchsorted(self._thresholds, snr, side="right")
        result = self._steps[index]
        return float(result) if np.ndim(result) == 0 else result


@dataclass(frozen=True)
class ShannonRate:
    name: str = "shannon"

    @property
    def e_max(self) -> float:
        return math.inf

    @property
    def top_threshold(self) -> float:
        return math.inf

    def efficiency(self, snr):
        result = np.log2(1.0 + np.asarray(snr, dtype=float))
        return float(result) if np.ndim(result) == 0 else result


# LTE-A link adaptation, 15 levels
LTE_A_TABLE = McsTable(
    thresholds_db=(-9.8, -6.1, -2.2, 1.6, 3.4, 5.4, 7.2, 9.1, 11.0, 12.9, 14.8, 16.8, 18.4, 20.2, 22.5),
    efficiencies=(0.11, 0.33, 0.77, 1.33, 1.77, 2.22, 2.50, 3.05, 3.61, 4.16, 4.72, 5.16, 5.72, 6.27, 6.88),
    name="lte-a",
)


def mcs_efficiency(snr, table: Union[McsTable, ShannonRate]):
    """Spectral efficiency (bps/Hz) at a linear SNR."""
    return table.efficiency(snr)


def mcs_table_from_document(document: Dict[str, Any], path: str = "mcs_table") -> McsTable:
    """Build a table from {"thresholds_db": [...], "efficiencies": [...], "name": ...}."""
    if not isinstance(document, dict):
        raise ConfigError.single(path, "MCS table must be an object")
    issues = []
    for key in sorted(set(document) - {"thresholds_db", "efficiencies", "name"}):
        issues.append((f"{path}.{key}", "unknown key"))
    columns = {}
    for key in ("thresholds_db", "efficiencies"):
        values = document.get(key)
        if not isinstance(values, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
        ):
            issues.append((f"{path}.{key}", "must be a list of numbers"))
        else:
            columns[key] = values
    if issues:
        raise ConfigError(issues)
    try:
        return McsTable(columns["thresholds_db"], columns["efficiencies"], str(document.get("name", "custom")))
    except ConfigError as e:
        raise ConfigError([(p.replace("mcs", path, 1), text) for p, text in e.issues])


def load_mcs_table(path: Union[str, Path]) -> McsTable:
    path = Path(path)
    try:
        with open(path, "r") as f:
            document = json.load(f)
    except FileNotFoundError:
        raise ConfigError.single("mcs_table", f"file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError.single("mcs_table", f"invalid JSON in {path}: {e}")
    table = mcs_table_from_document(document)
    logger.info(f"Loaded MCS table '{table.name}' with {len(table.efficiencies)} levels from {path}")
    return table
