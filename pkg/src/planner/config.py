"""
Run configuration.

A run is described by one JSON document. parse_config applies the band and
scenario defaults, rejects unknown keys and collects every problem into a
single ConfigError whose issues name the offending JSON path.
"""

import logging
import math
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from src.antennas.patterns import (
    AntennaModel,
    Directional,
    Mounting,
    TriSector,
    Upa,
    antenna_from_descriptor,
    antenna_to_descriptor,
)
from src.channel.band import BAND_PRESETS, Band
from src.geometry.layout import DEFAULT_BS_HEIGHT, DEFAULT_CLEARANCE, RegionSpec
from src.geometry.trajectory import DescentTrajectory, SlotGrid
from src.linkrate.mcs import LTE_A_TABLE, McsTable, ShannonRate, load_mcs_table, mcs_table_from_document
from src.linkrate.surrogate import UPPER_SURROGATE, Surrogate, default_surrogates, validate_upper_bound
from src.optimizer.problem import SolverSettings
from src.utils.errors import ConfigError
from src.utils.units import dbm_to_watts

logger = logging.getLogger(__name__)

MCS_MODES = ("lte-a", "shannon", "custom-table")
SDP_BACKENDS = ("admm", "cvxpy")

_TOP_LEVEL = {
    "band", "custom_band", "n_subchannels", "scenario", "ts_s", "max_ts_s", "delta", "p_max_w",
    "p_ant_w", "noise_psd_dbm_hz", "slot_duration_s", "mcs", "mcs_table", "seed", "decimation",
    "refine_window_s", "refine_factor", "exhaustive_m", "capacity_only", "full_bandwidth",
    "workers", "chunk_slots", "trajectory", "layout", "antennas", "solver", "output",
}
_CUSTOM_BAND = {"center_frequency_mhz", "bandwidth_hz", "attenuation_db_per_km", "n_subchannels",
                "subchannel_bandwidth_hz"}
_TRAJECTORY = {"pitch_angle_deg", "vertical_velocity", "runway_length", "cruising_altitude"}
_LAYOUT = {"file", "save", "seed", "count", "region", "bs_height", "clearance_m"}
_REGION = {"x_min", "x_max", "y_min", "y_max"}
_ANTENNAS = {"plane", "abs", "tbs"}
_SOLVER = {"backend", "tol", "max_iter", "rank_tol", "n_trials", "frontier_rescale", "printed_l3",
           "refine_limit", "far_field_tolerance", "search_tol"}
_OUTPUT = {"directory", "plots", "plot_format", "dump_channels", "dump_residuals"}

_DELTA_PATTERN = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(dBm)?\s*$")


@dataclass(frozen=True)
class LayoutSpec:
    file: Optional[Path] = None
    save: Optional[Path] = None
    seed: int = 0
    count: int = 120
    region: RegionSpec = field(default_factory=RegionSpec)
    bs_height: float = DEFAULT_BS_HEIGHT
    clearance_m: float = DEFAULT_CLEARANCE


@dataclass(frozen=True)
class AntennaSetup:
    plane: AntennaModel
    abs: AntennaModel
    tbs: AntennaModel


@dataclass(frozen=True)
class OutputSpec:
    directory: Path = Path("results")
    plots: bool = False
    plot_format: str = "png"
    dump_channels: bool = False
    dump_residuals: bool = False


@dataclass(frozen=True)
class RunConfig:
    band: Band
    scenario: int
    ts_s: float
    delta_dbm: float
    p_max_w: float
    p_ant_w: float
    noise_psd_dbm_hz: float
    mcs_mode: str
    mcs: Union[McsTable, ShannonRate]
    seed: int
    trajectory: DescentTrajectory
    grid: SlotGrid
    layout: LayoutSpec
    antennas: AntennaSetup
    solver: SolverSettings
    output: OutputSpec
    capacity_only: bool = False
    workers: int = 1
    chunk_slots: int = 32
    far_field_tolerance: float = 1e-3
    surrogates: List[Surrogate] = field(default_factory=default_surrogates)
    upper_surrogate: Surrogate = UPPER_SURROGATE
    document: Dict[str, Any] = field(default_factory=dict)

    @property
    def delta_w(self) -> float:
        return dbm_to_watts(self.delta_dbm)

    @property
    def noise_psd_w_hz(self) -> float:
        return dbm_to_watts(self.noise_psd_dbm_hz)

    @property
    def capacity_bits(self) -> float:
        """B * T_s * e_max."""
        if self.ts_s == 0:
            return 0.0
        return self.band.bandwidth_hz * self.ts_s * self.mcs.e_max


def parse_delta(value: Any, path: str = "delta") -> float:
    """
    Interference cap in dBm from a number, "inf" or a string such as "-100 dBm".

    Raises:
        ConfigError: For other units or malformed values
    """
    if isinstance(value, bool):
        raise ConfigError.single(path, "must be a number of dBm or 'inf'")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        text = value.strip()
        if text.lower() in ("inf", "+inf", "infinity"):
            return math.inf
        match = _DELTA_PATTERN.match(text)
        if match:
            return float(match.group(1))
        raise ConfigError.single(path, f"cannot read {value!r}; give the cap in dBm, e.g. '-100 dBm', or 'inf'")
    raise ConfigError.single(path, "must be a number of dBm or 'inf'")


class _Reader:
    """Typed access to one JSON object, recording issues instead of raising."""

    def __init__(self, document: Any, path: str, allowed: set, issues: List[Tuple[str, str]]):
        self.path = path
        self.issues = issues
        if document is None:
            document = {}
        if not isinstance(document, dict):
            issues.append((path or "$", "must be an object"))
            document = {}
        self.document = document
        for key in sorted(set(document) - allowed):
            issues.append((self._join(key), "unknown key"))

    def _join(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def has(self, key: str) -> bool:
        return key in self.document

    def number(self, key: str, default: float, minimum: Optional[float] = None, strict: bool = False) -> float:
        value = self.document.get(key, default)
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            self.issues.append((self._join(key), f"must be a finite number, got {value!r}"))
            return default
        if minimum is not None and (value <= minimum if strict else value < minimum):
            relation = ">" if strict else ">="
            self.issues.append((self._join(key), f"must be {relation} {minimum}, got {value}"))
            return default
        return float(value)

    def integer(self, key: str, default: int, minimum: Optional[int] = None) -> int:
        value = self.document.get(key, default)
        if isinstance(value, bool) or not isinstance(value, int):
            self.issues.append((self._join(key), f"must be an integer, got {value!r}"))
            return default
        if minimum is not None and value < minimum:
            self.issues.append((self._join(key), f"must be >= {minimum}, got {value}"))
            return default
        return value

    def flag(self, key: str, default: bool) -> bool:
        value = self.document.get(key, default)
        if not isinstance(value, bool):
            self.issues.append((self._join(key), f"must be true or false, got {value!r}"))
            return default
        return value

    def choice(self, key: str, default: str, options) -> str:
        value = self.document.get(key, default)
        if value not in options:
            self.issues.append((self._join(key), f"must be one of {list(options)}, got {value!r}"))
            return default
        return value

    def text(self, key: str, default: Optional[str]) -> Optional[str]:
        value = self.document.get(key, default)
        if value is not None and not isinstance(value, str):
            self.issues.append((self._join(key), f"must be a string, got {value!r}"))
            return default
        return value

    def child(self, key: str, allowed: set) -> "_Reader":
        return _Reader(self.document.get(key), self._join(key), allowed, self.issues)


def default_antennas(scenario: int, band: Band) -> AntennaSetup:
    """Antennas of each scenario: plane directional or 5x5 UPA, ABS directional or 32x32 UPA."""
    wavelength = band.wavelength
    if scenario in (1, 2):
        plane: AntennaModel = Directional(azimuth_deg=180.0, tilt_deg=0.0, boresight_gain_dbi=8.0)
    else:
        plane = Upa.half_wavelength(5, 5, wavelength, mounting=Mounting(azimuth_deg=0.0, elevation_deg=-90.0))
    if scenario in (1, 3):
        abs_antenna: AntennaModel = Directional(azimuth_deg=0.0, tilt_deg=3.0, boresight_gain_dbi=17.7)
    else:
        abs_antenna = Upa.half_wavelength(32, 32, wavelength, mounting=Mounting(azimuth_deg=0.0, elevation_deg=0.0))
    if band.name == "mmwave":
        tbs: AntennaModel = Upa.half_wavelength(16, 16, wavelength)
    else:
        tbs = TriSector()
    return AntennaSetup(plane, abs_antenna, tbs)


def _parse_band(reader: _Reader, issues) -> Band:
    name = reader.choice("band", "microwave", list(BAND_PRESETS) + ["custom"])
    custom = reader.child("custom_band", _CUSTOM_BAND)
    if name == "custom":
        base = BAND_PRESETS["microwave"]
        if not reader.has("custom_band"):
            issues.append(("custom_band", "required when band is 'custom'"))
        band = Band(
            "custom",
            custom.number("center_frequency_mhz", base.center_frequency_mhz, 0.0, strict=True),
            custom.number("bandwidth_hz", base.bandwidth_hz, 0.0, strict=True),
            custom.number("attenuation_db_per_km", base.attenuation_db_per_km, 0.0),
            0,
            custom.number("subchannel_bandwidth_hz", base.subchannel_bandwidth_hz, 0.0, strict=True),
        )
        default_sub = custom.integer("n_subchannels", max(1, int(math.ceil(band.bandwidth_hz / band.subchannel_bandwidth_hz))), 1)
        band = replace(band, n_subchannels=default_sub)
    else:
        band = BAND_PRESETS[name]
    if reader.has("n_subchannels"):
        band = replace(band, n_subchannels=reader.integer("n_subchannels", band.n_subchannels, 1))
    ratio = band.bandwidth_hz / band.subchannel_bandwidth_hz
    if band.n_subchannels > math.ceil(ratio) + 1 or band.n_subchannels < math.floor(ratio) - 1:
        logger.warning(
            f"{band.n_subchannels} subchannels of {band.subchannel_bandwidth_hz / 1e3:g} kHz "
            f"do not match the {band.bandwidth_hz / 1e6:g} MHz band ({ratio:.1f}); rates are capped at the band"
        )
    return band


def _parse_mcs(reader: _Reader, issues) -> Tuple[str, Union[McsTable, ShannonRate]]:
    mode = reader.choice("mcs", "lte-a", MCS_MODES)
    table_source = reader.document.get("mcs_table")
    if mode == "lte-a":
        return mode, LTE_A_TABLE
    if mode == "shannon":
        return mode, ShannonRate()
    try:
        if isinstance(table_source, str):
            return mode, load_mcs_table(table_source)
        if isinstance(table_source, dict):
            return mode, mcs_table_from_document(table_source)
        issues.append(("mcs_table", "custom-table mode needs an inline table or a file path"))
    except ConfigError as e:
        issues.extend(e.issues)
    return mode, LTE_A_TABLE


def _parse_antennas(reader: _Reader, scenario: int, band: Band, issues) -> AntennaSetup:
    defaults = default_antennas(scenario, band)
    section = reader.child("antennas", _ANTENNAS)
    chosen = {}
    for role in ("plane", "abs", "tbs"):
        if section.has(role):
            try:
                chosen[role] = antenna_from_descriptor(section.document[role], f"antennas.{role}", band.wavelength)
            except ConfigError as e:
                issues.extend(e.issues)
                chosen[role] = getattr(defaults, role)
        else:
            chosen[role] = getattr(defaults, role)
    setup = AntennaSetup(**chosen)
    if scenario in (1, 2) and setup.plane.n_elements != 1:
        issues.append(("antennas.plane", f"scenario {scenario} needs a single-antenna plane"))
    if scenario in (3, 4) and setup.plane.n_elements < 2:
        logger.warning(f"Scenario {scenario} with a single-antenna plane; the relaxation is exact")
    return setup


def parse_config(document: Dict[str, Any]) -> RunConfig:
    """
    Resolve a JSON configuration document into a RunConfig.

    Args:
        document: Parsed JSON object; absent fields take their defaults

    Returns:
        RunConfig: Fully resolved configuration

    Raises:
        ConfigError: With one (json path, message) issue per problem found
    """
    issues: List[Tuple[str, str]] = []
    top = _Reader(document, "", _TOP_LEVEL, issues)

    band = _parse_band(top, issues)
    scenario = top.integer("scenario", 4)
    if scenario not in (1, 2, 3, 4):
        issues.append(("scenario", f"must be 1, 2, 3 or 4, got {scenario}"))
        scenario = 4

    max_ts = top.number("max_ts_s", 300.0, 0.0)
    ts_s = top.number("ts_s", 300.0, 0.0)
    if ts_s > max_ts:
        issues.append(("ts_s", f"must not exceed max_ts_s={max_ts:g}"))

    delta_dbm = -100.0
    try:
        delta_dbm = parse_delta(top.document.get("delta", -100.0))
    except ConfigError as e:
        issues.extend(e.issues)
    if delta_dbm > 30.0 and math.isfinite(delta_dbm):
        logger.warning(f"delta={delta_dbm:g} dBm exceeds 1 W per subchannel; was it given in dBm?")

    p_max = top.number("p_max_w", 1.0, 0.0, strict=True)
    p_ant = top.number("p_ant_w", 0.2, 0.0, strict=True)
    noise = top.number("noise_psd_dbm_hz", -174.0)
    slot_duration = top.number("slot_duration_s", 1e-3, 0.0, strict=True)
    mcs_mode, mcs = _parse_mcs(top, issues)
    seed = top.integer("seed", 0, 0)
    decimation = top.integer("decimation", 1000, 1)
    refine_window = top.number("refine_window_s", 30.0, 0.0)
    refine_factor = top.integer("refine_factor", 10, 1)
    workers = top.integer("workers", 1, 1)
    chunk_slots = top.integer("chunk_slots", 32, 1)

    trajectory_reader = top.child("trajectory", _TRAJECTORY)
    trajectory = None
    try:
        trajectory = DescentTrajectory(
            pitch_angle_deg=trajectory_reader.number("pitch_angle_deg", 3.0),
            vertical_velocity=trajectory_reader.number("vertical_velocity", -12.7),
            runway_length=trajectory_reader.number("runway_length", 4000.0),
            cruising_altitude=trajectory_reader.number("cruising_altitude", 12000.0),
        )
    except ConfigError as e:
        issues.extend(e.issues)

    grid = None
    try:
        grid = SlotGrid(slot_duration, ts_s, decimation, refine_window, refine_factor)
    except ConfigError as e:
        issues.extend(e.issues)

    layout_reader = top.child("layout", _LAYOUT)
    region_reader = layout_reader.child("region", _REGION)
    default_region = RegionSpec()
    region = RegionSpec(
        region_reader.number("x_min", default_region.x_min),
        region_reader.number("x_max", default_region.x_max),
        region_reader.number("y_min", default_region.y_min),
        region_reader.number("y_max", default_region.y_max),
    )
    layout_file = layout_reader.text("file", None)
    if layout_file is None:
        try:
            region.validate()
        except ConfigError as e:
            issues.extend(e.issues)
    layout_save = layout_reader.text("save", None)
    layout = LayoutSpec(
        file=Path(layout_file) if layout_file else None,
        save=Path(layout_save) if layout_save else None,
        seed=layout_reader.integer("seed", seed, 0),
        count=layout_reader.integer("count", 120, 0),
        region=region,
        bs_height=layout_reader.number("bs_height", DEFAULT_BS_HEIGHT, 0.0),
        clearance_m=layout_reader.number("clearance_m", DEFAULT_CLEARANCE, 0.0),
    )

    antennas = _parse_antennas(top, scenario, band, issues)
    if scenario in (1, 2):
        # a single antenna has no separate per-antenna budget
        p_ant = p_max
    elif antennas.plane.n_elements * p_ant < p_max:
        logger.warning(
            f"Per-antenna budget limits the total transmit power to "
            f"{antennas.plane.n_elements * p_ant:g} W (< P_max={p_max:g} W)"
        )

    output_reader = top.child("output", _OUTPUT)
    output = OutputSpec(
        directory=Path(output_reader.text("directory", "results") or "results"),
        plots=output_reader.flag("plots", False),
        plot_format=output_reader.choice("plot_format", "png", ("png", "svg", "pdf")),
        dump_channels=output_reader.flag("dump_channels", False),
        dump_residuals=output_reader.flag("dump_residuals", False),
    )

    solver_reader = top.child("solver", _SOLVER)
    solver = SolverSettings(
        backend=solver_reader.choice("backend", "admm", SDP_BACKENDS),
        tol=solver_reader.number("tol", 1e-6, 0.0, strict=True),
        search_tol=solver_reader.number("search_tol", 1e-4, 0.0, strict=True),
        max_iter=solver_reader.integer("max_iter", 50000, 1),
        rank_tol=solver_reader.number("rank_tol", 1e-6, 0.0, strict=True),
        n_trials=solver_reader.integer("n_trials", 100, 1),
        frontier_rescale=solver_reader.flag("frontier_rescale", True),
        printed_l3=solver_reader.flag("printed_l3", False),
        exhaustive_m=top.flag("exhaustive_m", False),
        full_bandwidth=top.flag("full_bandwidth", False),
        refine_limit=solver_reader.integer("refine_limit", 16, 1),
        record_history=output.dump_residuals,
    )
    far_field_tolerance = solver_reader.number("far_field_tolerance", 1e-3, 0.0, strict=True)

    capacity_only = top.flag("capacity_only", False)

    surrogates: List[Surrogate] = []
    upper_surrogate = UPPER_SURROGATE
    if isinstance(mcs, McsTable):
        surrogates = default_surrogates(mcs.e_max)
        upper_surrogate = UPPER_SURROGATE.with_cap(mcs.e_max)
        if not validate_upper_bound(upper_surrogate, mcs):
            logger.warning(f"Upper surrogate does not dominate MCS table '{mcs.name}'; the upper bound is not certified")

    if issues:
        raise ConfigError(issues)

    config = RunConfig(
        band=band,
        scenario=scenario,
        ts_s=ts_s,
        delta_dbm=delta_dbm,
        p_max_w=p_max,
        p_ant_w=p_ant,
        noise_psd_dbm_hz=noise,
        mcs_mode=mcs_mode,
        mcs=mcs,
        seed=seed,
        trajectory=trajectory,
        grid=grid,
        layout=layout,
        antennas=antennas,
        solver=solver,
        output=output,
        capacity_only=capacity_only,
        workers=workers,
        chunk_slots=chunk_slots,
        far_field_tolerance=far_field_tolerance,
        surrogates=surrogates,
        upper_surrogate=upper_surrogate,
    )
    return replace(config, document=config_echo(config))


def config_echo(config: RunConfig) -> Dict[str, Any]:
    """Resolved configuration in document form, for the run summary."""
    return {
        "band": config.band.name,
        "custom_band": {
            "center_frequency_mhz": config.band.center_frequency_mhz,
            "bandwidth_hz": config.band.bandwidth_hz,
            "attenuation_db_per_km": config.band.attenuation_db_per_km,
            "n_subchannels": config.band.n_subchannels,
            "subchannel_bandwidth_hz": config.band.subchannel_bandwidth_hz,
        },
        "scenario": config.scenario,
        "ts_s": config.ts_s,
        "delta": "inf" if math.isinf(config.delta_dbm) else config.delta_dbm,
        "p_max_w": config.p_max_w,
        "p_ant_w": config.p_ant_w,
        "noise_psd_dbm_hz": config.noise_psd_dbm_hz,
        "slot_duration_s": config.grid.slot_duration,
        "mcs": config.mcs_mode,
        "seed": config.seed,
        "decimation": config.grid.decimation,
        "refine_window_s": config.grid.refine_window,
        "refine_factor": config.grid.refine_factor,
        "exhaustive_m": config.solver.exhaustive_m,
        "capacity_only": config.capacity_only,
        "full_bandwidth": config.solver.full_bandwidth,
        "workers": config.workers,
        "chunk_slots": config.chunk_slots,
        "trajectory": {
            "pitch_angle_deg": config.trajectory.pitch_angle_deg,
            "vertical_velocity": config.trajectory.vertical_velocity,
            "runway_length": config.trajectory.runway_length,
            "cruising_altitude": config.trajectory.cruising_altitude,
        },
        "layout": {
            "file": str(config.layout.file) if config.layout.file else None,
            "seed": config.layout.seed,
            "count": config.layout.count,
            "bs_height": config.layout.bs_height,
        },
        "antennas": {
            "plane": antenna_to_descriptor(config.antennas.plane),
            "abs": antenna_to_descriptor(config.antennas.abs),
            "tbs": antenna_to_descriptor(config.antennas.tbs),
        },
        "solver": {
            "backend": config.solver.backend,
            "tol": config.solver.tol,
            "search_tol": config.solver.search_tol,
            "max_iter": config.solver.max_iter,
            "rank_tol": config.solver.rank_tol,
            "n_trials": config.solver.n_trials,
            "frontier_rescale": config.solver.frontier_rescale,
            "printed_l3": config.solver.printed_l3,
            "refine_limit": config.solver.refine_limit,
        },
    }
