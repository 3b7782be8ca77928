"""
Descent simulation loop and volume accounting.
"""

import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import psutil

from src.channel.synthesis import ChannelSnapshot, build_snapshot
from src.geometry.layout import NetworkLayout, generate_tbs_layout, load_layout, save_layout
from src.geometry.slots import slot_geometry
from src.geometry.trajectory import EvaluatedSlot
from src.optimizer.feasible import NeighborCache
from src.optimizer.problem import SlotProblem, SlotSolution
from src.optimizer.sweep import sweep_M
from src.utils.units import BITS_PER_GB, watts_to_dbm

from .config import RunConfig
from .outputs import emit_outputs, prepare_output_dir

logger = logging.getLogger(__name__)


@dataclass
class SlotRecord:
    """One evaluated slot, standing for `slot.physical_slots` physical slots."""

    slot: EvaluatedSlot
    solution: SlotSolution
    far_field_ok: bool = True
    snapshot: Optional[ChannelSnapshot] = None

    @property
    def tau_s(self) -> float:
        return self.slot.tau_start

    @property
    def bits(self) -> float:
        return self.solution.rate_bps * self.slot.duration

    @property
    def upper_bits(self) -> float:
        return self.solution.upper_bound_bps * self.slot.duration

    @property
    def max_interference_dbm(self) -> float:
        return watts_to_dbm(self.solution.max_interference_w)


@dataclass
class RunStats:
    wall_clock_s: float = 0.0
    slots: int = 0
    sdp_solves: int = 0
    max_iter_hits: int = 0
    near_field_slots: int = 0
    peak_rss_mb: float = 0.0


@dataclass
class RunSummary:
    v_data_bits: float
    v_upper_bits: float
    v_cap_bits: float
    records: List[SlotRecord]
    config: Dict[str, Any]
    seed: int
    stats: RunStats = field(default_factory=RunStats)
    layout: Optional[NetworkLayout] = None

    @property
    def v_data_gb(self) -> float:
        return self.v_data_bits / BITS_PER_GB

    @property
    def v_upper_gb(self) -> float:
        return self.v_upper_bits / BITS_PER_GB

    @property
    def v_cap_gb(self) -> float:
        return self.v_cap_bits / BITS_PER_GB

    def cumulative_curves(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Offloaded volume for every window length T <= T_s.

        The window is anchored at touchdown, so V(T) sums the slots with
        tau_start <= T.

        Returns:
            Tuple of (window lengths in s, V_data in bits, V_upper in bits)
        """
        ordered = sorted(self.records, key=lambda r: r.slot.tau_start)
        windows = np.array([0.0] + [r.slot.tau_start for r in ordered])
        data = np.concatenate([[0.0], np.cumsum([r.bits for r in ordered])])
        upper = np.concatenate([[0.0], np.cumsum([r.upper_bits for r in ordered])])
        return windows, data, upper

    def to_document(self) -> Dict[str, Any]:
        def volume(bits: float) -> Dict[str, Any]:
            if math.isinf(bits):
                return {"bits": "inf", "bytes": "inf", "gb": "inf"}
            return {"bits": bits, "bytes": bits / 8.0, "gb": bits / BITS_PER_GB}

        return {
            "v_data": volume(self.v_data_bits),
            "v_upper": volume(self.v_upper_bits),
            "v_cap": volume(self.v_cap_bits),
            "seed": self.seed,
            "config": self.config,
            "stats": {
                "wall_clock_s": self.stats.wall_clock_s,
                "slots": self.stats.slots,
                "sdp_solves": self.stats.sdp_solves,
                "max_iter_hits": self.stats.max_iter_hits,
                "near_field_slots": self.stats.near_field_slots,
                "peak_rss_mb": self.stats.peak_rss_mb,
            },
        }


def build_layout(config: RunConfig) -> NetworkLayout:
    """Load the layout file or draw a seeded one; save it when asked to."""
    spec = config.layout
    if spec.file is not None:
        layout = load_layout(spec.file)
    else:
        layout = generate_tbs_layout(
            seed=spec.seed,
            count=spec.count,
            region=spec.region,
            runway_length=config.trajectory.runway_length,
            bs_height=spec.bs_height,
            tbs_antenna=config.antennas.tbs,
            top_of_descent=config.trajectory.top_of_descent,
            clearance=spec.clearance_m,
        )
        logger.info(f"Generated {layout.tbs_count} TBSs with seed {spec.seed}")
    if spec.save is not None:
        save_layout(layout, spec.save)
    return layout


def slot_problem(config: RunConfig, snapshot: ChannelSnapshot) -> SlotProblem:
    return SlotProblem(
        snapshot=snapshot,
        scenario=config.scenario,
        n_sub=config.band.n_subchannels,
        b=config.band.subchannel_bandwidth_hz,
        noise_psd=config.noise_psd_w_hz,
        p_max=config.p_max_w,
        p_ant=config.p_ant_w,
        delta=config.delta_w,
        mcs=config.mcs,
        surrogates=list(config.surrogates),
        upper_surrogate=config.upper_surrogate,
        bandwidth=config.band.bandwidth_hz,
        settings=config.solver,
        seed=config.seed,
    )


def _peak_rss_mb(process: psutil.Process) -> float:
    info = process.memory_info()
    # peak_wset on Windows; Linux only exposes the current RSS
    return getattr(info, "peak_wset", info.rss) / 1024 / 1024


def slot_chunks(slots: List[EvaluatedSlot], size: int) -> List[List[EvaluatedSlot]]:
    """Consecutive runs of at most `size` slots, in run order."""
    return [slots[i:i + size] for i in range(0, len(slots), size)]


def solve_chunk(config: RunConfig, layout: NetworkLayout, chunk: List[EvaluatedSlot]) -> List[SlotRecord]:
    """
    Solve consecutive slots in order, sharing one neighbour cache.

    Chunks are independent of each other, so the records do not depend on
    how many chunks run at once.
    """
    cache = NeighborCache()
    records: List[SlotRecord] = []
    for slot in chunk:
        geometry = slot_geometry(slot, config.grid, config.trajectory, layout)
        snapshot = build_snapshot(
            geometry,
            config.antennas.plane,
            config.antennas.abs,
            layout.tbs_antennas,
            config.band,
            far_field_tolerance=config.far_field_tolerance,
        )
        solution = sweep_M(slot_problem(config, snapshot), neighbor_cache=cache)
        if solution.max_iter_hits:
            logger.warning(
                f"Slot {slot.index} (tau={slot.tau_start:.3f}s): {solution.max_iter_hits} SDP solves "
                f"hit the iteration limit"
            )
        logger.debug(
            f"Slot {slot.index} tau={slot.tau_start:.3f}s M*={solution.m_star} "
            f"rate={solution.rate_bps / 1e6:.3f} Mbps ub={solution.upper_bound_bps / 1e6:.3f} Mbps "
            f"method={solution.method.value} solves={solution.sdp_solves}"
        )
        records.append(
            SlotRecord(
                slot,
                solution,
                far_field_ok=snapshot.far_field_ok,
                snapshot=snapshot if config.output.dump_channels else None,
            )
        )
    return records


def run_plan(config: RunConfig, write_outputs: bool = True) -> RunSummary:
    """
    Simulate the last `ts_s` seconds of descent and accumulate offloaded volume.

    Slots are visited from tau = T_s toward touchdown in chunks of
    `chunk_slots` consecutive slots; up to `workers` chunks are solved at
    once. Each evaluated slot is solved once and its rate is credited to
    every physical slot it stands for. Per-slot solver degradations are
    recorded, never raised.

    Args:
        config: Parsed run configuration
        write_outputs: Write CSV/JSON/plots into the output directory

    Returns:
        RunSummary: Volumes, slot records and run statistics

    Raises:
        OutputPathError: If the output directory is not writable (before any solve)
        ConfigError: If a layout file cannot be read
    """
    if write_outputs:
        prepare_output_dir(config.output.directory)

    process = psutil.Process(os.getpid())
    start = time.time()
    stats = RunStats()

    if config.capacity_only:
        logger.info("Capacity-only run: skipping the per-slot solves")
        summary = RunSummary(0.0, 0.0, config.capacity_bits, [], config.document, config.seed, stats)
        stats.wall_clock_s = time.time() - start
        stats.peak_rss_mb = _peak_rss_mb(process)
        if write_outputs:
            emit_outputs(summary, config)
        return summary

    layout = build_layout(config)
    slots = config.grid.evaluated_slots()
    chunks = slot_chunks(slots, config.chunk_slots)
    logger.info(
        f"Planning scenario {config.scenario} on {config.band.name}: {len(slots)} evaluated slots "
        f"over {config.ts_s:g} s in {len(chunks)} chunks, {layout.tbs_count} TBSs, "
        f"{config.band.n_subchannels} subchannels"
    )

    records: List[SlotRecord] = []
    workers = min(config.workers, len(chunks))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            for batch in executor.map(lambda chunk: solve_chunk(config, layout, chunk), chunks):
                records.extend(batch)
                stats.peak_rss_mb = max(stats.peak_rss_mb, _peak_rss_mb(process))
    else:
        for chunk in chunks:
            records.extend(solve_chunk(config, layout, chunk))
            stats.peak_rss_mb = max(stats.peak_rss_mb, _peak_rss_mb(process))

    stats.slots = len(records)
    stats.sdp_solves = sum(r.solution.sdp_solves for r in records)
    stats.max_iter_hits = sum(r.solution.max_iter_hits for r in records)
    stats.near_field_slots = sum(not r.far_field_ok for r in records)
    stats.wall_clock_s = time.time() - start
    stats.peak_rss_mb = max(stats.peak_rss_mb, _peak_rss_mb(process))

    summary = RunSummary(
        v_data_bits=float(sum(r.bits for r in records)),
        v_upper_bits=float(sum(r.upper_bits for r in records)),
        v_cap_bits=config.capacity_bits,
        records=records,
        config=config.document,
        seed=config.seed,
        stats=stats,
        layout=layout,
    )
    logger.info(
        f"V_data={summary.v_data_gb:.3f} GB, V_upper={summary.v_upper_gb:.3f} GB, "
        f"V_cap={summary.v_cap_gb:.3f} GB in {stats.wall_clock_s:.1f}s "
        f"({stats.sdp_solves} SDP solves, {stats.max_iter_hits} at the iteration limit)"
    )
    if write_outputs:
        emit_outputs(summary, config)
    return summary
