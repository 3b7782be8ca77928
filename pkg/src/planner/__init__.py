"""
Module for configuring and running descent offload plans.
"""

from .config import (
    AntennaSetup,
    LayoutSpec,
    OutputSpec,
    RunConfig,
    config_echo,
    default_antennas,
    parse_config,
    parse_delta,
)
from .outputs import CSV_HEADER, emit_outputs, plot_results, prepare_output_dir
from .run import RunStats, RunSummary, SlotRecord, build_layout, run_plan, slot_chunks, slot_problem, solve_chunk

__all__ = [
    "AntennaSetup",
    "LayoutSpec",
    "OutputSpec",
    "RunConfig",
    "config_echo",
    "default_antennas",
    "parse_config",
    "parse_delta",
    "CSV_HEADER",
    "emit_outputs",
    "plot_results",
    "prepare_output_dir",
    "RunStats",
    "RunSummary",
    "SlotRecord",
    "build_layout",
    "run_plan",
    "slot_chunks",
    "solve_chunk",
    "slot_problem",
]
