#!/usr/bin/env python3
"""
descentlink - Descent-phase offload planner

This is the main entry point for descentlink. The `plan` command reads a JSON
run configuration, applies command-line overrides and writes per-slot results
and a volume summary.
"""

import argparse
import copy
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from termcolor import colored

from src.planner import parse_config, run_plan
from src.utils.errors import ConfigError, OutputPathError
from src.utils.logger import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="descentlink",
        description="Plan aircraft-to-ground data offload during the descent phase.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log per-slot progress")
    parser.add_argument("--log-file", type=str, default=None, help="Also write the log to this file")
    commands = parser.add_subparsers(dest="command", required=True)

    plan = commands.add_parser("plan", help="Run a descent offload plan")
    plan.add_argument("--config", type=str, default=None, help="JSON run configuration (default: all defaults)")
    plan.add_argument("--scenario", type=int, choices=[1, 2, 3, 4], help="Antenna scenario")
    plan.add_argument("--ts", type=float, help="Transmission window T_s in seconds")
    plan.add_argument("--pmax", type=float, help="Total transmit power budget in W")
    plan.add_argument("--delta", type=str, help="Per-subchannel interference cap in dBm, or 'inf'")
    plan.add_argument("--band", choices=["microwave", "mmwave"], help="Frequency band preset")
    plan.add_argument("--seed", type=int, help="Seed for the TBS layout and randomization")
    plan.add_argument("--decimation", type=int, help="Physical slots per evaluated slot")
    plan.add_argument("--exhaustive-m", action="store_true", default=None, help="Try every subchannel count")
    plan.add_argument("--full-bandwidth", action="store_true", default=None, help="Always use every subchannel")
    plan.add_argument("--mcs", choices=["lte-a", "shannon", "custom-table"], help="Rate model")
    plan.add_argument("--out", type=str, help="Output directory")
    plan.add_argument("--plots", action="store_true", default=None, help="Write volume and per-slot plots")
    plan.add_argument("--capacity-only", action="store_true", default=None, help="Only compute V_cap")
    plan.add_argument("--dump-channels", action="store_true", default=None, help="Write channel snapshots as JSON")
    plan.add_argument("--dump-residuals", action="store_true", default=None, help="Write SDP residuals as CSV")
    plan.add_argument("--workers", type=int, help="Threads solving chunks of slots in parallel")
    return parser


def load_document(path: Optional[str]) -> Dict[str, Any]:
    if path is None:
        return {}
    try:
        with open(path, "r") as f:
            document = json.load(f)
    except FileNotFoundError:
        raise ConfigError.single("--config", f"file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError.single("--config", f"invalid JSON in {path}: {e}")
    if not isinstance(document, dict):
        raise ConfigError.single("--config", "configuration must be a JSON object")
    return document


def apply_overrides(document: Dict[str, Any], args: argparse.Namespace) -> Dict[str, Any]:
    """Copy of the document with command-line flags written over its fields."""
    document = copy.deepcopy(document)
    top_level = {
        "scenario": "scenario",
        "ts": "ts_s",
        "pmax": "p_max_w",
        "band": "band",
        "seed": "seed",
        "decimation": "decimation",
        "exhaustive_m": "exhaustive_m",
        "full_bandwidth": "full_bandwidth",
        "mcs": "mcs",
        "capacity_only": "capacity_only",
        "workers": "workers",
    }
    for flag, key in top_level.items():
        value = getattr(args, flag, None)
        if value is not None:
            document[key] = value
    if args.delta is not None:
        try:
            document["delta"] = float(args.delta)
        except ValueError:
            document["delta"] = args.delta

    output = {
        "out": "directory",
        "plots": "plots",
        "dump_channels": "dump_channels",
        "dump_residuals": "dump_residuals",
    }
    for flag, key in output.items():
        value = getattr(args, flag, None)
        if value is not None:
            section = document.setdefault("output", {})
            if isinstance(section, dict):
                section[key] = value
    return document


def _format_gb(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.3f} GB"


def print_summary(summary, output_dir: Path):
    print(colored("\n" + "=" * 50, "cyan"))
    print(colored("DESCENT OFFLOAD PLAN", "cyan", attrs=["bold"]))
    print(colored("=" * 50, "cyan"))
    print(f"  V_data : {colored(_format_gb(summary.v_data_gb), 'green', attrs=['bold'])}")
    print(f"  V_upper: {_format_gb(summary.v_upper_gb)}")
    print(f"  V_cap  : {_format_gb(summary.v_cap_gb)}")
    stats = summary.stats
    print(f"  Slots  : {stats.slots}, SDP solves: {stats.sdp_solves}, wall clock {stats.wall_clock_s:.1f}s")
    if stats.max_iter_hits:
        print(colored(f"  {stats.max_iter_hits} SDP solves stopped at the iteration limit", "yellow"))
    if stats.near_field_slots:
        print(colored(f"  {stats.near_field_slots} slots used the near-field fallback", "yellow"))
    print(f"  Results: {output_dir}")
    print(colored("=" * 50, "cyan"))


def plan_command(args: argparse.Namespace) -> int:
    document = apply_overrides(load_document(args.config), args)
    config = parse_config(document)
    summary = run_plan(config)
    print_summary(summary, config.output.directory)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the command line."""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(logging.DEBUG if args.verbose else logging.INFO, args.log_file)

    try:
        if args.command == "plan":
            return plan_command(args)
        parser.error(f"unknown command {args.command}")
    except ConfigError as e:
        logger.error("Invalid configuration:")
        for path, message in e.issues:
            logger.error(f"  {path}: {message}")
        print(colored(f"Configuration error ({len(e.issues)} issues)", "red"), file=sys.stderr)
        return EXIT_CONFIG
    except (OutputPathError, OSError) as e:
        logger.error(f"I/O error: {e}")
        print(colored(f"I/O error: {e}", "red"), file=sys.stderr)
        return EXIT_IO
    except Exception as e:
        logger.exception(f"Run failed: {e}")
        return EXIT_FAILURE
    return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
