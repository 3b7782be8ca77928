"""
Result files: per-slot CSV, JSON summary, plots and diagnostic dumps.
"""

import csv
import json
import logging
import math
import traceback
from pathlib import Path
from typing import Dict, List, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from src.channel.synthesis import snapshot_to_document  # noqa: E402
from src.utils.errors import OutputPathError  # noqa: E402
from src.utils.units import BITS_PER_GB  # noqa: E402

logger = logging.getLogger(__name__)

CSV_HEADER = [
    "tau_s",
    "M_star",
    "rate_bps",
    "upper_bound_bps",
    "snr_db",
    "tx_power_w",
    "max_interference_dbm",
    "rank1",
    "method",
]
RESIDUAL_HEADER = ["slot_index", "tau_s", "m", "surrogate", "iteration", "primal", "dual", "gap", "rho"]

SLOTS_FILE = "slots.csv"
SUMMARY_FILE = "summary.json"
CHANNELS_FILE = "channels.json"
RESIDUALS_FILE = "residuals.csv"


def _number(value: float) -> str:
    # repr round-trips the float exactly, which keeps reruns byte-identical
    return repr(float(value))


def prepare_output_dir(directory: Union[str, Path]) -> Path:
    """
    Create the output directory and check that it is writable.

    Raises:
        OutputPathError: If the directory cannot be created or written to
    """
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
        marker = directory / ".write_check"
        marker.write_text("")
        marker.unlink()
    except OSError as e:
        raise OutputPathError(f"output directory {directory} is not writable: {e}")
    return directory


def slot_rows(summary) -> List[List[str]]:
    """CSV rows in run order (tau_s decreasing)."""
    rows = []
    for record in summary.records:
        s = record.solution
        rows.append([
            _number(record.tau_s),
            str(s.m_star),
            _number(s.rate_bps),
            _number(s.upper_bound_bps),
            _number(s.snr_db),
            _number(s.tx_power_w),
            _number(record.max_interference_dbm),
            "true" if s.rank1 else "false",
            s.method.value,
        ])
    return rows


def write_slots_csv(summary, path: Path):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(slot_rows(summary))


def write_summary_json(summary, path: Path):
    with open(path, "w") as f:
        json.dump(summary.to_document(), f, indent=2, sort_keys=True)


def write_channel_dump(summary, path: Path):
    documents = [snapshot_to_document(r.snapshot) for r in summary.records if r.snapshot is not None]
    with open(path, "w") as f:
        json.dump(documents, f, indent=2)


def write_residuals_csv(summary, path: Path):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(RESIDUAL_HEADER)
        for record in summary.records:
            for (m, key), history in sorted(record.solution.residuals.items()):
                for iteration, primal, dual, gap, rho in history:
                    writer.writerow([
                        record.slot.index,
                        _number(record.tau_s),
                        m,
                        key,
                        iteration,
                        _number(primal),
                        _number(dual),
                        _number(gap),
                        _number(rho),
                    ])


def plot_results(summary, directory: Path, plot_format: str = "png") -> List[Path]:
    """
    Cumulative volume against window length, and per-slot rate and power.

    Plot failures are logged and never abort the run.
    """
    written = []
    try:
        windows, data, upper = summary.cumulative_curves()
        plt.figure(figsize=(10, 6))
        plt.plot(windows, data / BITS_PER_GB, label="V_data")
        plt.plot(windows, upper / BITS_PER_GB, linestyle="--", label="V_upper")
        if math.isfinite(summary.v_cap_bits) and len(windows) > 1:
            rate_cap = summary.v_cap_bits / windows[-1] if windows[-1] > 0 else 0.0
            plt.plot(windows, windows * rate_cap / BITS_PER_GB, linestyle=":", label="V_cap")
        plt.title("Offloaded data volume")
        plt.xlabel("Transmission window T_s (seconds)")
        plt.ylabel("Volume (GB)")
        plt.legend()
        plt.grid(True)
        plt.tight_layout()
        path = directory / f"volume.{plot_format}"
        plt.savefig(path)
        plt.close()
        written.append(path)

        tau = [r.tau_s for r in summary.records]
        plt.figure(figsize=(10, 8))
        plt.subplot(2, 1, 1)
        plt.plot(tau, [r.solution.rate_bps / 1e6 for r in summary.records], label="rate")
        plt.plot(tau, [r.solution.upper_bound_bps / 1e6 for r in summary.records], linestyle="--", label="upper bound")
        plt.title("Per-slot rate")
        plt.xlabel("Time to touchdown (seconds)")
        plt.ylabel("Rate (Mbps)")
        plt.legend()
        plt.grid(True)

        plt.subplot(2, 1, 2)
        plt.plot(tau, [r.solution.tx_power_w for r in summary.records])
        plt.title("Transmit power")
        plt.xlabel("Time to touchdown (seconds)")
        plt.ylabel("Power (W)")
        plt.grid(True)

        plt.tight_layout()
        path = directory / f"slots.{plot_format}"
        plt.savefig(path)
        plt.close()
        written.append(path)
        logger.info(f"Saved plots to {directory}")
    except Exception as e:
        logger.error(f"Error creating plots: {e}")
        logger.error(traceback.format_exc())
        plt.close("all")
    return written


def emit_outputs(summary, config) -> Dict[str, Path]:
    """
    Write every requested result file.

    Args:
        summary: Completed RunSummary
        config: RunConfig holding the output options

    Returns:
        Dict[str, Path]: File role -> written path

    Raises:
        OutputPathError: If a file cannot be written
    """
    directory = prepare_output_dir(config.output.directory)
    files = {"slots": directory / SLOTS_FILE, "summary": directory / SUMMARY_FILE}
    try:
        write_slots_csv(summary, files["slots"])
        write_summary_json(summary, files["summary"])
        if config.output.dump_channels:
            files["channels"] = directory / CHANNELS_FILE
            write_channel_dump(summary, files["channels"])
        if config.output.dump_residuals:
            files["residuals"] = directory / RESIDUALS_FILE
            write_residuals_csv(summary, files["residuals"])
    except OSError as e:
        raise OutputPathError(f"cannot write results to {directory}: {e}")
    if config.output.plots:
        for path in plot_results(summary, directory, config.output.plot_format):
            files[path.stem + "_plot"] = path
    logger.info(f"Wrote {', '.join(str(p.name) for p in files.values())} to {directory}")
    return files
