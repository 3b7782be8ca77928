"""
Unit conversions between dB-domain quantities and linear values.

All internal arithmetic is linear (watts, W/Hz, linear gains); conversions
happen once at the configuration and table boundaries.
"""

import math

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s
BITS_PER_GB = 8e9


def db_to_linear(value_db):
    """Convert a dB value (scalar or array) to a linear ratio."""
    result = np.power(10.0, np.asarray(value_db, dtype=float) / 10.0)
    return float(result) if result.ndim == 0 else result


def linear_to_db(value):
    """Convert a linear ratio to dB; zero maps to -inf."""
    value = np.asarray(value, dtype=float)
    with np.errstate(divide="ignore"):
        result = 10.0 * np.log10(value)
    return float(result) if result.ndim == 0 else result


def dbm_to_watts(value_dbm: float) -> float:
    """Convert dBm to watts; +inf stays +inf."""
    if math.isinf(value_dbm) and value_dbm > 0:
        return math.inf
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


def watts_to_dbm(value_w: float) -> float:
    """Convert watts to dBm; zero maps to -inf."""
    if value_w <= 0.0:
        return -math.inf
    if math.isinf(value_w):
        return math.inf
    return 10.0 * math.log10(value_w) + 30.0


def wavelength(frequency_mhz: float) -> float:
    """Wavelength in meters for a carrier frequency given in MHz."""
    return SPEED_OF_LIGHT / (frequency_mhz * 1e6)


def bits_to_gb(bits: float) -> float:
    """Convert bits to gigabytes (1 GB = 8e9 bits)."""
    return bits / BITS_PER_GB
