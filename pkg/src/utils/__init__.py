"""
Shared utilities for descentlink: logging setup, unit conversions and errors.
"""

from .errors import (
    DescentLinkError,
    ConfigError,
    GeometryError,
    NearFieldError,
    SdpInputError,
    AntennaTypeError,
    OutputPathError,
)
from .logger import setup_logging
from . import units

__all__ = [
    "DescentLinkError",
    "ConfigError",
    "GeometryError",
    "NearFieldError",
    "SdpInputError",
    "AntennaTypeError",
    "OutputPathError",
    "setup_logging",
    "units",
]
