"""
Exception hierarchy for descentlink.
"""

from typing import List, Optional, Tuple


class DescentLinkError(Exception):
    """Base class for every error raised by the planner."""


class ConfigError(DescentLinkError):
    """
    Invalid configuration, layout or table document.

    Holds an itemized list of (json_path, message) issues so that a user sees
    every problem of a document at once instead of fixing them one by one.
    """

    def __init__(self, issues: List[Tuple[str, str]], message: Optional[str] = None):
        self.issues = list(issues)
        if message is None:
            lines = [f"{path}: {text}" for path, text in self.issues]
            message = "invalid configuration:\n  " + "\n  ".join(lines)
        super().__init__(message)

    @classmethod
    def single(cls, path: str, text: str) -> "ConfigError":
        """Build an error carrying one issue."""
        return cls([(path, text)])


class GeometryError(DescentLinkError):
    """Degenerate geometry, e.g. coincident observer and target."""


class NearFieldError(DescentLinkError):
    """The A2G channel is not rank-one within the far-field tolerance."""

    def __init__(self, ratio: float, tolerance: float):
        self.ratio = ratio
        self.tolerance = tolerance
        super().__init__(
            f"channel is not rank-one: sigma2/sigma1 = {ratio:.3e} > {tolerance:.1e}"
        )


class SdpInputError(DescentLinkError, ValueError):
    """Malformed semidefinite program (non-Hermitian data, oversized problem)."""


class AntennaTypeError(DescentLinkError, TypeError):
    """Operation requested on an antenna variant that does not support it."""


class OutputPathError(DescentLinkError, OSError):
    """An output location cannot be created or written."""
