"""
Line-of-sight channel synthesis.

The A2G channel entry between plane element m and ABS element n is
sqrt(beta_0 G^P G^A) * exp(-j 2 pi d_mn / lambda) with exact element-pair
distances; interference vectors toward the TBSs use the same form. Gains are
evaluated once per array (far-field).
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from src.antennas.arrays import SteeringContext
from src.antennas.patterns import AntennaModel, directivity_gain, tbs_gain_upper_bound
from src.geometry.slots import BsGeometry, SlotGeometry
from src.utils.errors import NearFieldError
from src.utils.units import linear_to_db

from .band import Band
from .path_loss import path_gain

logger = logging.getLogger(__name__)

DEFAULT_FAR_FIELD_TOLERANCE = 1e-3


@dataclass(frozen=True)
class ChannelSnapshot:
    """Channel state of one evaluated slot."""

    H0: np.ndarray  # (N_A, N_P)
    h: np.ndarray  # (K, N_P), one row per TBS
    u_A: np.ndarray
    u_P: np.ndarray
    link_gain: float
    interference_gains: np.ndarray  # beta_i G^P_i G^T_i per TBS
    slot_index: int = 0
    tau: float = 0.0
    rank_ratio: float = 0.0
    far_field_ok: bool = True

    @property
    def n_abs(self) -> int:
        return self.H0.shape[0]

    @property
    def n_plane(self) -> int:
        return self.H0.shape[1]

    @property
    def n_tbs(self) -> int:
        return self.h.shape[0]

    @property
    def array_gain(self) -> float:
        """Scalar A2G gain beta_0 G^P G^A N_A of the rank-one model."""
        return self.link_gain * self.n_abs


def a2g_channel(
    geometry: SlotGeometry,
    plane_antenna: AntennaModel,
    abs_antenna: AntennaModel,
    band: Band,
) -> np.ndarray:
    """
    Synthesize the plane-to-ABS channel matrix H0 for one slot.

    Args:
        geometry: Slot geometry (the ABS entry is used)
        plane_antenna: Plane transmit antenna
        abs_antenna: ABS receive antenna
        band: Carrier band

    Returns:
        np.ndarray: Complex (N_A, N_P) matrix
    """
    link = geometry.abs
    beta = path_gain(link.distance, band.center_frequency_mhz, band.attenuation_db_per_km)
    g_plane = directivity_gain(plane_antenna, link.direction_to_bs)
    g_abs = directivity_gain(abs_antenna, link.direction_to_plane)

    plane_ctx = SteeringContext.for_antenna(plane_antenna, band.wavelength)
    abs_ctx = SteeringContext.for_antenna(abs_antenna, band.wavelength)
    distances = plane_ctx.distances_to(link.plane_position, abs_ctx, link.bs_position)
    return np.sqrt(beta * g_plane * g_abs) * plane_ctx.phase(distances)


def interference_vector(
    geometry: SlotGeometry,
    plane_antenna: AntennaModel,
    tbs_antenna: AntennaModel,
    tbs_index: int,
    band: Band,
) -> np.ndarray:
    """Interference vector h_i (length N_P) from the plane to one TBS."""
    link = geometry.tbs[tbs_index]
    gain = _interference_gain(link, plane_antenna, tbs_antenna, band)
    plane_ctx = SteeringContext.for_antenna(plane_antenna, band.wavelength)
    tbs_ctx = SteeringContext(band.wavelength, np.zeros((1, 3)))
    distances = plane_ctx.distances_to(link.plane_position, tbs_ctx, link.bs_position)[0]
    return np.sqrt(gain) * plane_ctx.phase(distances)


def _interference_gain(link: BsGeometry, plane_antenna: AntennaModel, tbs_antenna: AntennaModel, band: Band) -> float:
    beta = path_gain(link.distance, band.center_frequency_mhz, band.attenuation_db_per_km)
    g_plane = directivity_gain(plane_antenna, link.direction_to_bs)
    g_tbs = tbs_gain_upper_bound(tbs_antenna, link.direction_to_plane)
    return beta * g_plane * g_tbs


def principal_triplet(H0: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray, float]:
    """
    Normalized principal singular triplet of H0, without the rank test.

    Returns:
        Tuple: (link_gain, u_A, u_P, sigma2/sigma1), with ||u_A||^2 = N_A,
        ||u_P||^2 = N_P and the first entry of u_A real non-negative
    """
    H0 = np.atleast_2d(H0)
    n_abs, n_plane = H0.shape
    U, s, Vh = np.linalg.svd(H0, full_matrices=False)
    u_A = U[:, 0] * np.sqrt(n_abs)
    u_P = Vh[0].conj() * np.sqrt(n_plane)
    rotation = np.exp(-1j * np.angle(u_A[0]))
    u_A = u_A * rotation
    u_P = u_P * rotation
    u_A[0] = abs(u_A[0])
    link_gain = float(s[0] ** 2 / (n_abs * n_plane))
    ratio = float(s[1] / s[0]) if len(s) > 1 and s[0] > 0 else 0.0
    return link_gain, u_A, u_P, ratio


def rank_one_factors(
    H0: np.ndarray, tolerance: float = DEFAULT_FAR_FIELD_TOLERANCE
) -> Tuple[float, np.ndarray, np.ndarray]:
    """
    Factor H0 as sqrt(link_gain) * u_A u_P^H.

    Args:
        H0: Complex (N_A, N_P) channel matrix
        tolerance: Largest accepted sigma2/sigma1

    Returns:
        Tuple[float, np.ndarray, np.ndarray]: (link_gain, u_A, u_P)

    Raises:
        NearFieldError: If H0 is not rank-one within the tolerance
    """
    link_gain, u_A, u_P, ratio = principal_triplet(H0)
    if ratio > tolerance:
        raise NearFieldError(ratio, tolerance)
    return link_gain, u_A, u_P


def build_snapshot(
    geometry: SlotGeometry,
    plane_antenna: AntennaModel,
    abs_antenna: AntennaModel,
    tbs_antennas: Sequence[AntennaModel],
    band: Band,
    far_field_tolerance: float = DEFAULT_FAR_FIELD_TOLERANCE,
    strict: bool = False,
) -> ChannelSnapshot:
    """
    Channel snapshot for one slot.

    Outside strict mode a near-field slot keeps its principal triplet and is
    flagged with far_field_ok = False.
    """
    H0 = a2g_channel(geometry, plane_antenna, abs_antenna, band)
    link_gain, u_A, u_P, ratio = principal_triplet(H0)
    far_field_ok = ratio <= far_field_tolerance
    if not far_field_ok:
        if strict:
            raise NearFieldError(ratio, far_field_tolerance)
        logger.warning(
            f"Slot {geometry.slot.index} (tau={geometry.slot.tau_end:.3f}s): channel not rank-one "
            f"(sigma2/sigma1={ratio:.2e}), using principal triplet"
        )

    if len(tbs_antennas) != len(geometry.tbs):
        raise ValueError("one antenna per TBS is required")
    n_plane = H0.shape[1]
    h = np.zeros((len(tbs_antennas), n_plane), dtype=complex)
    gains = np.zeros(len(tbs_antennas))
    for i, antenna in enumerate(tbs_antennas):
        h[i] = interference_vector(geometry, plane_antenna, antenna, i, band)
        gains[i] = _interference_gain(geometry.tbs[i], plane_antenna, antenna, band)

    return ChannelSnapshot(
        H0=H0,
        h=h,
        u_A=u_A,
        u_P=u_P,
        link_gain=link_gain,
        interference_gains=gains,
        slot_index=geometry.slot.index,
        tau=geometry.slot.tau_end,
        rank_ratio=ratio,
        far_field_ok=far_field_ok,
    )


def snapshot_to_document(snapshot: ChannelSnapshot, include_matrix: bool = False) -> Dict[str, Any]:
    """Diagnostic JSON form: magnitudes in dB, phases in radians."""
    document: Dict[str, Any] = {
        "slot_index": snapshot.slot_index,
        "tau_s": snapshot.tau,
        "link_gain_db": linear_to_db(snapshot.link_gain),
        "rank_ratio": snapshot.rank_ratio,
        "far_field_ok": snapshot.far_field_ok,
        "u_A_phase_rad": np.angle(snapshot.u_A).tolist(),
        "u_P_phase_rad": np.angle(snapshot.u_P).tolist(),
        "interference_gain_db": np.atleast_1d(linear_to_db(snapshot.interference_gains)).tolist(),
        "h_phase_rad": np.angle(snapshot.h).tolist(),
    }
    if include_matrix:
        document["H0_magnitude_db"] = (20.0 * np.log10(np.abs(snapshot.H0))).tolist()
        document["H0_phase_rad"] = np.angle(snapshot.H0).tolist()
    return document
