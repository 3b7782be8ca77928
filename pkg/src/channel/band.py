"""
Frequency band definitions.
"""

from dataclasses import dataclass

from src.utils.units import wavelength


@dataclass(frozen=True)
class Band:
    name: str
    center_frequency_mhz: float
    bandwidth_hz: float
    attenuation_db_per_km: float
    n_subchannels: int
    subchannel_bandwidth_hz: float = 180e3

    @property
    def wavelength(self) -> float:
        return wavelength(self.center_frequency_mhz)


# Subchannel counts are the tabulated ones, one above B/b in both bands
MICROWAVE = Band("microwave", 2000.0, 20e6, 0.01, 112)
MMWAVE = Band("mmwave", 28000.0, 1e9, 0.1, 5556)

BAND_PRESETS = {band.name: band for band in (MICROWAVE, MMWAVE)}
