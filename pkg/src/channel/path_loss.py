"""
Large-scale path loss.
"""

import math

MIN_DISTANCE = 75.0


def path_loss_db(distance: float, frequency_mhz: float, attenuation_db_per_km: float) -> float:
    """
    Path loss 32.5 + 20 log10(max(d, 75) * f_c / 1000) + L * d / 1000.

    Args:
        distance: Link distance in meters (> 0)
        frequency_mhz: Central frequency in MHz
        attenuation_db_per_km: Atmospheric attenuation L

    Returns:
        float: Path loss in dB
    """
    if distance <= 0 or frequency_mhz <= 0 or attenuation_db_per_km < 0:
        raise ValueError(
            f"invalid path-loss inputs: d={distance}, f_c={frequency_mhz}, L={attenuation_db_per_km}"
        )
    return (
        32.5
        + 20.0 * math.log10(max(distance, MIN_DISTANCE) * frequency_mhz / 1000.0)
        + attenuation_db_per_km * distance / 1000.0
    )


def path_gain(distance: float, frequency_mhz: float, attenuation_db_per_km: float) -> float:
    """Linear channel power gain beta = 10^(-PL/10)."""
    return 10.0 ** (-path_loss_db(distance, frequency_mhz, attenuation_db_per_km) / 10.0)
