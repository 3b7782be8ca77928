"""
Channel module for descentlink.

Per-slot line-of-sight A2G MIMO channel, interference vectors toward the
TBSs, path loss, and the rank-one factorization of the A2G channel.
"""

from .band import Band, MICROWAVE, MMWAVE, BAND_PRESETS
from .path_loss import path_loss_db, path_gain
from .synthesis import (
    ChannelSnapshot,
    a2g_channel,
    interference_vector,
    rank_one_factors,
    principal_triplet,
    build_snapshot,
    snapshot_to_document,
)

__all__ = [
    "Band",
    "MICROWAVE",
    "MMWAVE",
    "BAND_PRESETS",
    "path_loss_db",
    "path_gain",
    "ChannelSnapshot",
    "a2g_channel",
    "interference_vector",
    "rank_one_factors",
    "principal_triplet",
    "build_snapshot",
    "snapshot_to_document",
]
