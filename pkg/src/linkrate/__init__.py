"""
Link-rate module for descentlink.

MCS step function, Shannon rate, concave surrogates and rate arithmetic.
"""

from .mcs import (
    McsTable,
    ShannonRate,
    LTE_A_TABLE,
    mcs_efficiency,
    mcs_table_from_document,
    load_mcs_table,
)
from .surrogate import (
    Surrogate,
    UPPER_SURROGATE,
    default_surrogates,
    surrogate_efficiency,
    validate_upper_bound,
    snr_cap,
    slot_rate,
)

__all__ = [
    "McsTable",
    "ShannonRate",
    "LTE_A_TABLE",
    "mcs_efficiency",
    "mcs_table_from_document",
    "load_mcs_table",
    "Surrogate",
    "UPPER_SURROGATE",
    "default_surrogates",
    "surrogate_efficiency",
    "validate_upper_bound",
    "snr_cap",
    "slot_rate",
]
