"""Exact counts of symmetric domino tilings of Aztec diamonds."""

from .counter import (
    CoeffTable,
    CountReport,
    SymmetryClass,
    c_table,
    count,
    cprime_table,
    max_coefficient,
    norm_half,
    norm_lk,
    sequence,
    support_report,
)
from .formal import BitString, FormalSum, LinearMap

__version__ = "0.1.0"
