"""Ground-truth record statistics: word enumeration, DP, and series expansion."""

from .dp import dp_expected_records, dp_oracle
from .genfunc import GFTable, gf_expand
from .identities import ExpPoly, nested_index_sum_coeff
from .stats import (
    DEFAULT_EPS,
    RecordStatistics,
    TailBound,
    choose_cutoff,
    truncation_bound,
)
from .words import enumerate_oracle, pattern_counts, records_of_word

__all__ = [
    "DEFAULT_EPS",
    "ExpPoly",
    "GFTable",
    "RecordStatistics",
    "TailBound",
    "choose_cutoff",
    "dp_expected_records",
    "dp_oracle",
    "enumerate_oracle",
    "gf_expand",
    "nested_index_sum_coeff",
    "pattern_counts",
    "records_of_word",
    "truncation_bound",
]
