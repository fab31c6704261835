"""Exact model counting for 2-CNF and 3-CNF formulas."""

from .analysis import bound_check, branching_number, record_run
from .formula import Formula, parse_dimacs, serialize_dimacs, validate_width
from .mc2 import count_mc2
from .mc3 import count_mc3
from .propagation import exhaustive_count, oracle_count, propagate

__all__ = [
    "Formula",
    "bound_check",
    "branching_number",
    "count_mc2",
    "count_mc3",
    "exhaustive_count",
    "oracle_count",
    "parse_dimacs",
    "propagate",
    "record_run",
    "serialize_dimacs",
    "validate_width",
]
