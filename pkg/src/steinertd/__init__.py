"""Exact Steiner tree on tree decompositions, with rank-based table reduction."""

from .instance import Instance, generate_instance, parse_stp, read_stp, write_stp
from .reduction import ReductionPolicy, reduce
from .solver import RunReport, compare, emit_report, solve

__all__ = [
    "Instance", "ReductionPolicy", "RunReport", "compare", "emit_report",
    "generate_instance", "parse_stp", "read_stp", "reduce", "solve", "write_stp",
]
