"""Representative-set reduction over GF(2) cut matrices.

Rows are weighted partitions sorted by weight; columns are the cuts of the
ground set in :func:`~steinertd.partition.enumerate_cuts` order.  Rows are
Python ints used as bitsets (bit ``c`` is column ``c``), so a row operation
is a single XOR.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

from .dp import BagTable, SolveStats
from .partition import PartitionError, enumerate_cuts


class ReductionPolicy(str, enum.Enum):
    CDP = "cdp"  # never reduce
    RBA = "rba"  # reduce every sub-table
    RBC = "rbc"  # reduce sub-tables with at least 2^|U| entries

    @classmethod
    def parse(cls, text: str) -> "ReductionPolicy":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown algorithm {text!r}; expected cdp, rba or rbc") from None


@dataclass
class CutMatrix:
    ground: tuple
    rows: list  # of (Partition, weight), ascending weight
    bits: list  # of int, parallel to rows
    n_columns: int

    def cuts(self) -> list:
        return enumerate_cuts(self.ground)


def _ground_of(entries) -> tuple:
    grounds = {p.ground_set for p, _ in entries}
    if len(grounds) > 1:
        raise PartitionError(f"entries over different ground sets: {sorted(grounds)}")
    return grounds.pop() if grounds else ()


def _row_bits(p, position: dict, first: int) -> int:
    # Cuts that keep every block whole: the fixed element's block stays on side
    # 1, every other block independently goes to either side.
    cols = [0]
    for block in p.blocks:
        if block[0] == first:
            continue
        mask = 0
        for v in block:
            mask |= 1 << position[v]
        cols += [c | mask for c in cols]
    row = 0
    for c in cols:
        row |= 1 << c
    return row


def build_cut_matrix(entries) -> CutMatrix:
    entries = list(entries.items()) if isinstance(entries, dict) else list(entries)
    ground = _ground_of(entries)
    rows = sorted(entries, key=lambda e: (e[1], e[0].sort_key()))
    if not ground:
        return CutMatrix(ground, rows, [1] * len(rows), 1)
    first = ground[0]
    position = {v: j for j, v in enumerate(ground[1:])}
    bits = [_row_bits(p, position, first) for p, _ in rows]
    return CutMatrix(ground, rows, bits, 1 << (len(ground) - 1))


def lightest_basis(matrix: CutMatrix) -> list:
    """Indices of the rows kept by weight-ordered Gaussian elimination.

    Each nonzero row's lowest set bit is its pivot; the row is XORed into every
    later row with that bit set.  Zero rows are dependent and dropped.  Once as
    many rows are kept as there are columns the rest must be dependent.
    """
    bits = list(matrix.bits)
    n = len(bits)
    kept = []
    for i in range(n):
        row = bits[i]
        if not row:
            continue
        kept.append(i)
        if len(kept) == matrix.n_columns:
            break
        pivot = row & -row
        for j in range(i + 1, n):
            if bits[j] & pivot:
                bits[j] ^= row
    return kept


def reduce(entries, stats: SolveStats | None = None) -> dict:
    """Lightest representative subset of ``entries`` (``{Partition: weight}``)."""
    t0 = time.perf_counter()
    matrix = build_cut_matrix(entries)
    t1 = time.perf_counter()
    kept = lightest_basis(matrix)
    t2 = time.perf_counter()
    if stats is not None:
        stats.reduce_calls += 1
        stats.fill_seconds += t1 - t0
        stats.elimination_seconds += t2 - t1
    return {matrix.rows[i][0]: matrix.rows[i][1] for i in kept}


def apply_policy(table: BagTable, policy: ReductionPolicy,
                 stats: SolveStats | None = None) -> BagTable:
    policy = ReductionPolicy(policy)
    if policy is ReductionPolicy.CDP:
        return table
    out = {}
    for used, group in table.entries.items():
        k = len(used)
        if k == 0:
            out[used] = group
        elif policy is ReductionPolicy.RBA or len(group) >= 1 << k:
            out[used] = reduce(group, stats)
        else:
            out[used] = group
    return BagTable(table.bag, out)
