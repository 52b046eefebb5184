"""Classic dynamic program over a nice tree decomposition.

A :class:`BagTable` maps each vertex-usage assignment, keyed by the frozenset
of used bag vertices, to a dict ``{Partition: weight}`` over those vertices.
Assignments without entries are simply absent.  Tables are treated as
immutable once built, so unchanged sub-tables are shared between a child and
its parent rather than copied.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .partition import Partition, meet

MAX_WEIGHT = (1 << 63) - 1

_EMPTY = Partition(())


class Infeasible(Exception):
    """The terminals cannot be connected."""


class SolveTimeout(Exception):
    """The time budget ran out."""


class Deadline:
    def __init__(self, seconds: float | None):
        self.end = None if seconds is None else time.perf_counter() + seconds

    def check(self) -> None:
        if self.end is not None and time.perf_counter() >= self.end:
            raise SolveTimeout


@dataclass
class SolveStats:
    partial_solutions_generated: int = 0
    # Total entries of a finished table, keyed by bag size.
    max_table_size_by_bag_size: dict = field(default_factory=dict)
    # Largest single assignment sub-table, keyed by |U| (used vertices).
    max_subtable_size_by_ground_size: dict = field(default_factory=dict)
    reduce_calls: int = 0
    fill_seconds: float = 0.0
    elimination_seconds: float = 0.0
    phase_seconds: dict = field(default_factory=dict)

    def record_table(self, table: "BagTable") -> None:
        k = len(table.bag)
        size = table.size()
        if size > self.max_table_size_by_bag_size.get(k, -1):
            self.max_table_size_by_bag_size[k] = size
        sub = self.max_subtable_size_by_ground_size
        for used, group in table.entries.items():
            u = len(used)
            if len(group) > sub.get(u, -1):
                sub[u] = len(group)


class BagTable:
    __slots__ = ("bag", "entries")

    def __init__(self, bag: tuple, entries: dict):
        self.bag = bag
        self.entries = entries

    def size(self) -> int:
        return sum(len(g) for g in self.entries.values())

    def __repr__(self):
        return f"BagTable(bag={self.bag}, entries={self.entries})"


def _bump(stats, n):
    if stats is not None:
        stats.partial_solutions_generated += n


def _checked(w: int) -> int:
    if w > MAX_WEIGHT:
        raise OverflowError(f"weight {w} exceeds the 64-bit range")
    return w


def rmc(entries) -> dict:
    """Keep the minimum weight per distinct partition."""
    best = {}
    for p, w in entries:
        old = best.get(p)
        if old is None or w < old:
            best[p] = w
    return best


def leaf_table() -> BagTable:
    return BagTable((), {frozenset(): {_EMPTY: 0}})


def introduce_vertex(child: BagTable, v: int, v_is_terminal: bool,
                     stats: SolveStats | None = None) -> BagTable:
    bag = tuple(sorted(child.bag + (v,)))
    out = {}
    n = 0
    for used, group in child.entries.items():
        if not v_is_terminal:
            out[used] = group
            n += len(group)
        out[used | {v}] = {p.with_singleton(v): w for p, w in group.items()}
        n += len(group)
    _bump(stats, n)
    return BagTable(bag, out)


def introduce_edge(child: BagTable, u: int, v: int, weight: int,
                   stats: SolveStats | None = None) -> BagTable:
    out = {}
    n = 0
    for used, group in child.entries.items():
        if u in used and v in used:
            merged = dict(group)
            for p, w in group.items():
                q = p.merge(u, v)
                w2 = _checked(w + weight)
                old = merged.get(q)
                if old is None or w2 < old:
                    merged[q] = w2
            out[used] = merged
            n += 2 * len(group)
        else:
            out[used] = group
            n += len(group)
    _bump(stats, n)
    return BagTable(child.bag, out)


def forget_vertex(child: BagTable, v: int,
                  stats: SolveStats | None = None) -> BagTable:
    bag = tuple(x for x in child.bag if x != v)
    out = {}
    n = 0
    for used, group in child.entries.items():
        if v in used:
            key = used - {v}
            target = out.setdefault(key, {})
            for p, w in group.items():
                if len(p.block_containing(v)) < 2:
                    continue  # v would be left as a dead component
                q = p.without(v)
                n += 1
                old = target.get(q)
                if old is None or w < old:
                    target[q] = w
        else:
            target = out.setdefault(used, {})
            for p, w in group.items():
                n += 1
                old = target.get(p)
                if old is None or w < old:
                    target[p] = w
    _bump(stats, n)
    return BagTable(bag, {k: g for k, g in out.items() if g})


def join(left: BagTable, right: BagTable, stats: SolveStats | None = None,
         deadline: Deadline | None = None) -> BagTable:
    if left.bag != right.bag:
        raise ValueError(f"join of different bags {left.bag} / {right.bag}")
    out = {}
    n = 0
    for used, lgroup in left.entries.items():
        rgroup = right.entries.get(used)
        if rgroup is None:
            continue
        best = {}
        for p, w1 in lgroup.items():
            for q, w2 in rgroup.items():
                r = meet(p, q)
                w = _checked(w1 + w2)
                old = best.get(r)
                if old is None or w < old:
                    best[r] = w
            if deadline is not None:
                deadline.check()
        n += len(lgroup) * len(rgroup)
        out[used] = best
    _bump(stats, n)
    return BagTable(left.bag, out)


def extract_answer(root_child_table: BagTable, root_terminal: int) -> int:
    group = root_child_table.entries.get(frozenset((root_terminal,)), {})
    w = group.get(Partition(((root_terminal,),)))
    if w is None:
        raise Infeasible("terminals cannot be connected")
    return w
