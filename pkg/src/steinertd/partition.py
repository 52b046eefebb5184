"""Partitions of small vertex sets and the lattice operators used by the DP.

A :class:`Partition` is stored canonically as a tuple of sorted blocks,
blocks ordered by their minimum element, so structural equality is tuple
equality.  Hashing uses the block-product fingerprint; collisions are
expected and resolved by ``__eq__``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

#: 31-bit Mersenne prime used to keep block products small.
FINGERPRINT_PRIME = 2147483647


class PartitionError(ValueError):
    """Raised when lattice operators receive incompatible ground sets."""


def _fingerprint(blocks) -> int:
    total = 0
    for block in blocks:
        prod = 1
        for v in block:
            prod = (prod * v) % FINGERPRINT_PRIME
        total += prod
    return total


class Partition:
    """A partition of a finite set of vertex ids."""

    __slots__ = ("blocks", "_hash")

    def __init__(self, blocks: tuple = ()):
        # Callers must pass canonical blocks; use from_blocks otherwise.
        self.blocks = blocks
        self._hash = _fingerprint(blocks)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        canon = [tuple(sorted(b)) for b in blocks]
        seen = set()
        for b in canon:
            if not b:
                raise PartitionError("empty block")
            for v in b:
                if v in seen:
                    raise PartitionError(f"element {v} occurs in two blocks")
                seen.add(v)
        canon.sort()
        return cls(tuple(canon))

    @classmethod
    def singletons(cls, ground: Iterable[int]) -> "Partition":
        return cls(tuple((v,) for v in sorted(ground)))

    @property
    def ground_set(self) -> tuple:
        return tuple(sorted(v for b in self.blocks for v in b))

    @property
    def block_of(self) -> dict:
        """Map each element to the label (minimum element) of its block."""
        return {v: b[0] for b in self.blocks for v in b}

    def sort_key(self) -> tuple:
        labels = self.block_of
        return tuple(labels[v] for v in sorted(labels))

    def block_containing(self, v: int) -> tuple:
        for b in self.blocks:
            if v in b:
                return b
        raise PartitionError(f"{v} not in ground set")

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self._hash == other._hash and self.blocks == other.blocks

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return "{" + inner + "}"

    # Fast paths used by the recurrences.  Each is equivalent to one of the
    # general operators below; the tests check that equivalence.

    def with_singleton(self, v: int) -> "Partition":
        """``project_up`` by a single new element."""
        blocks = list(self.blocks)
        blocks.append((v,))
        blocks.sort()
        return Partition(tuple(blocks))

    def without(self, v: int) -> "Partition":
        """``project_down`` dropping a single element."""
        out = []
        for b in self.blocks:
            if v in b:
                b = tuple(x for x in b if x != v)
                if not b:
                    continue
            out.append(b)
        out.sort()
        return Partition(tuple(out))

    def merge(self, u: int, v: int) -> "Partition":
        """Merge the blocks of ``u`` and ``v``; equals ``meet(p, U[uv])``."""
        bu = bv = None
        rest = []
        for b in self.blocks:
            if u in b:
                bu = b
                if v in b:
                    return self
            elif v in b:
                bv = b
            else:
                rest.append(b)
        if bu is None or bv is None:
            raise PartitionError(f"{u} or {v} not in ground set")
        rest.append(tuple(sorted(bu + bv)))
        rest.sort()
        return Partition(tuple(rest))


def _check_same_ground(p: Partition, q: Partition) -> None:
    if p.ground_set != q.ground_set:
        raise PartitionError(
            f"ground sets differ: {p.ground_set} vs {q.ground_set}")


def meet(p: Partition, q: Partition) -> Partition:
    """Finest common coarsening of ``p`` and ``q`` (connectivity merge).

    Breadth-first search over the elements: the neighbours of ``v`` are the
    undiscovered elements sharing a block with ``v`` in either partition.
    """
    _check_same_ground(p, q)
    if len(p.blocks) <= 1:
        return p
    if len(q.blocks) <= 1:
        return q
    where_p = {}
    for b in p.blocks:
        for v in b:
            where_p[v] = b
    where_q = {}
    for b in q.blocks:
        for v in b:
            where_q[v] = b
    seen = set()
    out = []
    for start in sorted(where_p):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in where_p[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
            for w in where_q[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        out.append(tuple(comp))
    out.sort()
    return Partition(tuple(out))


def project_down(p: Partition, keep: Iterable[int]) -> Partition:
    keep = set(keep)
    ground = set(p.ground_set)
    if not keep <= ground:
        raise PartitionError(f"{sorted(keep - ground)} not in ground set")
    out = []
    for b in p.blocks:
        nb = tuple(v for v in b if v in keep)
        if nb:
            out.append(nb)
    out.sort()
    return Partition(tuple(out))


def project_up(p: Partition, superset: Iterable[int]) -> Partition:
    superset = set(superset)
    ground = set(p.ground_set)
    if not ground <= superset:
        raise PartitionError(f"{sorted(ground - superset)} not in superset")
    blocks = list(p.blocks) + [(v,) for v in superset - ground]
    blocks.sort()
    return Partition(tuple(blocks))


def block_partition(ground: Iterable[int], block: Iterable[int]) -> Partition:
    """``U[X]``: ``X`` as one block, everything else a singleton."""
    ground = set(ground)
    block = set(block)
    if not block <= ground:
        raise PartitionError("block is not a subset of the ground set")
    blocks = [(v,) for v in ground - block]
    if block:
        blocks.append(tuple(sorted(block)))
    blocks.sort()
    return Partition(tuple(blocks))


def block_count(p: Partition) -> int:
    return len(p.blocks)


def fingerprint(p: Partition) -> int:
    return p._hash


@dataclass(frozen=True)
class Cut:
    """Ordered disjoint bipartition; the fixed element lives in ``side1``."""

    side1: frozenset
    side2: frozenset


def enumerate_cuts(ground: Sequence[int]) -> list:
    """All ``2^(|U|-1)`` cuts of ``ground`` in binary-counter order.

    Bit ``j`` of the counter moves the ``j``-th non-fixed element (ascending
    order) to ``side2``.  The empty set has the single cut ``(∅, ∅)``.
    """
    elems = sorted(ground)
    if not elems:
        return [Cut(frozenset(), frozenset())]
    first, rest = elems[0], elems[1:]
    cuts = []
    for c in range(1 << len(rest)):
        side2 = frozenset(v for j, v in enumerate(rest) if c >> j & 1)
        side1 = frozenset(elems) - side2
        cuts.append(Cut(side1, side2))
    assert first in cuts[-1].side1
    return cuts


def cut_refines(cut: Cut, p: Partition) -> int:
    """1 iff no block of ``p`` is split by ``cut``."""
    if cut.side1 | cut.side2 != set(p.ground_set):
        raise PartitionError("cut does not cover the partition's ground set")
    for b in p.blocks:
        inside = sum(1 for v in b if v in cut.side1)
        if 0 < inside < len(b):
            return 0
    return 1


def all_partitions(ground: Iterable[int]) -> Iterator[Partition]:
    """Every partition of ``ground`` (Bell-many), via restricted growth strings."""
    elems = sorted(ground)
    n = len(elems)
    if n == 0:
        yield Partition(())
        return

    def rec(i, labels, nblocks):
        if i == n:
            blocks = [[] for _ in range(nblocks)]
            for v, lab in zip(elems, labels):
                blocks[lab].append(v)
            yield Partition(tuple(tuple(b) for b in blocks))
            return
        for lab in range(nblocks + 1):
            labels.append(lab)
            yield from rec(i + 1, labels, max(nblocks, lab + 1))
            labels.pop()

    yield from rec(0, [], 0)
