from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinertd.partition import (FINGERPRINT_PRIME, Cut, Partition, PartitionError,
                                 all_partitions, block_count, block_partition,
                                 cut_refines, enumerate_cuts, fingerprint, meet,
                                 project_down, project_up)

from conftest import partitions

P = Partition.from_blocks
a, b, c = 1, 2, 3


def test_canonical_form():
    assert P([[3], [2, 1]]) == P([[1, 2], [3]])
    assert P([[3], [2, 1]]).blocks == ((1, 2), (3,))
    assert P([[1, 2], [3]]).block_of == {1: 1, 2: 1, 3: 3}
    assert repr(P([[1, 2], [3]])) == "{{1,2},{3}}"


def test_from_blocks_rejects_overlap():
    with pytest.raises(PartitionError):
        P([[1, 2], [2]])


def test_meet_examples():
    assert meet(P([[a, b], [c]]), P([[a], [b, c]])) == P([[a, b, c]])
    p = P([[a, b], [c]])
    assert meet(p, Partition.singletons([a, b, c])) == p
    assert meet(p, p) == p


def test_meet_ground_mismatch():
    with pytest.raises(PartitionError):
        meet(P([[1, 2]]), P([[1], [3]]))


def test_projection_examples():
    assert project_down(P([[a, b], [c]]), {a, c}) == P([[a], [c]])
    p = P([[a, b], [c]])
    assert project_down(p, {a, b, c}) == p
    assert project_down(P([[a, b, c]]), {a, b}) == P([[a, b]])
    assert project_up(P([[a, b]]), {a, b, c}) == P([[a, b], [c]])
    assert project_up(p, {a, b, c}) == p
    with pytest.raises(PartitionError):
        project_down(p, {4})
    with pytest.raises(PartitionError):
        project_up(p, {a})


def test_block_partition_examples():
    assert block_partition({a, b, c}, {a, b}) == P([[a, b], [c]])
    assert block_partition({a, b}, {a, b}) == P([[a, b]])
    assert block_partition({a, b, c}, {b}) == Partition.singletons([a, b, c])


def test_block_count():
    assert block_count(Partition.singletons([1, 2, 3])) == 3
    assert block_count(P([[1, 2, 3]])) == 1
    assert block_count(Partition(())) == 0


def test_cut_refines_examples():
    U = frozenset({a, b, c})
    assert cut_refines(Cut(frozenset({a, b}), frozenset({c})), Partition.singletons(U)) == 1
    assert cut_refines(Cut(frozenset({a, c}), frozenset({b})), P([[a, b], [c]])) == 0
    for p in all_partitions(U):
        assert cut_refines(Cut(U, frozenset()), p) == 1
    with pytest.raises(PartitionError):
        cut_refines(Cut(frozenset({a}), frozenset()), P([[a, b]]))


def test_enumerate_cuts_examples():
    assert len(enumerate_cuts([a, b, c])) == 4
    assert enumerate_cuts([7]) == [Cut(frozenset({7}), frozenset())]
    assert enumerate_cuts([a, b]) == [Cut(frozenset({a, b}), frozenset()),
                                      Cut(frozenset({a}), frozenset({b}))]
    assert enumerate_cuts([]) == [Cut(frozenset(), frozenset())]
    assert cut_refines(enumerate_cuts([])[0], Partition(())) == 1


@pytest.mark.parametrize("n", range(1, 13))
def test_cut_count_and_uniqueness(n):
    cuts = enumerate_cuts(range(1, n + 1))
    assert len(cuts) == 2 ** (n - 1)
    assert len(set(cuts)) == len(cuts)
    assert all(1 in cut.side1 and not cut.side1 & cut.side2 for cut in cuts)


def test_fingerprint_examples():
    assert fingerprint(P([[1, 2], [3]])) == fingerprint(P([[3], [1, 2]]))
    # {1,2},{3} -> 2+3 and {1,3},{2} -> 3+2 collide; equality stays structural.
    p, q = P([[1, 2], [3]]), P([[1, 3], [2]])
    assert fingerprint(p) == fingerprint(q) == 5
    assert p != q and len({p, q}) == 2
    assert fingerprint(P([[12]])) == 12
    assert fingerprint(P([[FINGERPRINT_PRIME + 4]])) == 4


@pytest.mark.parametrize("n,bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203)])
def test_all_partitions_bell(n, bell):
    parts = list(all_partitions(range(1, n + 1)))
    assert len(parts) == len(set(parts)) == bell
    for p in parts:
        assert p == P(p.blocks)  # already canonical


# Lattice laws on random partitions, |U| <= 8.

pairs = st.integers(0, 8).flatmap(
    lambda n: st.tuples(*[partitions(ground=list(range(1, n + 1)))] * 3))


@given(pairs)
def test_meet_laws(triple):
    p, q, r = triple
    assert meet(p, q) == meet(q, p)
    assert meet(meet(p, q), r) == meet(p, meet(q, r))
    assert meet(p, p) == p


@given(partitions(), st.integers(0, 3))
def test_projection_section_law(p, extra):
    ground = set(p.ground_set)
    bigger = ground | set(range(100, 100 + extra))
    assert project_down(project_up(p, bigger), ground) == p


@given(partitions(), st.data())
def test_fast_paths_match_general_operators(p, data):
    ground = p.ground_set
    assert p.with_singleton(99) == project_up(p, set(ground) | {99})
    if ground:
        v = data.draw(st.sampled_from(ground))
        assert p.without(v) == project_down(p, set(ground) - {v})
        u = data.draw(st.sampled_from(ground))
        if u != v:
            assert p.merge(u, v) == meet(p, block_partition(ground, {u, v}))


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(partitions(ground=list(range(1, n + 1))),
                        partitions(ground=list(range(1, n + 1))))))
def test_cut_refines_consistent_with_meet(pq):
    p, q = pq
    m = meet(p, q)
    for cut in enumerate_cuts(p.ground_set):
        assert cut_refines(cut, m) == (cut_refines(cut, p) & cut_refines(cut, q))


def test_meet_brute_force_small():
    # u ~ v in meet(p, q) iff connected by a chain alternating p- and q-blocks.
    U = [1, 2, 3, 4]
    for p, q in product(all_partitions(U), repeat=2):
        rel = {(x, y) for x in U for y in U
               if p.block_of[x] == p.block_of[y] or q.block_of[x] == q.block_of[y]}
        closure = set(rel)
        for k in U:
            closure |= {(x, y) for x in U for y in U
                        if (x, k) in closure and (k, y) in closure}
        m = meet(p, q)
        for x in U:
            for y in U:
                assert ((x, y) in closure) == (m.block_of[x] == m.block_of[y])
