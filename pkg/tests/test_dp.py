import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinertd import decomposition as tdm
from steinertd.dp import (MAX_WEIGHT, BagTable, Infeasible, SolveStats, extract_answer,
                          forget_vertex, introduce_edge, introduce_vertex, join,
                          leaf_table, rmc)
from steinertd.instance import random_connected_instance
from steinertd.partition import Partition
from steinertd.reduction import ReductionPolicy, apply_policy

P = Partition.from_blocks
E = Partition(())
a, b, c, u, v, t = 1, 2, 3, 4, 5, 6


def fs(*xs):
    return frozenset(xs)


def test_leaf():
    table = leaf_table()
    assert table.entries == {fs(): {E: 0}}
    assert table.size() == 1


def test_introduce_vertex_nonterminal():
    stats = SolveStats()
    out = introduce_vertex(leaf_table(), a, False, stats)
    assert out.bag == (a,)
    assert out.entries == {fs(): {E: 0}, fs(a): {P([[a]]): 0}}
    assert stats.partial_solutions_generated == 2


def test_introduce_vertex_terminal():
    out = introduce_vertex(leaf_table(), a, True)
    assert out.entries == {fs(a): {P([[a]]): 0}}


def test_introduce_vertex_keeps_weights():
    child = BagTable((a,), {fs(a): {P([[a]]): 4}, fs(): {E: 9}})
    out = introduce_vertex(child, b, False)
    assert sorted(w for g in out.entries.values() for w in g.values()) == [4, 4, 9, 9]


def test_introduce_edge_examples():
    child = BagTable((u, v), {fs(u, v): {P([[u], [v]]): 0}})
    out = introduce_edge(child, u, v, 7)
    assert out.entries[fs(u, v)] == {P([[u], [v]]): 0, P([[u, v]]): 7}

    child = BagTable((u, v), {fs(u, v): {P([[u, v]]): 3}})
    assert introduce_edge(child, u, v, 7).entries[fs(u, v)] == {P([[u, v]]): 3}

    group = {P([[v]]): 2}
    child = BagTable((u, v), {fs(v): group})
    assert introduce_edge(child, u, v, 7).entries[fs(v)] == group


def test_forget_examples():
    child = BagTable((v,), {fs(v): {P([[v]]): 1}})
    assert forget_vertex(child, v).entries == {}

    child = BagTable((a, v), {fs(a, v): {P([[a, v]]): 5}})
    assert forget_vertex(child, v).entries == {fs(a): {P([[a]]): 5}}

    child = BagTable((a, v), {fs(a, v): {P([[a, v]]): 5}, fs(a): {P([[a]]): 3}})
    assert forget_vertex(child, v).entries == {fs(a): {P([[a]]): 3}}


def test_join_examples():
    left = BagTable((a, b), {fs(a, b): {P([[a], [b]]): 2}, fs(a): {P([[a]]): 1}})
    right = BagTable((a, b), {fs(a, b): {P([[a, b]]): 3}})
    assert join(left, right).entries == {fs(a, b): {P([[a, b]]): 5}}

    right = BagTable((a, b), {fs(a, b): {P([[a], [b]]): 4}})
    assert join(left, right).entries == {fs(a, b): {P([[a], [b]]): 6}}


def test_join_requires_identical_bags():
    with pytest.raises(ValueError):
        join(BagTable((1,), {}), BagTable((2,), {}))


def test_rmc_examples():
    p, q = P([[1, 2]]), P([[1], [2]])
    assert rmc([(p, 5), (p, 3), (q, 4)]) == {p: 3, q: 4}
    assert rmc(list({p: 3, q: 4}.items())) == {p: 3, q: 4}
    assert rmc([]) == {}


def test_extract_answer():
    table = BagTable((t,), {fs(t): {P([[t]]): 12}})
    assert extract_answer(table, t) == 12
    with pytest.raises(Infeasible):
        extract_answer(BagTable((t,), {}), t)


def test_overflow_is_loud():
    child = BagTable((u, v), {fs(u, v): {P([[u], [v]]): MAX_WEIGHT}})
    with pytest.raises(OverflowError):
        introduce_edge(child, u, v, 1)


# Brute-force check of every intermediate table.

def run_all_tables(nice, inst, policy):
    tables = []
    for node in nice.nodes[:-1]:
        kids = [tables[i] for i in node.children]
        if node.kind == tdm.LEAF:
            tab = leaf_table()
        elif node.kind == tdm.INTRODUCE:
            tab = introduce_vertex(kids[0], node.vertex, node.vertex in inst.terminals)
        elif node.kind == tdm.INTRODUCE_EDGE:
            tab = introduce_edge(kids[0], *node.edge)
        elif node.kind == tdm.FORGET:
            tab = forget_vertex(kids[0], node.vertex)
        else:
            tab = join(*kids)
        tables.append(apply_policy(tab, policy))
    return tables


def subtree_content(nice):
    """Per node: (edges introduced below, vertices introduced below)."""
    content = []
    for node in nice.nodes:
        es, vs = set(), set()
        for ch in node.children:
            es |= content[ch][0]
            vs |= content[ch][1]
        if node.kind == tdm.INTRODUCE_EDGE:
            es.add(node.edge)
        if node.kind == tdm.INTRODUCE:
            vs.add(node.vertex)
        content.append((es, vs))
    return content


def realizable(bag, edges, vertices, terminals):
    """{(used, partition): set of weights} straight from the definition."""
    bag = set(bag)
    forgotten_terms = (vertices - bag) & terminals
    out = {}
    edges = sorted(edges)
    for k in range(len(edges) + 1):
        for X in combinations(edges, k):
            touched = {x for e in X for x in e[:2]}
            if not forgotten_terms <= touched:
                continue
            required = (touched & bag) | (terminals & bag)
            optional = sorted(bag - required)
            for r in range(len(optional) + 1):
                for extra in combinations(optional, r):
                    used = required | set(extra)
                    comp = {x: x for x in touched | used}

                    def find(x):
                        while comp[x] != x:
                            x = comp[x]
                        return x

                    for e in X:
                        comp[find(e[0])] = find(e[1])
                    roots = {find(x) for x in comp}
                    if roots != {find(x) for x in used}:
                        continue  # a component avoids every used bag vertex
                    blocks = {}
                    for x in used:
                        blocks.setdefault(find(x), []).append(x)
                    key = (frozenset(used), Partition.from_blocks(blocks.values()))
                    out.setdefault(key, set()).add(sum(e[2] for e in X))
    return out


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_tables_match_definition(seed):
    inst = random_connected_instance(random.Random(seed), max_vertices=6, max_edges=9,
                                     terminal_range=(1, 3))
    nice = tdm.make_nice(tdm.greedy_degree_decompose(inst), inst)
    content = subtree_content(nice)
    cdp = run_all_tables(nice, inst, ReductionPolicy.CDP)
    rba = run_all_tables(nice, inst, ReductionPolicy.RBA)
    for i, node in enumerate(nice.nodes[:-1]):
        truth = realizable(node.bag, content[i][0], content[i][1], set(inst.terminals))
        got = {(used, p): w for used, g in cdp[i].entries.items() for p, w in g.items()}
        assert got == {k: min(ws) for k, ws in truth.items()}
        for used, g in rba[i].entries.items():
            for p, w in g.items():
                assert w in truth[(used, p)]
            if used:
                assert len(g) <= 2 ** (len(used) - 1)
