"""Definitional reference solver: enumerate every edge subset.

Deliberately naive; used to produce and check expected values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .instance import Instance
from .partition import meet


class OracleBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    optimum: int | None  # None means infeasible
    witness_edges: tuple = ()


def _connected_cover(edges, terminals) -> bool:
    """True iff ``edges`` form one connected graph touching every terminal."""
    if not edges:
        return len(terminals) == 1
    comp = {edges[0][0], edges[0][1]}
    rest = list(edges[1:])
    grew = True
    while rest and grew:
        grew = False
        left = []
        for e in rest:
            if e[0] in comp or e[1] in comp:
                comp.add(e[0])
                comp.add(e[1])
                grew = True
            else:
                left.append(e)
        rest = left
    return not rest and terminals <= comp


def check_witness(instance: Instance, result: OracleResult) -> None:
    if result.optimum is None:
        return
    if not _connected_cover(list(result.witness_edges), set(instance.terminals)):
        raise AssertionError("oracle witness is not a connected terminal cover")
    if sum(w for _, _, w in result.witness_edges) != result.optimum:
        raise AssertionError("oracle witness weight differs from the optimum")


def brute_force_steiner(instance: Instance, max_edges: int = 24) -> OracleResult:
    edges = list(instance.edges)
    if len(edges) > max_edges:
        raise OracleBudgetError(f"{len(edges)} edges exceed the budget of {max_edges}")
    terminals = set(instance.terminals)
    best = None
    witness = ()
    for k in range(len(edges) + 1):
        for subset in combinations(edges, k):
            w = sum(e[2] for e in subset)
            if best is not None and w >= best:
                continue
            if _connected_cover(list(subset), terminals):
                best, witness = w, subset
    result = OracleResult(best, witness)
    check_witness(instance, result)
    return result


def opt_value(q, entries) -> int | None:
    """``min{w : (p, w) in entries, meet(p, q) is a single block}``."""
    items = entries.items() if isinstance(entries, dict) else entries
    best = None
    for p, w in items:
        if len(meet(p, q).blocks) <= 1 and (best is None or w < best):
            best = w
    return best
