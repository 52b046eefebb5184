"""Steiner tree instances: STP parsing/writing and random generation.

Vertex ids are 1-based, exactly as they appear in STP files.

Random generation uses :class:`random.Random` (Mersenne Twister) seeded with
the caller's integer seed.  For a fixed seed the draws are, in order: one
``randint(lo, hi)`` per edge in input order, then one ``sample`` of the
sorted vertex list for the terminals.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable


class StpParseError(ValueError):
    """Base class for STP format errors; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class MalformedLineError(StpParseError):
    pass


class CountMismatchError(StpParseError):
    pass


class InvalidWeightError(StpParseError):
    pass


class VertexRangeError(StpParseError):
    pass


class DuplicateEdgeError(StpParseError):
    pass


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    vertex_count: int
    edges: tuple  # of (u, v, weight) with u < v
    terminals: frozenset
    name: str = ""

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InstanceError("vertex_count must be positive")
        seen = set()
        for u, v, w in self.edges:
            if not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                raise InstanceError(f"edge ({u},{v}) out of range")
            if u == v:
                raise InstanceError(f"self-loop at {u}")
            if w < 1:
                raise InstanceError(f"edge ({u},{v}) has weight {w} < 1")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InstanceError(f"duplicate edge {key}")
            seen.add(key)
        if not self.terminals:
            raise InstanceError("terminal set is empty")
        for t in self.terminals:
            if not 1 <= t <= self.vertex_count:
                raise InstanceError(f"terminal {t} out of range")

    @classmethod
    def build(cls, vertex_count: int, edges: Iterable, terminals: Iterable[int],
              name: str = "") -> "Instance":
        norm = tuple((min(u, v), max(u, v), w) for u, v, w in edges)
        return cls(vertex_count, norm, frozenset(terminals), name)

    def __eq__(self, other):
        # The name is a label, not part of the instance.
        if not isinstance(other, Instance):
            return NotImplemented
        return (self.vertex_count == other.vertex_count
                and sorted(self.edges) == sorted(other.edges)
                and self.terminals == other.terminals)

    def __hash__(self):
        return hash((self.vertex_count, tuple(sorted(self.edges)), self.terminals))

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def weight_map(self) -> dict:
        return {(u, v): w for u, v, w in self.edges}

    def component_of(self, start: int) -> set:
        adj = self.adjacency()
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def is_connected(self) -> bool:
        return len(self.component_of(1)) == self.vertex_count

    def terminals_connected(self) -> bool:
        t = min(self.terminals)
        return self.terminals <= self.component_of(t)

    def restrict_to_terminal_component(self) -> "Instance":
        """Drop components without terminals, renumbering to 1..n'."""
        comp = sorted(self.component_of(min(self.terminals)))
        if len(comp) == self.vertex_count:
            return self
        renum = {v: i for i, v in enumerate(comp, 1)}
        edges = [(renum[u], renum[v], w) for u, v, w in self.edges
                 if u in renum and v in renum]
        terms = [renum[t] for t in self.terminals if t in renum]
        return Instance.build(len(comp), edges, terms, self.name)


def _ints(parts, lineno, count):
    if len(parts) != count + 1:
        raise MalformedLineError(
            f"expected {count} values after {parts[0]!r}", lineno)
    try:
        return [int(x) for x in parts[1:]]
    except ValueError:
        raise MalformedLineError(f"non-integer value in {' '.join(parts)!r}",
                                 lineno) from None


def parse_stp(text: str, name: str = "") -> Instance:
    """Parse STP Format Version 1.0 (Graph and Terminals sections)."""
    nodes = None
    declared_edges = None
    declared_terms = None
    edges = []
    edge_lines = {}
    terms = []
    section = None
    seen_eof = False
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0].upper()
        if key == "EOF":
            seen_eof = True
            break
        if key == "SECTION":
            if len(parts) < 2:
                raise MalformedLineError("SECTION without a name", lineno)
            section = parts[1].upper()
            continue
        if key == "END":
            section = None
            continue
        if section == "GRAPH":
            if key == "NODES":
                (nodes,) = _ints(parts, lineno, 1)
                if nodes < 1:
                    raise MalformedLineError("Nodes must be positive", lineno)
            elif key == "EDGES":
                (declared_edges,) = _ints(parts, lineno, 1)
            elif key == "ARCS":
                _ints(parts, lineno, 1)
            elif key in ("E", "A"):
                if nodes is None:
                    raise MalformedLineError("edge before Nodes", lineno)
                u, v, w = _ints(parts, lineno, 3)
                for x in (u, v):
                    if not 1 <= x <= nodes:
                        raise VertexRangeError(f"vertex {x} out of range", lineno)
                if u == v:
                    raise MalformedLineError(f"self-loop at {u}", lineno)
                if w < 1:
                    raise InvalidWeightError(f"weight {w} < 1", lineno)
                k = (min(u, v), max(u, v))
                if k in edge_lines:
                    raise DuplicateEdgeError(
                        f"edge {k} already given on line {edge_lines[k]}", lineno)
                edge_lines[k] = lineno
                edges.append((k[0], k[1], w))
            else:
                raise MalformedLineError(f"unknown Graph keyword {parts[0]!r}",
                                         lineno)
        elif section == "TERMINALS":
            if key == "TERMINALS":
                (declared_terms,) = _ints(parts, lineno, 1)
            elif key == "T":
                (t,) = _ints(parts, lineno, 1)
                if nodes is None or not 1 <= t <= nodes:
                    raise VertexRangeError(f"terminal {t} out of range", lineno)
                if t in terms:
                    raise MalformedLineError(f"terminal {t} listed twice", lineno)
                terms.append(t)
            elif key == "ROOT":
                _ints(parts, lineno, 1)
            else:
                raise MalformedLineError(
                    f"unknown Terminals keyword {parts[0]!r}", lineno)
        # Lines in other sections (Comment, Coordinates, ...) are skipped.
    last = len(lines)
    if not seen_eof:
        raise MalformedLineError("missing EOF", last)
    if nodes is None:
        raise MalformedLineError("no Nodes declaration", last)
    if declared_edges is not None and declared_edges != len(edges):
        raise CountMismatchError(
            f"Edges {declared_edges} declared, {len(edges)} given", last)
    if declared_terms is not None and declared_terms != len(terms):
        raise CountMismatchError(
            f"Terminals {declared_terms} declared, {len(terms)} given", last)
    if not terms:
        raise CountMismatchError("no terminals", last)
    return Instance(nodes, tuple(edges), frozenset(terms), name)


def read_stp(path) -> Instance:
    from pathlib import Path

    path = Path(path)
    return parse_stp(path.read_text(), name=path.name)


def write_stp(instance: Instance) -> str:
    out = ["33D32945 STP File, STP Format Version 1.0", ""]
    out += ["SECTION Comment", f'Name "{instance.name or "unnamed"}"', "END", ""]
    out += ["SECTION Graph", f"Nodes {instance.vertex_count}",
            f"Edges {len(instance.edges)}"]
    out += [f"E {u} {v} {w}" for u, v, w in instance.edges]
    out += ["END", "", "SECTION Terminals", f"Terminals {len(instance.terminals)}"]
    out += [f"T {t}" for t in sorted(instance.terminals)]
    out += ["END", "", "EOF", ""]
    return "\n".join(out)


def parse_dimacs(text: str) -> tuple:
    """Read a DIMACS-style plain graph (``p`` and ``e`` lines).

    Returns ``(vertex_count, edges)``; repeated undirected edges are
    collapsed, self-loops rejected.
    """
    n = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            try:
                n = int(parts[2])
            except (IndexError, ValueError):
                raise MalformedLineError("bad problem line", lineno) from None
        elif parts[0] in ("e", "a"):
            try:
                u, v = int(parts[1]), int(parts[2])
            except (IndexError, ValueError):
                raise MalformedLineError("bad edge line", lineno) from None
            if u == v:
                raise MalformedLineError(f"self-loop at {u}", lineno)
            k = (min(u, v), max(u, v))
            if k not in seen:
                seen.add(k)
                edges.append(k)
    if n is None:
        n = max((max(e) for e in edges), default=0)
    return n, edges


def generate_instance(plain_graph, terminal_fraction: float,
                      weight_range=(1, 1000), seed: int = 0,
                      name: str = "") -> Instance:
    """Turn a plain graph ``(vertex_count, edges)`` into a Steiner instance.

    Weights are drawn uniformly from ``weight_range`` (inclusive) and
    ``ceil(terminal_fraction * |V|)`` distinct terminals uniformly.
    """
    n, edges = plain_graph
    if n < 1 or not edges:
        raise InstanceError("empty graph")
    if not 0 < terminal_fraction <= 1:
        raise InstanceError("terminal_fraction must be in (0, 1]")
    lo, hi = weight_range
    if not 1 <= lo <= hi:
        raise InstanceError(f"bad weight range {weight_range}")
    rng = random.Random(seed)
    weighted = [(u, v, rng.randint(lo, hi)) for u, v in edges]
    k = max(1, math.ceil(terminal_fraction * n - 1e-9))
    terminals = rng.sample(range(1, n + 1), k)
    return Instance.build(n, weighted, terminals, name)


def random_sparse_graph(n: int, m: int, seed: int) -> tuple:
    """Connected random graph: a random spanning tree plus random extra edges.

    This is the construction used for the Beasley B-set instances.
    """
    if n < 2 or not n - 1 <= m <= n * (n - 1) // 2:
        raise InstanceError(f"cannot build a connected simple graph with n={n}, m={m}")
    rng = random.Random(seed)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    while len(edges) < m:
        u, v = rng.sample(range(1, n + 1), 2)
        edges.add((min(u, v), max(u, v)))
    return n, sorted(edges)


def random_connected_instance(rng: random.Random, max_vertices=8, max_edges=16,
                              weight_range=(1, 10), terminal_range=(2, 4)) -> Instance:
    """Small random connected instance for oracle comparisons."""
    n = rng.randint(max(2, terminal_range[0]), max_vertices)
    m = rng.randint(n - 1, min(max_edges, n * (n - 1) // 2))
    _, edges = random_sparse_graph(n, m, rng.getrandbits(64))
    weighted = [(u, v, rng.randint(*weight_range)) for u, v in edges]
    k = rng.randint(terminal_range[0], min(terminal_range[1], n))
    return Instance.build(n, weighted, rng.sample(range(1, n + 1), k))

