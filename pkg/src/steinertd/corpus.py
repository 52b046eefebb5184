"""Deterministic stand-ins for the SteinLib B set.

Real SteinLib files are not redistributed here.  These instances copy the
B-set sizes (|V|, |E|, |K|) and generation scheme (random connected sparse
graph, edge weights uniform in 1..10) so the benchmark harness has a
reproducible local corpus.  They are *not* the SteinLib instances and have
different optima.
"""

from __future__ import annotations

from pathlib import Path

from .instance import Instance, generate_instance, random_sparse_graph, read_stp

# name: (|V|, |E|, |K|) of SteinLib b01..b18.
B_SET_SIZES = {
    "b01": (50, 63, 9), "b02": (50, 63, 13), "b03": (50, 63, 25),
    "b04": (50, 100, 9), "b05": (50, 100, 13), "b06": (50, 100, 25),
    "b07": (75, 94, 13), "b08": (75, 94, 19), "b09": (75, 94, 38),
    "b10": (75, 150, 13), "b11": (75, 150, 19), "b12": (75, 150, 38),
    "b13": (100, 125, 17), "b14": (100, 125, 25), "b15": (100, 125, 50),
    "b16": (100, 200, 17), "b17": (100, 200, 25), "b18": (100, 200, 50),
}

BASE_SEED = 20130801


def bstyle_instance(name: str) -> Instance:
    n, m, k = B_SET_SIZES[name]
    seed = BASE_SEED + int(name[1:])
    graph = random_sparse_graph(n, m, seed)
    return generate_instance(graph, k / n, (1, 10), seed, name=f"{name}-style")


def bstyle_corpus() -> list:
    return [bstyle_instance(name) for name in B_SET_SIZES]


def load_directory(path) -> list:
    """All ``*.stp`` files under ``path`` (sorted by name); empty if missing."""
    path = Path(path)
    if not path.is_dir():
        return []
    return [read_stp(p) for p in sorted(path.glob("*.stp"))]
