"""Tree decompositions: greedy-degree heuristic and nice decompositions.

The nice decomposition introduces every graph edge exactly once, directly
below the forget node of whichever endpoint is forgotten first, and is
rooted at the forget node of the lowest-id terminal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .instance import Instance

LEAF = "leaf"
INTRODUCE = "introduce"
INTRODUCE_EDGE = "introduce_edge"
FORGET = "forget"
JOIN = "join"


@dataclass
class TreeDecomposition:
    bags: list  # of frozenset
    tree_edges: list = field(default_factory=list)  # of (i, j) index pairs

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbours(self) -> list:
        adj = [[] for _ in self.bags]
        for i, j in self.tree_edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def to_text(self, vertex_count: int) -> str:
        """PACE-style ``.td`` text: ``s td`` header, ``b`` lines, tree edges."""
        lines = [f"s td {len(self.bags)} {self.width + 1} {vertex_count}"]
        for i, bag in enumerate(self.bags, 1):
            lines.append(" ".join(["b", str(i)] + [str(v) for v in sorted(bag)]))
        for i, j in self.tree_edges:
            lines.append(f"{i + 1} {j + 1}")
        return "\n".join(lines) + "\n"


def greedy_degree_decompose(instance: Instance) -> TreeDecomposition:
    """Min-degree elimination ordering (ties: lowest id) and its elimination tree."""
    adj = {v: set(n) for v, n in instance.adjacency().items()}
    remaining = set(adj)
    order = []
    bags = []
    for _ in range(len(adj)):
        v = min(remaining, key=lambda x: (len(adj[x]), x))
        nbrs = adj[v]
        bags.append(frozenset(nbrs | {v}))
        order.append(v)
        for a in nbrs:
            adj[a].discard(v)
            adj[a].update(nbrs - {a})
        remaining.discard(v)
        del adj[v]
    position = {v: i for i, v in enumerate(order)}
    tree_edges = []
    for i, v in enumerate(order[:-1]):
        later = [position[w] for w in bags[i] if w != v]
        parent = min(later) if later else i + 1
        tree_edges.append((i, parent))
    return TreeDecomposition(bags, tree_edges)


def validate(td: TreeDecomposition, instance: Instance) -> list:
    """Return human-readable violations; empty iff ``td`` is a valid decomposition."""
    problems = []
    n_nodes = len(td.bags)
    adj = td.neighbours()
    if n_nodes == 0:
        return ["tree: no bags"]
    if len(td.tree_edges) != n_nodes - 1:
        problems.append(f"tree: {len(td.tree_edges)} edges for {n_nodes} nodes")
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != n_nodes:
        problems.append("tree: decomposition tree is disconnected")

    covered = set().union(*td.bags)
    for v in instance.vertices:
        if v not in covered:
            problems.append(f"vertex uncovered: {v}")
    holders = {}
    for i, bag in enumerate(td.bags):
        for v in bag:
            holders.setdefault(v, set()).add(i)
    for u, v, _ in instance.edges:
        if not holders.get(u, set()) & holders.get(v, set()):
            problems.append(f"edge uncovered: ({u},{v})")
    for v, nodes in sorted(holders.items()):
        start = next(iter(nodes))
        reach = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in nodes and y not in reach:
                    reach.add(y)
                    queue.append(y)
        if reach != nodes:
            problems.append(f"connectivity: bags containing {v} are not connected")
    return problems


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: tuple  # sorted vertex ids
    children: tuple = ()
    vertex: int | None = None
    edge: tuple | None = None  # (u, v, weight)


@dataclass
class NiceTreeDecomposition:
    nodes: list  # post-order: children precede parents, root last
    root_terminal: int

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(len(n.bag) for n in self.nodes) - 1

    def as_tree_decomposition(self) -> TreeDecomposition:
        edges = [(c, i) for i, n in enumerate(self.nodes) for c in n.children]
        return TreeDecomposition([frozenset(n.bag) for n in self.nodes], edges)


def make_nice(td: TreeDecomposition, instance: Instance) -> NiceTreeDecomposition:
    terminal = min(instance.terminals)
    root = min(i for i, b in enumerate(td.bags) if terminal in b)
    adj = td.neighbours()
    parent = {root: None}
    bfs = [root]
    for x in bfs:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                bfs.append(y)
    kids = {x: [] for x in bfs}
    for x in bfs[1:]:
        kids[parent[x]].append(x)

    incident = {v: [] for v in instance.vertices}
    for u, v, w in instance.edges:
        incident[u].append((u, v, w))
        incident[v].append((u, v, w))
    introduced = set()
    nodes = []

    def add(kind, bag, children, vertex=None, edge=None):
        nodes.append(NiceNode(kind, tuple(sorted(bag)), tuple(children), vertex, edge))
        return len(nodes) - 1

    def forget(top, bag, v):
        pending = []
        for e in incident[v]:
            other = e[1] if e[0] == v else e[0]
            if other in bag and (e[0], e[1]) not in introduced:
                pending.append(e)
        for e in sorted(pending):
            introduced.add((e[0], e[1]))
            top = add(INTRODUCE_EDGE, bag, [top], edge=e)
        bag.discard(v)
        return add(FORGET, bag, [top], vertex=v)

    def transition(top, bag, target):
        bag = set(bag)
        for v in sorted(bag - target):
            top = forget(top, bag, v)
        for v in sorted(target - bag):
            bag.add(v)
            top = add(INTRODUCE, bag, [top], vertex=v)
        return top

    tops = {}
    for x in reversed(bfs):
        target = set(td.bags[x])
        if kids[x]:
            branch = [transition(tops.pop(c), td.bags[c], target) for c in kids[x]]
        else:
            branch = [transition(add(LEAF, (), []), (), target)]
        top = branch[0]
        for other in branch[1:]:
            top = add(JOIN, target, [top, other])
        tops[x] = top

    bag = set(td.bags[root])
    top = tops[root]
    for v in sorted(bag - {terminal}):
        top = forget(top, bag, v)
    forget(top, bag, terminal)
    return NiceTreeDecomposition(nodes, terminal)


def validate_nice(ntd: NiceTreeDecomposition, instance: Instance) -> list:
    """Check node-type constraints, exactly-once edges, the root, and validity."""
    problems = []
    edge_set = {(u, v): w for u, v, w in instance.edges}
    seen_edges = {}
    for i, node in enumerate(ntd.nodes):
        bag = set(node.bag)
        if any(c >= i for c in node.children):
            problems.append(f"node {i}: child not before parent")
            continue
        child_bags = [set(ntd.nodes[c].bag) for c in node.children]
        if node.kind == LEAF:
            if node.children or bag:
                problems.append(f"node {i}: leaf must be childless with empty bag")
        elif node.kind == INTRODUCE:
            if len(child_bags) != 1 or node.vertex in child_bags[0] \
                    or bag != child_bags[0] | {node.vertex}:
                problems.append(f"node {i}: bad introduce of {node.vertex}")
        elif node.kind == FORGET:
            if len(child_bags) != 1 or node.vertex not in child_bags[0] \
                    or bag != child_bags[0] - {node.vertex}:
                problems.append(f"node {i}: bad forget of {node.vertex}")
        elif node.kind == INTRODUCE_EDGE:
            u, v, w = node.edge
            if len(child_bags) != 1 or bag != child_bags[0] or not {u, v} <= bag:
                problems.append(f"node {i}: bad introduce edge ({u},{v})")
            if edge_set.get((u, v)) != w:
                problems.append(f"node {i}: edge ({u},{v},{w}) not in graph")
            seen_edges[(u, v)] = seen_edges.get((u, v), 0) + 1
        elif node.kind == JOIN:
            if len(child_bags) != 2 or any(b != bag for b in child_bags):
                problems.append(f"node {i}: bad join")
        else:
            problems.append(f"node {i}: unknown kind {node.kind!r}")
    for e in edge_set:
        if seen_edges.get(e, 0) != 1:
            problems.append(f"edge {e} introduced {seen_edges.get(e, 0)} times")
    root = ntd.nodes[-1]
    if root.kind != FORGET or root.bag or root.vertex not in instance.terminals:
        problems.append("root is not the forget node of a terminal")
    used = sorted(c for n in ntd.nodes for c in n.children)
    if used != list(range(len(ntd.nodes) - 1)):
        problems.append("nodes are not a single rooted tree")
    problems += [f"as tree decomposition: {p}"
                 for p in validate(ntd.as_tree_decomposition(), instance)]
    return problems
