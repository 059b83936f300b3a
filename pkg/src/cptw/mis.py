"""Maximum independent set by dynamic programming over a nice tree decomposition.

A partial solution at a node is described by which member (if any) of each
clique class of the node's bag lies in the set.  An independent set meets a
clique at most once, so a node stores at most ``prod(|C| + 1)`` states over
its classes: ``2 ** (bag weight)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

from .graph import Graph
from .partition import PartitionedDecomposition
from .treedecomp import TreeDecomposition, Violation

Kind = Literal["leaf", "introduce", "forget", "join"]


@dataclass
class NiceNode:
    kind: Kind
    bag: frozenset[int]
    children: list[int] = field(default_factory=list)
    vertex: int | None = None
    source: int | None = None  # bag id of the original decomposition


@dataclass
class NiceDecomposition:
    nodes: list[NiceNode]
    root: int

    def as_tree_decomposition(self) -> TreeDecomposition:
        bags = {i: n.bag for i, n in enumerate(self.nodes)}
        edges = [(i, c) for i, n in enumerate(self.nodes) for c in n.children]
        return TreeDecomposition(bags, edges)

    def structure_violations(self) -> list[Violation]:
        out = []
        for i, n in enumerate(self.nodes):
            kids = [self.nodes[c].bag for c in n.children]
            ok = {
                "leaf": not kids and not n.bag,
                "introduce": len(kids) == 1 and n.vertex not in kids[0] and n.bag == kids[0] | {n.vertex},
                "forget": len(kids) == 1 and n.vertex in kids[0] and n.bag == kids[0] - {n.vertex},
                "join": len(kids) == 2 and kids[0] == kids[1] == n.bag,
            }[n.kind]
            if not ok:
                out.append(Violation("bad-nice-node", i, f"node {i} is not a well-formed {n.kind} node"))
        return out


def to_nice(td: TreeDecomposition, root: int | None = None) -> NiceDecomposition:
    """Standard conversion to leaf / introduce / forget / join nodes.

    The tree is rooted at ``root`` (default: the largest bag id).  Between a
    child bag and its parent the child's extra vertices are forgotten and the
    parent's new vertices introduced, both in ascending order; several
    children are merged by binary joins.  The root keeps its bag.
    """
    if td.tree_violations():
        raise ValueError("input is not a tree of bags")
    if not td.bags:
        raise ValueError("decomposition has no bags")
    if root is None:
        root = max(td.bags)
    nb = td.neighbors()
    nodes: list[NiceNode] = []

    def add(kind, bag, children=(), vertex=None, source=None) -> int:
        nodes.append(NiceNode(kind, frozenset(bag), list(children), vertex, source))
        return len(nodes) - 1

    # iterative post-order so deep path decompositions do not hit the recursion limit
    parent = {root: None}
    order = []
    stack = [root]
    while stack:
        t = stack.pop()
        order.append(t)
        for u in sorted(nb[t], reverse=True):
            if u != parent[t]:
                parent[u] = t
                stack.append(u)
    top: dict[int, int] = {}
    for t in reversed(order):
        bag = td.bags[t]
        heads = []
        for c in sorted(u for u in nb[t] if u != parent[t]):
            cur, cbag = top.pop(c), td.bags[c]
            for v in sorted(cbag - bag):
                cbag = cbag - {v}
                cur = add("forget", cbag, [cur], v, c)
            for v in sorted(bag - cbag):
                cbag = cbag | {v}
                cur = add("introduce", cbag, [cur], v, t)
            heads.append(cur)
        if not heads:
            cur = add("leaf", (), source=t)
            built: frozenset[int] = frozenset()
            for v in sorted(bag):
                built = built | {v}
                cur = add("introduce", built, [cur], v, t)
            heads.append(cur)
        while len(heads) > 1:
            a, b = heads.pop(0), heads.pop(0)
            heads.append(add("join", bag, [a, b], source=t))
        top[t] = heads[0]
    return NiceDecomposition(nodes, top[root])


@dataclass
class StateCount:
    node: int
    states: int
    bound: int


def max_independent_set(g: Graph, pd: PartitionedDecomposition,
                        counts: list[StateCount] | None = None) -> set[int]:
    """A maximum independent set of ``g``.

    ``pd`` must be a valid clique-partitioned decomposition of ``g``.  Each
    node's table is keyed by a choice vector: for every class of the source
    bag's partition restricted to this node's bag, the chosen member or -1.
    The state count is checked against the product bound at every node and
    appended to ``counts`` when given.
    """
    nice = to_nice(pd.td)
    masks = g.masks
    tables: dict[int, dict[tuple[int, ...], tuple[int, frozenset[int]]]] = {}

    def classes_of(node: NiceNode) -> list[tuple[int, ...]]:
        part = pd.partitions[node.source]
        out = []
        for c in part.classes:
            kept = tuple(v for v in c if v in node.bag)
            if kept:
                out.append(kept)
        return out

    def key(chosen: frozenset[int], classes) -> tuple[int, ...]:
        vec = []
        for c in classes:
            hit = [v for v in c if v in chosen]
            vec.append(hit[0] if hit else -1)
        return tuple(vec)

    # children always precede parents in ``nodes``
    for i, node in enumerate(nice.nodes):
        classes = classes_of(node)
        table: dict[frozenset[int], tuple[int, frozenset[int]]] = {}

        def put(chosen: frozenset[int], size: int, solution: frozenset[int]) -> None:
            old = table.get(chosen)
            if old is None or size > old[0]:
                table[chosen] = (size, solution)

        kids = [tables.pop(c) for c in node.children]
        child_entries = []
        for kid in kids:
            child_entries.append([(frozenset(v for v in vec if v >= 0), val) for vec, val in kid.items()])
        if node.kind == "leaf":
            put(frozenset(), 0, frozenset())
        elif node.kind == "introduce":
            v = node.vertex
            for chosen, (size, sol) in child_entries[0]:
                put(chosen, size, sol)
                if not any(masks[v] >> u & 1 for u in chosen):
                    put(chosen | {v}, size + 1, sol | {v})
        elif node.kind == "forget":
            v = node.vertex
            for chosen, (size, sol) in child_entries[0]:
                put(chosen - {v}, size, sol)
        else:
            right = dict(child_entries[1])
            for chosen, (size, sol) in child_entries[0]:
                other = right.get(chosen)
                if other is not None:
                    put(chosen, size + other[0] - len(chosen), sol | other[1])
        bound = math.prod(len(c) + 1 for c in classes)
        if len(table) > bound:
            raise RuntimeError(f"node {i}: {len(table)} states exceed the class bound {bound}")
        if counts is not None:
            counts.append(StateCount(i, len(table), bound))
        tables[i] = {key(ch, classes): val for ch, val in table.items()}
    best = max(tables[nice.root].values(), key=lambda sv: sv[0])
    return set(best[1])
