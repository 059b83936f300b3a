"""Fixture graphs: the binary-tree family, the 3-colouring gadget, set-cover counterexamples."""

from __future__ import annotations

import random
from importlib import resources
from typing import Literal

from .graph import Graph, parse_gr
from .treedecomp import TreeDecomposition


def gen_gh_graph(h: int) -> tuple[Graph, TreeDecomposition]:
    """Complete binary tree with ``h`` levels where every vertex sees all its ancestors.

    Each root-to-leaf path (``h`` vertices) is therefore a clique.  The returned
    path decomposition has one bag per root-leaf path, leaves left to right,
    so each vertex's bags (the leaves below it) are contiguous.

    Every bag is a single clique of weight log2(h + 1); a global clique
    partition, in contrast, must split some root-leaf path into ``h``
    classes, which is why the global (flattened) width grows like ``h``.
    """
    if h < 1:
        raise ValueError("height must be at least 1")
    n = 2**h - 1
    edges = []
    for v in range(1, n):
        a = v
        while a:
            a = (a - 1) // 2
            edges.append((a, v))
    g = Graph(n, edges)
    first_leaf = 2 ** (h - 1) - 1
    bags = {}
    for i, leaf in enumerate(range(first_leaf, n)):
        path = [leaf]
        while path[-1]:
            path.append((path[-1] - 1) // 2)
        bags[i + 1] = frozenset(path)
    tree = [(i, i + 1) for i in range(1, len(bags))]
    return g, TreeDecomposition(bags, tree)


def gen_coloring_gadget(g: Graph) -> tuple[Graph, int]:
    """Attach a private triangle to every vertex; target weight ``(n + 1) ** 3``.

    ``g`` is 3-colourable exactly when the result can be partitioned into
    independent sets of product weight at most the target.  Vertex ``v``
    gains partners ``n + 2v`` and ``n + 2v + 1``.
    """
    n = g.n
    edges = list(g.edges())
    for v in range(n):
        a, b = n + 2 * v, n + 2 * v + 1
        edges += [(v, a), (v, b), (a, b)]
    return Graph(3 * n, edges), (n + 1) ** 3


def gen_sc_counterexample(k: int = 10, variant: Literal["unweighted", "weighted"] = "unweighted") -> Graph:
    """Graphs on which cover-based heuristics miss the optimum.

    ``unweighted``: ``K_k`` on ``0..k-1``; vertex ``k`` sees the first half,
    vertex ``k + 1`` the second half.  For k = 10 the optimum keeps ``K_k``
    whole (product 44) while the minimum cover splits it 6 + 6 (49).

    ``weighted``: a fixed 9-vertex instance (``k`` is ignored) with maximal
    cliques of sizes 6, 5, 4, 4.  The optimum uses the 6-clique plus the two
    leftovers (6, 2, 1: product 42); the cheapest weighted cover takes the
    5-clique instead and resolves to 5, 3, 1 (48).
    """
    if variant == "weighted":
        text = resources.files("cptw.data").joinpath("weighted_counterexample.gr").read_text()
        return parse_gr(text)
    if variant != "unweighted":
        raise ValueError(f"unknown variant {variant!r}")
    if k < 4 or k % 2:
        raise ValueError("k must be an even integer >= 4")
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    edges += [(u, k) for u in range(k // 2)]
    edges += [(u, k + 1) for u in range(k // 2, k)]
    return Graph(k + 2, edges)


def gen_random_graph(n: int, p: float, seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p); the same seed gives the same graph."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)
