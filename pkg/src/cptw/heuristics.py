"""Heuristic clique partitions: greedy (MC, RMC) and set-cover based (SC, WSC)."""

from __future__ import annotations

import heapq
from typing import Iterable

from .cliques import canonical_key, maximal_clique_masks, maximal_cliques
from .graph import Graph, bits
from .partition import CliquePartition
from .setcover import SetCoverInstance, solve_cover


class CoverTimeout(TimeoutError):
    """The set cover stage hit its deadline.

    ``partition`` holds the partition resolved from the best cover found.
    """

    def __init__(self, partition: CliquePartition):
        super().__init__("set cover did not finish before the deadline")
        self.partition = partition


def mc_heuristic(g: Graph, clique_limit: int | None = None) -> CliquePartition:
    """Maximal clique heuristic.

    Enumerates the maximal cliques once, then repeatedly takes the clique
    with the most uncovered vertices.  Keys live in a binary heap and are
    refreshed lazily: a popped entry whose count went stale is pushed back.
    Ties go to the larger original clique, then canonical order.
    """
    cs = maximal_cliques(g, clique_limit)
    remaining = [len(c) for c in cs.cliques]
    heap = [(-len(c), -len(c), i) for i, c in enumerate(cs.cliques)]
    heapq.heapify(heap)
    covered = [False] * g.n
    classes = []
    while heap:
        neg, neg_size, i = heapq.heappop(heap)
        if -neg != remaining[i]:
            if remaining[i]:
                heapq.heappush(heap, (-remaining[i], neg_size, i))
            continue
        if not remaining[i]:
            continue
        cls = [v for v in cs.cliques[i] if not covered[v]]
        classes.append(cls)
        for v in cls:
            covered[v] = True
            for j in cs.by_vertex[v]:
                remaining[j] -= 1
    return CliquePartition(classes)


def rmc_heuristic(g: Graph, clique_limit: int | None = None) -> CliquePartition:
    """Repeated maximal clique heuristic: take a maximum clique of what is left, repeat."""
    residual = (1 << g.n) - 1
    classes = []
    while residual:
        cliques = maximal_clique_masks(g.masks, residual, clique_limit)
        pick = min(cliques, key=canonical_key)
        classes.append(list(bits(pick)))
        residual &= ~pick
    return CliquePartition(classes)


def greedy_clique_partition(g: Graph) -> CliquePartition:
    """Grow cliques greedily from high-degree vertices; needs no clique enumeration.

    Last-resort fallback when a bag has too many maximal cliques to list.
    """
    masks = g.masks
    residual = (1 << g.n) - 1
    classes = []
    while residual:
        v = max(bits(residual), key=lambda u: ((masks[u] & residual).bit_count(), -u))
        cls = [v]
        cand = masks[v] & residual
        while cand:
            u = max(bits(cand), key=lambda w: ((masks[w] & cand).bit_count(), -w))
            cls.append(u)
            cand &= masks[u]
        classes.append(cls)
        for u in cls:
            residual &= ~(1 << u)
    return CliquePartition(classes)


def resolve_overlaps(g: Graph, cover: Iterable[Iterable[int]]) -> CliquePartition:
    """Turn a clique cover into a partition.

    Every vertex goes to the largest cover set containing it; among equally
    large sets the first in canonical order wins.
    """
    sets = sorted((tuple(sorted(set(c))) for c in cover), key=lambda c: (-len(c), c))
    for c in sets:
        if not g.is_clique(c):
            raise ValueError(f"cover set {list(c)} is not a clique")
    owner: dict[int, int] = {}
    for i, c in enumerate(sets):
        for v in c:
            owner.setdefault(v, i)
    missing = [v for v in range(g.n) if v not in owner]
    if missing:
        raise ValueError(f"cover misses vertices {missing}")
    extra = sorted(set(owner) - set(range(g.n)))
    if extra:
        raise ValueError(f"cover uses unknown vertices {extra}")
    classes: list[list[int]] = [[] for _ in sets]
    for v in range(g.n):
        classes[owner[v]].append(v)
    return CliquePartition(c for c in classes if c)


def _cover_heuristic(g: Graph, objective: str, deadline: float | None,
                     clique_limit: int | None) -> CliquePartition:
    cs = maximal_cliques(g, clique_limit)
    result = solve_cover(SetCoverInstance(g.n, cs.cliques, objective), deadline)
    part = resolve_overlaps(g, [cs.cliques[i] for i in result.chosen])
    if not result.optimal:
        raise CoverTimeout(part)
    return part


def sc_heuristic(g: Graph, deadline: float | None = None,
                 clique_limit: int | None = None) -> CliquePartition:
    """Minimum-cardinality cover by maximal cliques, then overlap resolution.

    Raises :class:`CoverTimeout` if the cover search is cut off by ``deadline``.
    """
    return _cover_heuristic(g, "cardinality", deadline, clique_limit)


def wsc_heuristic(g: Graph, deadline: float | None = None,
                  clique_limit: int | None = None) -> CliquePartition:
    """Like :func:`sc_heuristic`, with each clique of size k costing log2(k + 1)."""
    return _cover_heuristic(g, "product", deadline, clique_limit)
