"""Maximal clique enumeration (Bron-Kerbosch with pivoting over a degeneracy order)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, bits


class EnumerationTruncated(RuntimeError):
    """More maximal cliques than the caller allowed."""

    def __init__(self, limit: int):
        super().__init__(f"more than {limit} maximal cliques")
        self.limit = limit


def degeneracy_ordering(g: Graph) -> tuple[list[int], int]:
    """Repeatedly remove a minimum-degree vertex (ties: smallest id).

    Returns the removal order and the degeneracy, the largest degree seen at
    removal time.
    """
    order, degen = _degeneracy_mask(g.masks, (1 << g.n) - 1)
    return order, degen


def _degeneracy_mask(masks, vertex_mask: int) -> tuple[list[int], int]:
    deg = {v: (masks[v] & vertex_mask).bit_count() for v in bits(vertex_mask)}
    buckets: dict[int, set[int]] = {}
    for v, d in deg.items():
        buckets.setdefault(d, set()).add(v)
    order = []
    degen = 0
    lo = 0
    remaining = vertex_mask
    while remaining:
        while not buckets.get(lo):
            lo += 1
        v = min(buckets[lo])
        buckets[lo].discard(v)
        order.append(v)
        degen = max(degen, lo)
        remaining &= ~(1 << v)
        for u in bits(masks[v] & remaining):
            d = deg[u]
            buckets[d].discard(u)
            deg[u] = d - 1
            buckets.setdefault(d - 1, set()).add(u)
        lo = max(lo - 1, 0)
    return order, degen


def maximal_clique_masks(masks, vertex_mask: int, limit: int | None = None) -> list[int]:
    """Maximal cliques of the subgraph induced by ``vertex_mask``, as bitmasks.

    Order is the enumeration order, not canonical; see :func:`canonical_order`.
    """
    out: list[int] = []
    if not vertex_mask:
        return out

    def expand(r: int, p: int, x: int) -> None:
        if not p:
            if not x:
                out.append(r)
                if limit is not None and len(out) > limit:
                    raise EnumerationTruncated(limit)
            return
        # pivot maximising |P ∩ N(u)|
        px = p | x
        best_u, best_c = -1, -1
        for u in bits(px):
            c = (p & masks[u]).bit_count()
            if c > best_c:
                best_u, best_c = u, c
        for v in bits(p & ~masks[best_u]):
            nv = masks[v]
            expand(r | (1 << v), p & nv, x & nv)
            p &= ~(1 << v)
            x |= 1 << v

    order, _ = _degeneracy_mask(masks, vertex_mask)
    p, x = vertex_mask, 0
    for v in order:
        nv = masks[v] & vertex_mask
        expand(1 << v, p & nv, x & nv)
        p &= ~(1 << v)
        x |= 1 << v
    return out


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return (-mask.bit_count(), tuple(bits(mask)))


def canonical_order(clique_masks: list[int]) -> list[int]:
    """Sort by size descending, then lexicographically by sorted vertex list."""
    return sorted(clique_masks, key=canonical_key)


@dataclass
class CliqueSet:
    """All maximal cliques of a graph plus, per vertex, the cliques containing it."""

    cliques: list[tuple[int, ...]]
    by_vertex: list[list[int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.cliques]


def maximal_cliques(g: Graph, limit: int | None = None) -> CliqueSet:
    """Every maximal clique of ``g`` exactly once, in canonical order.

    Raises :class:`EnumerationTruncated` once more than ``limit`` cliques have
    been produced.
    """
    ms = canonical_order(maximal_clique_masks(g.masks, (1 << g.n) - 1, limit))
    cliques = [tuple(bits(m)) for m in ms]
    by_vertex: list[list[int]] = [[] for _ in range(g.n)]
    for i, c in enumerate(cliques):
        for v in c:
            by_vertex[v].append(i)
    return CliqueSet(cliques, by_vertex)
