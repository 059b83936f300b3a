"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from cptw.graph import Graph


def naive_maximal_cliques(g: Graph) -> set[frozenset[int]]:
    """Test every vertex subset; keep cliques no outside vertex extends."""
    out = set()
    for r in range(1, g.n + 1):
        for sub in itertools.combinations(range(g.n), r):
            if all(g.has_edge(u, v) for u, v in itertools.combinations(sub, 2)):
                s = set(sub)
                if not any(all(g.has_edge(w, u) for u in s) for w in range(g.n) if w not in s):
                    out.add(frozenset(sub))
    if g.n == 0:
        return set()
    return out


def partitions_of(items):
    """All set partitions of ``items`` (Bell-number many)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in partitions_of(rest):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]
        yield [[first]] + p


def all_partitions_min(g: Graph) -> int:
    """Minimum product over all clique partitions, by full enumeration (n <= 10)."""
    best = None
    for p in partitions_of(range(g.n)):
        if all(g.is_clique(c) for c in p):
            w = math.prod(len(c) + 1 for c in p)
            if best is None or w < best:
                best = w
    return 1 if best is None else best


def vs_exhaustive(numbers, n: int) -> int | None:
    """Minimum weight over every valid sequence, per the value/eligibility rules."""
    start = tuple(sorted(numbers))

    @lru_cache(maxsize=None)
    def go(pool: tuple[int, ...], total: int, last: int | None) -> int | None:
        if total == n:
            return 1
        best = None
        for i, a in enumerate(pool):
            if i and pool[i - 1] == a:
                continue
            if last is None:
                val = min(a, n)
            else:
                if a - total > last:
                    continue
                val = min(a, last, n - total)
            if val <= 0:
                continue
            sub = go(pool[:i] + pool[i + 1:], total + val, val)
            if sub is not None:
                w = (val + 1) * sub
                if best is None or w < best:
                    best = w
        return best

    return go(start, 0, None)


def cover_exhaustive(universe: int, sets, objective: str) -> int:
    best = None
    full = set(range(universe))
    for r in range(0, len(sets) + 1):
        for comb in itertools.combinations(range(len(sets)), r):
            if set().union(*(sets[i] for i in comb)) >= full:
                cost = r if objective == "cardinality" else math.prod(len(sets[i]) + 1 for i in comb)
                if best is None or cost < best:
                    best = cost
    return best


def max_independent_set_size(g: Graph) -> int:
    best = 0
    for mask in range(1 << g.n):
        if mask.bit_count() <= best:
            continue
        if all(not (g.masks[v] & mask) for v in range(g.n) if mask >> v & 1):
            best = mask.bit_count()
    return best


def best_elimination_width(g: Graph) -> int:
    """Minimum over all elimination orders of the largest eliminated neighbourhood."""
    best = None
    for order in itertools.permutations(range(g.n)):
        nbrs = [set(a) for a in g.adj]
        width = 0
        for v in order:
            width = max(width, len(nbrs[v]))
            for a in nbrs[v]:
                nbrs[a] |= nbrs[v] - {a}
                nbrs[a].discard(v)
        if best is None or width < best:
            best = width
    return best
