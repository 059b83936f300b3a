"""Exact set cover over small universes.

Two objectives share one solver: ``cardinality`` counts sets, ``product``
multiplies ``|S| + 1`` over chosen sets (the exponentiated form of the
``log(|S| + 1)`` set weight).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterable, Literal

from .exact import size_lb
from .graph import bits, to_mask

Objective = Literal["cardinality", "product"]


class InfeasibleCover(ValueError):
    pass


class _Timeout(Exception):
    pass


@dataclass
class SetCoverInstance:
    universe: int
    sets: list[frozenset[int]]
    objective: Objective = "cardinality"

    def __init__(self, universe: int, sets: Iterable[Iterable[int]], objective: Objective = "cardinality"):
        if objective not in ("cardinality", "product"):
            raise ValueError(f"unknown objective {objective!r}")
        self.universe = universe
        self.sets = [frozenset(s) for s in sets]
        self.objective = objective

    def cost(self, chosen: Iterable[int]) -> int:
        chosen = list(chosen)
        if self.objective == "cardinality":
            return len(chosen)
        return math.prod(len(self.sets[i]) + 1 for i in chosen)

    def covers(self, chosen: Iterable[int]) -> bool:
        got = set()
        for i in chosen:
            got |= self.sets[i]
        return got >= set(range(self.universe))

    def _check(self) -> None:
        if any(not s for s in self.sets):
            raise InfeasibleCover("empty set in instance")
        if not self.covers(range(len(self.sets))):
            missing = set(range(self.universe)).difference(*self.sets)
            raise InfeasibleCover(f"elements {sorted(missing)} are in no set")


@dataclass
class CoverResult:
    chosen: list[int]
    cost: int
    optimal: bool
    nodes: int = 0


def greedy_cover(inst: SetCoverInstance) -> list[int]:
    """Standard greedy; indices of the chosen sets in pick order."""
    inst._check()
    masks = [to_mask(s) for s in inst.sets]
    uncovered = (1 << inst.universe) - 1
    chosen = []
    while uncovered:
        best, best_key = None, None
        for i, m in enumerate(masks):
            new = (m & uncovered).bit_count()
            if not new:
                continue
            if inst.objective == "cardinality":
                key = (-new, i)
            else:
                key = (math.log2(len(inst.sets[i]) + 1) / new, i)
            if best_key is None or key < best_key:
                best, best_key = i, key
        chosen.append(best)
        uncovered &= ~masks[best]
    return chosen


def solve_cover(inst: SetCoverInstance, deadline: float | None = None) -> CoverResult:
    """Minimum cover by element branching, seeded with the greedy cover.

    Branches on the lowest uncovered element, trying the sets that contain it
    in order of decreasing new coverage.  On hitting ``deadline`` (a
    ``time.monotonic()`` value) the incumbent is returned with
    ``optimal=False``.
    """
    inst._check()
    masks = [to_mask(s) for s in inst.sets]
    sizes = [len(s) for s in inst.sets]
    containing: list[list[int]] = [[] for _ in range(inst.universe)]
    for i, m in enumerate(masks):
        for e in bits(m):
            containing[e].append(i)
    product = inst.objective == "product"

    incumbent = greedy_cover(inst)
    best = [inst.cost(incumbent), sorted(incumbent)]
    nodes = 0

    def dfs(uncovered: int, chosen: list[int], cost: int) -> None:
        nonlocal nodes
        nodes += 1
        if deadline is not None and time.monotonic() > deadline:
            raise _Timeout
        if not uncovered:
            if cost < best[0]:
                best[0], best[1] = cost, sorted(chosen)
            return
        u = uncovered.bit_count()
        cmax = max((m & uncovered).bit_count() for m in masks)
        if product:
            lb = cost * size_lb(u, cmax)
        else:
            lb = cost + -(-u // cmax)
        if lb >= best[0]:
            return
        e = (uncovered & -uncovered).bit_length() - 1
        cands = sorted(containing[e], key=lambda i: (-(masks[i] & uncovered).bit_count(), i))
        for i in cands:
            chosen.append(i)
            dfs(uncovered & ~masks[i], chosen, cost * (sizes[i] + 1) if product else cost + 1)
            chosen.pop()

    optimal = True
    try:
        dfs((1 << inst.universe) - 1, [], 1 if product else 0)
    except _Timeout:
        optimal = False
    return CoverResult(best[1], best[0], optimal, nodes)
