"""Exact Weighted Clique Partition: branch-and-bound and a brute-force oracle.

The search picks, at every node, which maximal clique of the residual graph is
the next (largest remaining) class.  Chosen sizes never increase along a path,
so a state is ``(residual vertices, cap, product so far)``.  Two lower bounds
prune it: the size bound, which assumes the residual can be tiled by cliques
of size ``cap``, and the valuable-sequence bound, built from the sizes of the
residual's maximal cliques.
"""

from __future__ import annotations

import bisect
import math
import sys
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Literal

from .cliques import canonical_key, maximal_clique_masks
from .graph import Graph, bits
from .partition import CliquePartition

Bounds = Literal["none", "s", "sv"]


class InfeasibleSequence(ValueError):
    pass


class Status(str, Enum):
    OPTIMAL = "optimal"
    THRESHOLD = "threshold-accepted"
    TIMEOUT = "timeout-incumbent"
    TIMEOUT_EMPTY = "timeout-no-incumbent"

    def __str__(self) -> str:
        return self.value


def size_lb(n: int, s: int) -> int:
    """Cheapest product for covering ``n`` vertices with cliques of size at most ``s``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    if s <= 0:
        raise ValueError("clique size bound must be positive when vertices remain")
    q, r = divmod(n, s)
    return (s + 1) ** q * (r + 1)


@dataclass
class ValuableSequence:
    numbers: list[int]
    values: list[int]

    @property
    def weight(self) -> int:
        return math.prod(v + 1 for v in self.values)


def valuable_sequence(numbers: Iterable[int], n: int) -> ValuableSequence:
    """Minimum-weight valid sequence of total value ``n`` drawn from ``numbers``.

    Greedy: each round takes an eligible unused number of largest achievable
    value, preferring the smallest such number.  The first element is worth
    ``min(a, n)``; afterwards ``a`` is eligible iff ``a - total <= last`` and
    is worth ``min(a, last, n - total)``.
    """
    pool = sorted(numbers)
    if n < 0:
        raise ValueError("target value must be non-negative")
    if pool and pool[0] <= 0:
        raise ValueError("numbers must be positive")
    if sum(pool) < n:
        raise InfeasibleSequence(f"numbers sum to {sum(pool)} < {n}")
    chosen, values = [], []
    total = 0
    last = None
    while total < n:
        if last is None:
            j = len(pool) - 1
            cap = n
        else:
            j = bisect.bisect_right(pool, total + last) - 1
            cap = min(last, n - total)
        if j < 0:
            raise InfeasibleSequence(f"no eligible number after reaching value {total}")
        if pool[j] < cap:
            value = pool[j]
            i = bisect.bisect_left(pool, value)
        else:
            value = cap
            i = bisect.bisect_left(pool, cap)
        a = pool.pop(i)
        chosen.append(a)
        values.append(value)
        total += value
        last = value
    return ValuableSequence(chosen, values)


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    incumbents: int = 0
    pruned_trivial: int = 0
    pruned_size: int = 0
    pruned_vs: int = 0
    time_s: float = 0.0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SolverOutcome:
    partition: CliquePartition | None
    status: Status
    stats: SearchStats = field(default_factory=SearchStats)
    first_leaf: CliquePartition | None = None

    @property
    def product(self) -> int | None:
        return None if self.partition is None else self.partition.product_weight


class _Stop(Exception):
    pass


def _to_partition(class_masks: list[int]) -> CliquePartition:
    return CliquePartition(list(bits(m)) for m in class_masks)


def solve_bb(
    g: Graph,
    accept_threshold: int | None = None,
    deadline: float | None = None,
    bounds: Bounds = "sv",
    clique_limit: int | None = None,
    node_limit: int | None = None,
    trace: Callable[[int, int, int, int, int], None] | None = None,
) -> SolverOutcome:
    """Minimum-product clique partition by depth-first branch-and-bound.

    ``accept_threshold``: stop at the first incumbent whose product is at most
    this.  ``deadline``: a ``time.monotonic()`` value; past it the incumbent is
    returned with a timeout status.  ``bounds`` selects the lower bounds:
    ``none`` (only the product so far), ``s`` (size bound), ``sv`` (size and
    valuable-sequence bounds).  ``node_limit`` caps node expansions and
    behaves like a deadline.

    ``trace(residual_mask, product, cap, size_bound, vs_bound)`` is called for
    every child state considered; both bounds are computed for it regardless
    of ``bounds``.
    """
    if bounds not in ("none", "s", "sv"):
        raise ValueError(f"unknown bounds setting {bounds!r}")
    t0 = time.monotonic()
    masks = g.masks
    stats = SearchStats()
    best: list = [None, None]
    first: list = [None]
    use_s = bounds in ("s", "sv")
    use_v = bounds == "sv"
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * g.n + 200))

    def record(product: int, classes: list[int]) -> None:
        stats.leaves += 1
        if first[0] is None:
            first[0] = list(classes)
        if best[0] is None or product < best[0]:
            best[0], best[1] = product, list(classes)
            stats.incumbents += 1
            if accept_threshold is not None and product <= accept_threshold:
                raise _Stop(Status.THRESHOLD)

    def expand(residual: int, cap: int, product: int, chosen: list[int], cliques: list[int] | None) -> None:
        stats.nodes += 1
        if deadline is not None and time.monotonic() > deadline:
            raise _Stop(Status.TIMEOUT)
        if node_limit is not None and stats.nodes > node_limit:
            raise _Stop(Status.TIMEOUT)
        if cliques is None:
            cliques = maximal_clique_masks(masks, residual, clique_limit)
        if len(cliques) == 1 and residual.bit_count() <= cap:
            chosen.append(residual)
            record(product * (residual.bit_count() + 1), chosen)
            chosen.pop()
            return
        cands = sorted((c for c in cliques if c.bit_count() <= cap), key=canonical_key)
        for c in cands:
            size = c.bit_count()
            p = product * (size + 1)
            rest = residual & ~c
            chosen.append(c)
            if not rest:
                record(p, chosen)
                chosen.pop()
                continue
            rest_cliques = None
            if trace is not None:
                rest_cliques = maximal_clique_masks(masks, rest, clique_limit)
                n_rest = rest.bit_count()
                trace(rest, p, size, size_lb(n_rest, size),
                      valuable_sequence([m.bit_count() for m in rest_cliques], n_rest).weight)
            if best[0] is not None:
                if p >= best[0]:
                    stats.pruned_trivial += 1
                    chosen.pop()
                    continue
                if use_s and p * size_lb(rest.bit_count(), size) >= best[0]:
                    stats.pruned_size += 1
                    chosen.pop()
                    continue
                if use_v:
                    if rest_cliques is None:
                        rest_cliques = maximal_clique_masks(masks, rest, clique_limit)
                    vs = valuable_sequence([m.bit_count() for m in rest_cliques], rest.bit_count())
                    if p * vs.weight >= best[0]:
                        stats.pruned_vs += 1
                        chosen.pop()
                        continue
            expand(rest, size, p, chosen, rest_cliques)
            chosen.pop()

    status = Status.OPTIMAL
    if g.n == 0:
        best = [1, []]
        first[0] = []
    else:
        try:
            expand((1 << g.n) - 1, g.n, 1, [], None)
        except _Stop as stop:
            status = stop.args[0]
    if status is Status.TIMEOUT and best[1] is None:
        status = Status.TIMEOUT_EMPTY
    stats.time_s = time.monotonic() - t0
    return SolverOutcome(
        partition=None if best[1] is None else _to_partition(best[1]),
        status=status,
        stats=stats,
        first_leaf=None if first[0] is None else _to_partition(first[0]),
    )


def brute_force(g: Graph, cap: int = 14) -> CliquePartition:
    """Minimum-product clique partition by exhaustive assignment.

    Every vertex joins an existing compatible class or opens a new one.
    Partial products only grow, so branches already at least as heavy as the
    best complete partition are cut.
    """
    if g.n > cap:
        raise ValueError(f"brute force limited to {cap} vertices, got {g.n}")
    masks = g.masks
    n = g.n
    classes: list[int] = []
    best: list = [None, []]

    def rec(v: int, product: int) -> None:
        if best[0] is not None and product >= best[0]:
            return
        if v == n:
            best[0], best[1] = product, list(classes)
            return
        for i, cm in enumerate(classes):
            if cm & ~masks[v] == 0:
                k = cm.bit_count()
                classes[i] = cm | (1 << v)
                rec(v + 1, product // (k + 1) * (k + 2))
                classes[i] = cm
        classes.append(1 << v)
        rec(v + 1, product * 2)
        classes.pop()

    rec(0, 1)
    return _to_partition(best[1])
