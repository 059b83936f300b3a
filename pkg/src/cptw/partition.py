"""Clique partitions and their weights.

Comparisons always use the exact integer product of ``|class| + 1``; the
base-2 logarithm is only for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph
from .treedecomp import TreeDecomposition, Violation, validate_td


def product_weight(sizes: Iterable[int]) -> int:
    return math.prod(s + 1 for s in sizes)


def log_weight(sizes: Iterable[int]) -> float:
    return math.fsum(math.log2(s + 1) for s in sizes)


def _canonical(classes: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    cs = [tuple(sorted(c)) for c in classes]
    return tuple(sorted((c for c in cs if c), key=lambda c: (-len(c), c)))


@dataclass(frozen=True)
class CliquePartition:
    """A partition into cliques, classes sorted by size then lexicographically."""

    classes: tuple[tuple[int, ...], ...]

    def __init__(self, classes: Iterable[Iterable[int]] = ()):
        object.__setattr__(self, "classes", _canonical(classes))

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @property
    def product_weight(self) -> int:
        return product_weight(self.sizes)

    @property
    def log_weight(self) -> float:
        return log_weight(self.sizes)

    def relabel(self, old: Sequence[int]) -> CliquePartition:
        """Map vertex ``i`` to ``old[i]``; used to lift bag-local results."""
        return CliquePartition([old[v] for v in c] for c in self.classes)

    def __len__(self) -> int:
        return len(self.classes)


def validate_partition(g: Graph, classes: Iterable[Iterable[int]],
                       vertices: Iterable[int] | None = None) -> list[Violation]:
    """Violations of ``classes`` being a clique partition of ``vertices``.

    ``vertices`` defaults to all of ``g``.
    """
    target = set(range(g.n)) if vertices is None else set(vertices)
    out = []
    seen: dict[int, int] = {}
    for i, cls in enumerate(classes):
        cls = list(cls)
        for v in cls:
            if v not in target:
                out.append(Violation("unknown-vertex", v, f"class {i} holds vertex {v} outside the target"))
            elif v in seen:
                out.append(Violation("overlap", v, f"vertex {v} in classes {seen[v]} and {i}"))
            else:
                seen[v] = i
        inside = [v for v in cls if 0 <= v < g.n]
        if not g.is_clique(inside):
            out.append(Violation("not-a-clique", tuple(sorted(cls)), f"class {sorted(cls)} is not a clique"))
    for v in sorted(target - seen.keys()):
        out.append(Violation("uncovered", v, f"vertex {v} is in no class"))
    return out


@dataclass
class PartitionedDecomposition:
    """A tree decomposition with one clique partition per bag (original vertex ids)."""

    td: TreeDecomposition
    partitions: dict[int, CliquePartition] = field(default_factory=dict)

    @property
    def cp_width_product(self) -> int:
        return max((p.product_weight for p in self.partitions.values()), default=1)

    @property
    def cp_width(self) -> float:
        # log of the heaviest bag by exact product, so ties cannot flip on rounding
        heaviest = max(self.partitions.values(), key=lambda p: p.product_weight, default=None)
        return heaviest.log_weight if heaviest is not None else 0.0

    def violations(self, g: Graph) -> list[Violation]:
        out = validate_td(g, self.td)
        if out:
            return out
        for t, bag in self.td.bags.items():
            p = self.partitions.get(t)
            if p is None:
                out.append(Violation("missing-partition", t, f"bag {t} has no partition"))
                continue
            out.extend(validate_partition(g, p.classes, bag))
        return out
