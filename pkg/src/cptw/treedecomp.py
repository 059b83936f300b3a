"""Tree decompositions: PACE ``.td`` I/O, validation, min-fill-in construction."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Graph


class DecompositionFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """One broken property.  ``kind`` is a short tag, ``subject`` what broke it."""

    kind: str
    subject: object
    message: str = ""

    def __str__(self) -> str:
        return self.message or f"{self.kind}: {self.subject}"


@dataclass
class TreeDecomposition:
    bags: dict[int, frozenset[int]]
    edges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.bags = {t: frozenset(b) for t, b in self.bags.items()}
        self.edges = [(a, b) for a, b in self.edges]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    @property
    def max_bag_size(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0)

    def neighbors(self) -> dict[int, list[int]]:
        nb: dict[int, list[int]] = {t: [] for t in self.bags}
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return nb

    def tree_violations(self) -> list[Violation]:
        out = []
        for a, b in self.edges:
            for t in (a, b):
                if t not in self.bags:
                    out.append(Violation("unknown-bag", t, f"tree edge uses unknown bag {t}"))
        if out:
            return out
        k = len(self.bags)
        if k == 0:
            return out
        if len(self.edges) != k - 1:
            out.append(Violation("not-a-tree", len(self.edges),
                                 f"{k} bags need {k - 1} tree edges, found {len(self.edges)}"))
        nb = self.neighbors()
        start = next(iter(self.bags))
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for u in nb[t]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != k:
            out.append(Violation("not-a-tree", k - len(seen), "tree edges do not connect all bags"))
        return out


def parse_td(text: str | bytes, n: int | None = None) -> TreeDecomposition:
    """Parse a PACE ``.td`` document.  Vertices become 0-indexed, bag ids are kept.

    ``n`` optionally cross-checks the vertex count declared in the header.
    """
    if isinstance(text, bytes):
        text = text.decode()
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()

        def ints(items):
            try:
                return [int(x) for x in items]
            except ValueError:
                raise DecompositionFormatError(f"line {lineno}: non-integer field in {raw!r}") from None

        if parts[0] == "s":
            if header is not None or len(parts) != 5 or parts[1] != "td":
                raise DecompositionFormatError(f"line {lineno}: malformed header {raw!r}")
            header = ints(parts[2:])
        elif parts[0] == "b":
            if header is None:
                raise DecompositionFormatError(f"line {lineno}: bag before header")
            vals = ints(parts[1:])
            if not vals:
                raise DecompositionFormatError(f"line {lineno}: bag without id")
            bid, vs = vals[0], vals[1:]
            if bid in bags:
                raise DecompositionFormatError(f"line {lineno}: duplicate bag {bid}")
            for v in vs:
                if not 1 <= v <= header[2]:
                    raise DecompositionFormatError(
                        f"line {lineno}: vertex {v} out of range 1..{header[2]}")
            bags[bid] = frozenset(v - 1 for v in vs)
        else:
            if header is None:
                raise DecompositionFormatError(f"line {lineno}: tree edge before header")
            vals = ints(parts)
            if len(vals) != 2:
                raise DecompositionFormatError(f"line {lineno}: expected a tree edge, got {raw!r}")
            edges.append((vals[0], vals[1]))
    if header is None:
        raise DecompositionFormatError("missing 's td' header")
    nbags, maxsize, nverts = header
    if nbags != len(bags):
        raise DecompositionFormatError(f"header declares {nbags} bags, found {len(bags)}")
    if n is not None and nverts != n:
        raise DecompositionFormatError(f"header declares {nverts} vertices, graph has {n}")
    if bags and maxsize != max(len(b) for b in bags.values()):
        raise DecompositionFormatError(f"header declares max bag size {maxsize}")
    td = TreeDecomposition(bags, edges)
    problems = td.tree_violations()
    if problems:
        raise DecompositionFormatError("; ".join(str(p) for p in problems))
    return td


def write_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.max_bag_size} {n}"]
    for t in sorted(td.bags):
        lines.append(" ".join(["b", str(t)] + [str(v + 1) for v in sorted(td.bags[t])]))
    lines += [f"{a} {b}" for a, b in td.edges]
    return "\n".join(lines) + "\n"


def validate_td(g: Graph, td: TreeDecomposition) -> list[Violation]:
    """All violations of the tree and the three decomposition properties.

    An empty list means ``td`` is a valid tree decomposition of ``g``.
    """
    out = td.tree_violations()
    if any(v.kind == "unknown-bag" for v in out):
        return out
    where: list[list[int]] = [[] for _ in range(g.n)]
    for t, bag in td.bags.items():
        for v in bag:
            if not 0 <= v < g.n:
                out.append(Violation("unknown-vertex", v, f"bag {t} holds unknown vertex {v}"))
            else:
                where[v].append(t)
    for v in range(g.n):
        if not where[v]:
            out.append(Violation("vertex-uncovered", v, f"vertex {v} is in no bag"))
    for u, v in g.edges():
        if not any(v in td.bags[t] for t in where[u]):
            out.append(Violation("edge-uncovered", (u, v), f"edge {{{u}, {v}}} is in no bag"))
    nb = td.neighbors()
    for v in range(g.n):
        holding = set(where[v])
        if len(holding) < 2:
            continue
        start = where[v][0]
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for u in nb[t]:
                if u in holding and u not in seen:
                    seen.add(u)
                    stack.append(u)
        if seen != holding:
            out.append(Violation("disconnected", v, f"bags containing vertex {v} are not connected"))
    return out


def min_fill_in_td(g: Graph, seed: int = 0) -> TreeDecomposition:
    """Tree decomposition from a greedy minimum fill-in elimination order.

    Each step eliminates the vertex whose remaining neighbourhood needs the
    fewest fill edges, ties broken by degree and then by vertex id.  With a
    non-zero ``seed`` the final tie-break uses a seeded random ranking of the
    vertices instead of their ids.  Bags contained in a neighbouring bag are
    merged away; components are joined by arbitrary tree edges.
    """
    n = g.n
    if n == 0:
        return TreeDecomposition({1: frozenset()}, [])
    rank = list(range(n))
    if seed:
        random.Random(seed).shuffle(rank)
    nbrs = [set(a) for a in g.adj]
    alive = set(range(n))

    def fill(v: int) -> int:
        ns = list(nbrs[v])
        missing = 0
        for i, a in enumerate(ns):
            na = nbrs[a]
            for b in ns[i + 1:]:
                if b not in na:
                    missing += 1
        return missing

    scores = {v: fill(v) for v in range(n)}
    position = {}
    bag_of = {}
    order = []
    while alive:
        v = min(alive, key=lambda u: (scores[u], len(nbrs[u]), rank[u]))
        later = nbrs[v]
        bag_of[v] = frozenset(later | {v})
        position[v] = len(order)
        order.append(v)
        alive.discard(v)
        touched = set(later)
        ls = list(later)
        for i, a in enumerate(ls):
            for b in ls[i + 1:]:
                if b not in nbrs[a]:
                    nbrs[a].add(b)
                    nbrs[b].add(a)
        for a in ls:
            nbrs[a].discard(v)
            touched |= nbrs[a]
        touched &= alive
        for u in touched:
            scores[u] = fill(u)

    # parent of v's bag: the earliest-eliminated of its later neighbours
    parent = {}
    roots = []
    for v in order:
        later = bag_of[v] - {v}
        if later:
            parent[v] = min(later, key=position.__getitem__)
        else:
            roots.append(v)
    for a, b in zip(roots, roots[1:]):
        parent[a] = b

    bags = {v: bag_of[v] for v in order}
    adj: dict[int, set[int]] = {v: set() for v in order}
    for c, p in parent.items():
        adj[c].add(p)
        adj[p].add(c)
    # contract bags that are subsets of a neighbour
    changed = True
    while changed:
        changed = False
        for t in sorted(bags, key=position.__getitem__):
            if t not in bags:
                continue
            sup = next((u for u in sorted(adj[t], key=position.__getitem__)
                        if bags[t] <= bags[u]), None)
            if sup is None:
                continue
            for u in adj[t]:
                adj[u].discard(t)
                if u != sup:
                    adj[u].add(sup)
                    adj[sup].add(u)
            del adj[t], bags[t]
            changed = True
    ids = {t: i + 1 for i, t in enumerate(sorted(bags, key=position.__getitem__))}
    edges = sorted({tuple(sorted((ids[a], ids[b]))) for a in adj for b in adj[a]})
    return TreeDecomposition({ids[t]: bags[t] for t in bags}, edges)


def single_bag_td(g: Graph) -> TreeDecomposition:
    return TreeDecomposition({1: frozenset(range(g.n))}, [])
