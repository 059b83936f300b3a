"""Simple undirected graphs and PACE ``.gr`` I/O.

Vertices are the dense integers ``0..n-1``; files use ``1..n``.  Besides the
neighbour sets every graph carries one bitmask per vertex, which is what the
clique and partition code actually iterates over.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class GraphFormatError(ValueError):
    """Raised for malformed ``.gr`` input; the message names the line."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "m", "adj", "masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in nbrs)
        self.masks: tuple[int, ...] = tuple(to_mask(s) for s in nbrs)
        self.m = sum(len(s) for s in nbrs) // 2

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        m = to_mask(vs)
        return all((self.masks[v] | (1 << v)) & m == m for v in vs)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = 0
        out = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.masks[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(list(bits(comp)))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.n, self.masks))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def parse_gr(text: str | bytes) -> Graph:
    """Parse a PACE 2017 ``.gr`` document.

    Duplicate edges and both orientations of an edge collapse to one edge.
    Self-loops, out-of-range endpoints and missing or repeated headers raise
    :class:`GraphFormatError`.
    """
    if isinstance(text, bytes):
        text = text.decode()
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: second header {raw!r}")
            if len(parts) != 4 or parts[1] != "tw":
                raise GraphFormatError(f"line {lineno}: malformed header {raw!r}")
            try:
                n, _ = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: malformed header {raw!r}") from None
            if n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
            continue
        if n is None:
            raise GraphFormatError(f"line {lineno}: edge before header {raw!r}")
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two endpoints, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer endpoint {raw!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"line {lineno}: vertex out of range 1..{n} in {raw!r}")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop {raw!r}")
        edges.append((u - 1, v - 1))
    if n is None:
        raise GraphFormatError("missing 'p tw' header")
    return Graph(n, edges)


def write_gr(g: Graph) -> str:
    lines = [f"p tw {g.n} {g.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``s``.

    Returns the subgraph and ``old``, where ``old[i]`` is the original id of
    new vertex ``i``.  New ids follow ascending original order.
    """
    old = sorted(set(s))
    for v in old:
        if not 0 <= v < g.n:
            raise ValueError(f"unknown vertex {v}")
    new = {v: i for i, v in enumerate(old)}
    edges = [(new[u], new[v]) for u in old for v in g.adj[u] if v in new and u < v]
    return Graph(len(old), edges), old


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    edges = []
    for u in range(g.n):
        missing = full & ~g.masks[u] & ~((1 << (u + 1)) - 1)
        edges.extend((u, v) for v in bits(missing))
    return Graph(g.n, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)
