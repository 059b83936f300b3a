"""Two-phase computation: fixed tree decomposition, then one clique partition per bag.

Also holds the JSON report and CSV summary formats.
"""

from __future__ import annotations

import csv
import io
import json
import threading
import time
from dataclasses import dataclass, field
from typing import Iterable

from .cliques import EnumerationTruncated
from .exact import Bounds, Status, solve_bb
from .graph import Graph, induced_subgraph
from .heuristics import (CoverTimeout, greedy_clique_partition, mc_heuristic,
                         rmc_heuristic, sc_heuristic, wsc_heuristic)
from .partition import CliquePartition, PartitionedDecomposition
from .treedecomp import TreeDecomposition, validate_td

SOLVERS = ("mc", "rmc", "sc", "wsc", "bb")
SUMMARY_FIELDS = ("graph", "solver", "width", "cp_width_log2", "total_time_ms", "partial")


class InvalidDecomposition(ValueError):
    pass


class MonotoneMax:
    """Thread-safe running maximum; readers may see a stale (smaller) value."""

    def __init__(self):
        self._lock = threading.Lock()
        self._value: int | None = None

    def get(self) -> int | None:
        return self._value

    def offer(self, x: int) -> None:
        with self._lock:
            if self._value is None or x > self._value:
                self._value = x


@dataclass
class BagRecord:
    id: int
    size: int
    partition: CliquePartition  # original vertex ids
    status: str
    time_ms: int
    fallback: bool = False
    stats: dict = field(default_factory=dict)

    @property
    def product(self) -> int:
        return self.partition.product_weight

    @property
    def log2(self) -> float:
        return self.partition.log_weight


@dataclass
class CptwResult:
    pd: PartitionedDecomposition
    records: list[BagRecord]
    solver: str
    partial: bool
    total_time_ms: int
    bounds: str = "sv"
    sufficient_weight: bool = True

    @property
    def cp_width(self) -> float:
        return self.pd.cp_width

    @property
    def cp_width_product(self) -> int:
        return self.pd.cp_width_product


def _default_clique_limit(bag_limit: float | None) -> int:
    if bag_limit is None:
        return 1_000_000
    return min(1_000_000, max(10_000, int(10_000 * bag_limit)))


def solve_bag(sub: Graph, solver: str, deadline: float | None = None,
              threshold: int | None = None, bounds: Bounds = "sv",
              clique_limit: int | None = None) -> tuple[CliquePartition, str, bool, dict]:
    """Run one solver on a bag's induced subgraph.

    Returns ``(partition, status, fallback, stats)``; the partition is always
    a valid clique partition of ``sub``.
    """
    try:
        if solver == "mc":
            return mc_heuristic(sub, clique_limit), "heuristic", False, {}
        if solver == "rmc":
            return rmc_heuristic(sub, clique_limit), "heuristic", False, {}
        if solver in ("sc", "wsc"):
            fn = sc_heuristic if solver == "sc" else wsc_heuristic
            try:
                return fn(sub, deadline, clique_limit), "heuristic", False, {}
            except CoverTimeout as exc:
                return exc.partition, str(Status.TIMEOUT), False, {}
        if solver == "bb":
            out = solve_bb(sub, accept_threshold=threshold, deadline=deadline,
                           bounds=bounds, clique_limit=clique_limit)
            stats = out.stats.as_dict()
            stats.pop("time_s")
            if out.partition is None:
                return mc_heuristic(sub, clique_limit), "timeout-fallback", True, stats
            return out.partition, str(out.status), False, stats
    except EnumerationTruncated:
        return greedy_clique_partition(sub), "truncated-fallback", True, {}
    raise ValueError(f"unknown solver {solver!r}; expected one of {', '.join(SOLVERS)}")


def solve_decomposition(
    g: Graph,
    td: TreeDecomposition,
    solver: str = "bb",
    bag_limit: float | None = 180.0,
    total_limit: float | None = 300.0,
    use_sufficient_weight: bool = True,
    bounds: Bounds = "sv",
    clique_limit: int | None = None,
    timing: bool = True,
) -> CptwResult:
    """Partition every bag of ``td`` with ``solver`` and collect the results.

    Bags are handled largest first.  With ``use_sufficient_weight`` the
    branch-and-bound solver accepts any partition no heavier than the
    heaviest bag finished so far.  Once ``total_limit`` has passed, the
    remaining bags get the MC heuristic and the result is marked partial;
    a bag that times out on its own limit also marks the result partial.
    ``timing=False`` records every time as 0 so reports are reproducible.
    """
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}; expected one of {', '.join(SOLVERS)}")
    problems = validate_td(g, td)
    if problems:
        raise InvalidDecomposition("; ".join(str(p) for p in problems[:5]))
    if clique_limit is None:
        clique_limit = _default_clique_limit(bag_limit)
    start = time.monotonic()
    total_deadline = None if total_limit is None else start + total_limit
    heaviest = MonotoneMax()
    records = []
    partial = False
    for t in sorted(td.bags, key=lambda t: (-len(td.bags[t]), t)):
        sub, old = induced_subgraph(g, td.bags[t])
        t0 = time.monotonic()
        if total_deadline is not None and t0 >= total_deadline:
            try:
                part, status, fallback, stats = mc_heuristic(sub, clique_limit), "skipped-fallback", True, {}
            except EnumerationTruncated:
                part, status, fallback, stats = greedy_clique_partition(sub), "skipped-fallback", True, {}
        else:
            deadline = None if bag_limit is None else t0 + bag_limit
            if total_deadline is not None:
                deadline = total_deadline if deadline is None else min(deadline, total_deadline)
            threshold = heaviest.get() if use_sufficient_weight else None
            part, status, fallback, stats = solve_bag(sub, solver, deadline, threshold, bounds, clique_limit)
        if status.startswith("timeout") or status == "skipped-fallback":
            partial = True
        part = part.relabel(old)
        heaviest.offer(part.product_weight)
        elapsed = round(1000 * (time.monotonic() - t0)) if timing else 0
        records.append(BagRecord(t, len(td.bags[t]), part, status, elapsed, fallback, stats))
    pd = PartitionedDecomposition(td, {r.id: r.partition for r in records})
    total_ms = round(1000 * (time.monotonic() - start)) if timing else 0
    return CptwResult(pd, records, solver, partial, total_ms, bounds, use_sufficient_weight)


def cptw_report(result: CptwResult, g: Graph, name: str = "graph", source: str = "min-fill-in") -> dict:
    """Report document for a run; vertex ids in ``classes`` are 1-indexed."""
    td = result.pd.td
    bags = []
    for r in sorted(result.records, key=lambda r: r.id):
        bags.append({
            "id": r.id,
            "size": r.size,
            "product": str(r.product),
            "log2": r.log2,
            "status": r.status,
            "time_ms": r.time_ms,
            "fallback": r.fallback,
            "stats": r.stats,
            "classes": [[v + 1 for v in c] for c in r.partition.classes],
        })
    return {
        "graph": {"name": name, "n": g.n, "m": g.m},
        "decomposition": {
            "bags": len(td.bags),
            "width": td.width,
            "source": source,
            "tree_edges": [list(e) for e in td.edges],
        },
        "solver": result.solver,
        "bounds": result.bounds,
        "sufficient_weight": result.sufficient_weight,
        "cp_width_log2": result.cp_width,
        "cp_width_product": str(result.cp_width_product),
        "partial": result.partial,
        "total_time_ms": result.total_time_ms,
        "bags": bags,
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def load_report(text: str) -> dict:
    return json.loads(text)


def decomposition_from_report(report: dict) -> PartitionedDecomposition:
    """Rebuild the partitioned decomposition (0-indexed vertices) from a report."""
    bags, parts = {}, {}
    for b in report["bags"]:
        classes = [[v - 1 for v in c] for c in b["classes"]]
        bags[b["id"]] = frozenset(v for c in classes for v in c)
        parts[b["id"]] = CliquePartition(classes)
    edges = [tuple(e) for e in report["decomposition"].get("tree_edges", [])]
    return PartitionedDecomposition(TreeDecomposition(bags, edges), parts)


def summary_row(report: dict) -> dict:
    return {
        "graph": report["graph"]["name"],
        "solver": report["solver"],
        "width": report["decomposition"]["width"],
        "cp_width_log2": report["cp_width_log2"],
        "total_time_ms": report["total_time_ms"],
        "partial": report["partial"],
    }


def summary_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SUMMARY_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: row[k] for k in SUMMARY_FIELDS})
    return buf.getvalue()
