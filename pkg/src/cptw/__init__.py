"""Upper bounds on clique-partitioned treewidth.

A tree decomposition is computed (or read) first; every bag then receives a
clique partition of low product weight, and the heaviest bag gives the bound.
"""

from .cliques import CliqueSet, EnumerationTruncated, degeneracy_ordering, maximal_cliques
from .exact import SolverOutcome, Status, brute_force, size_lb, solve_bb, valuable_sequence
from .generators import gen_coloring_gadget, gen_gh_graph, gen_random_graph, gen_sc_counterexample
from .graph import Graph, GraphFormatError, complement, induced_subgraph, parse_gr, write_gr
from .heuristics import mc_heuristic, resolve_overlaps, rmc_heuristic, sc_heuristic, wsc_heuristic
from .mis import NiceDecomposition, max_independent_set, to_nice
from .partition import CliquePartition, PartitionedDecomposition, product_weight, validate_partition
from .pipeline import CptwResult, cptw_report, solve_decomposition
from .setcover import SetCoverInstance, greedy_cover, solve_cover
from .treedecomp import TreeDecomposition, min_fill_in_td, parse_td, validate_td, write_td

__version__ = "0.1.0"
