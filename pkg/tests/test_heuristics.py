import pytest
from hypothesis import given, settings

from conftest import graphs
from oracles import all_partitions_min
from cptw.cliques import maximal_cliques
from cptw.exact import brute_force
from cptw.generators import gen_random_graph, gen_sc_counterexample
from cptw.graph import Graph, complete_graph, cycle_graph
from cptw.heuristics import (CoverTimeout, greedy_clique_partition, mc_heuristic, resolve_overlaps,
                             rmc_heuristic, sc_heuristic, wsc_heuristic)
from cptw.partition import validate_partition

HEURISTICS = [mc_heuristic, rmc_heuristic, sc_heuristic, wsc_heuristic, greedy_clique_partition]


@pytest.mark.parametrize("h", HEURISTICS)
def test_k5(h):
    assert h(complete_graph(5)).product_weight == 6


def test_mc_examples():
    assert mc_heuristic(gen_sc_counterexample(10)).sizes == [10, 1, 1]
    c5 = mc_heuristic(cycle_graph(5))
    assert c5.sizes == [2, 2, 1] and c5.product_weight == 18
    assert all_partitions_min(cycle_graph(5)) == 18


def test_rmc_examples():
    tri_pendant = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert rmc_heuristic(tri_pendant).classes == ((0, 1, 2), (3,))
    assert rmc_heuristic(cycle_graph(5)).product_weight == 18


def test_resolve_overlaps_examples():
    g = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert resolve_overlaps(g, [[2, 3], [0, 1, 2]]).classes == ((0, 1, 2), (3,))
    assert resolve_overlaps(g, [[0, 1, 2], [3]]).classes == ((0, 1, 2), (3,))
    with pytest.raises(ValueError, match="misses"):
        resolve_overlaps(g, [[0, 1, 2]])
    with pytest.raises(ValueError, match="not a clique"):
        resolve_overlaps(g, [[0, 3], [1, 2]])


def test_resolve_overlaps_weighted_fixture():
    g = gen_sc_counterexample(variant="weighted")
    cover = [c for c in maximal_cliques(g).cliques if len(c) != 6]
    assert sorted(map(len, cover), reverse=True) == [5, 4, 4]
    part = resolve_overlaps(g, cover)
    assert part.sizes == [5, 3, 1] and part.product_weight == 48


def test_sc_examples(p3):
    part = sc_heuristic(gen_sc_counterexample(10))
    assert part.sizes == [6, 6] and part.product_weight == 49
    assert brute_force(gen_sc_counterexample(10)).product_weight == 44
    part = sc_heuristic(p3)
    assert part.classes == ((0, 1), (2,)) and part.product_weight == 6


def test_wsc_examples():
    part = wsc_heuristic(gen_sc_counterexample(variant="weighted"))
    assert part.sizes == [5, 3, 1] and part.product_weight == 48
    part = wsc_heuristic(gen_sc_counterexample(4))
    assert part.sizes == [3, 3] and part.product_weight == 16


def test_cover_timeout_carries_partition():
    g = gen_random_graph(40, 0.3, 5)
    with pytest.raises(CoverTimeout) as info:
        sc_heuristic(g, deadline=0.0)
    assert validate_partition(g, info.value.partition.classes) == []


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9))
def test_valid_and_never_below_optimum(g):
    opt = brute_force(g).product_weight
    for h in HEURISTICS:
        part = h(g)
        assert validate_partition(g, part.classes) == []
        assert part.product_weight >= opt


def test_disjoint_maximal_cliques_agree():
    g = Graph(9, [(0, 1), (0, 2), (1, 2), (3, 4), (5, 6), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8)])
    assert mc_heuristic(g) == rmc_heuristic(g)


@pytest.mark.parametrize("seed", range(10))
def test_rmc_first_class_is_maximum(seed):
    g = gen_random_graph(14, 0.5, seed)
    omega = max(len(c) for c in maximal_cliques(g).cliques)
    assert rmc_heuristic(g).sizes[0] == omega
