import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from cptw.graph import Graph, complete_graph
from cptw.partition import (CliquePartition, PartitionedDecomposition, log_weight, product_weight,
                            validate_partition)
from cptw.treedecomp import TreeDecomposition


def test_product_weight_examples():
    assert product_weight([3]) == 4
    assert product_weight([]) == 1
    assert product_weight([2, 2]) == 9
    assert product_weight([3, 1]) == 8


def test_partition_basics():
    p = CliquePartition([[4, 1], [0, 2, 3], []])
    assert p.classes == ((0, 2, 3), (1, 4))
    assert p.product_weight == 12
    assert p.log_weight == pytest.approx(math.log2(12), abs=1e-12)
    assert CliquePartition().product_weight == 1
    assert p.relabel([10, 11, 12, 13, 14]).classes == ((10, 12, 13), (11, 14))


def test_validate_examples(triangle, p3):
    assert validate_partition(triangle, [[0, 1, 2]]) == []
    assert [(v.kind, v.subject) for v in validate_partition(p3, [[0, 2], [1]])] == [("not-a-clique", (0, 2))]
    assert [(v.kind, v.subject) for v in validate_partition(p3, [[0, 1]])] == [("uncovered", 2)]
    assert [v.kind for v in validate_partition(p3, [[0, 1], [1, 2]])] == ["overlap"]


@given(st.integers(0, 40), st.integers(0, 40), st.integers(1, 40))
def test_weights_distribute(a, b, x):
    # a >= b, c = a - x >= d = b + x, so d > b
    assume(a >= b and a - x >= b + x)
    c, d = a - x, b + x
    assert product_weight([a, b]) < product_weight([c, d])


@st.composite
def dominating_pairs(draw):
    """Pairs (s, r): s comes from r by shifting single vertices into earlier, larger classes."""
    r = sorted(draw(st.lists(st.integers(1, 9), min_size=2, max_size=7)), reverse=True)
    s = list(r)
    # move single units from the tail of s to earlier positions; keeps sum and order
    for _ in range(draw(st.integers(1, 12))):
        j = max(i for i in range(len(s)) if s[i] > 0)
        i = draw(st.integers(0, max(j - 1, 0)))
        if i == j or (i > 0 and s[i] + 1 > s[i - 1]):
            continue
        s[i] += 1
        s[j] -= 1
    s = [v for v in s if v > 0]
    return s, r


@given(dominating_pairs())
def test_distribute_repeat(pair):
    s, r = pair
    assume(s != r and 2 <= len(s) <= len(r))
    assume(s == sorted(s, reverse=True) and sum(s) == sum(r))
    assume(all(s[i] >= r[i] for i in range(len(s) - 1)))
    assert product_weight(s) < product_weight(r)


@given(st.lists(st.integers(0, 60), max_size=30))
def test_log_weight_matches_product(sizes):
    lw = log_weight(sizes)
    assert lw == pytest.approx(math.log2(product_weight(sizes)), abs=1e-9)


def test_log_weight_beyond_float_range():
    p = CliquePartition([[i] for i in range(2000)])
    assert p.log_weight == pytest.approx(2000.0)
    assert p.product_weight == 2**2000


def test_partitioned_decomposition():
    g = Graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    td = TreeDecomposition({1: {0, 1, 2}, 2: {2, 3}}, [(1, 2)])
    pd = PartitionedDecomposition(td, {1: CliquePartition([[0, 1, 2]]), 2: CliquePartition([[2], [3]])})
    assert pd.cp_width_product == 4
    assert pd.cp_width == pytest.approx(2.0)
    assert pd.violations(g) == []
    pd.partitions.pop(2)
    assert [v.kind for v in pd.violations(g)] == ["missing-partition"]
    assert "edge-uncovered" in {v.kind for v in pd.violations(complete_graph(4))}
