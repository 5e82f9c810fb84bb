import json

import pytest
from hypothesis import given, settings, strategies as st

from clustergal.exactpoly import LaurentPoly
from clustergal.exgraph import BudgetExceeded, IncompleteGraph, enumerate_graph, enumerate_or_raise
from clustergal.seedcore import Seed
from clustergal.suite import catalan


def type_a(k):
    return [[(j == i + 1) - (j == i - 1) for j in range(k)] for i in range(k)]


A3 = type_a(3)
MARKOV = [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_type_a_counts(k):
    g = enumerate_graph(Seed.initial(type_a(k)))
    assert g.complete
    assert len(g.nodes) == catalan(k + 1)
    assert len(g.variables) == k * (k + 3) // 2


@pytest.mark.parametrize("B,nodes,variables", [([[0, 2], [-1, 0]], 6, 6), ([[0, 3], [-1, 0]], 8, 8)])
def test_rank_two_finite_types(B, nodes, variables):
    g = enumerate_graph(Seed.initial(B))
    assert (len(g.nodes), len(g.variables)) == (nodes, variables)


def test_markov_exhausts_budget():
    g = enumerate_graph(Seed.initial(MARKOV), 500)
    assert not g.complete and len(g.nodes) == 500
    with pytest.raises(BudgetExceeded) as info:
        g.require_complete()
    assert info.value.graph is g
    with pytest.raises(BudgetExceeded):
        enumerate_or_raise(Seed.initial(MARKOV), 20)
    with pytest.raises(IncompleteGraph):
        g.variable_set()


def test_regular_and_involutive_edges():
    g = enumerate_graph(Seed.initial(type_a(4)))
    for node in g.nodes:
        assert sum((node.id, v) in g.edges for v in node.vars[:g.n]) == g.n
    for (a, v), (b, w) in g.edges.items():
        assert g.edges[(b, w)] == (a, v)


def test_variable_index_injective():
    g = enumerate_graph(Seed.initial(A3))
    assert len(set(g.variables)) == len(g.variables)
    assert len(g.variable_set()) == 9


@given(st.permutations(range(4)))
@settings(max_examples=10)
def test_shuffled_order_same_graph(order):
    base = enumerate_graph(Seed.initial(type_a(4)))
    g = enumerate_graph(Seed.initial(type_a(4)), order=order)
    assert g.canonical_form() == base.canonical_form()


def test_rank_zero_seed():
    g = enumerate_graph(Seed.initial([[], []], 0, ["y1", "y2"]))
    assert len(g.nodes) == 1 and g.frozen_ids == [0, 1] and g.exchange_ids == []


def test_frozen_variables_are_shared():
    g = enumerate_graph(Seed.initial([[0, 1], [-1, 0], [1, 0]], 2))
    assert g.frozen_ids == [2]
    assert all(2 in node.vars for node in g.nodes)


def test_reroot_expands_back():
    g = enumerate_graph(Seed.initial(A3))
    for node in g.nodes:
        for i, v in enumerate(node.vars):
            assert g.expand_in_node(g.variables[v], node.id) == LaurentPoly.variable(3, i)


def test_compatibility_degrees_a2():
    g = enumerate_graph(Seed.initial([[0, 1], [-1, 0]]))
    for a in range(5):
        assert g.compatibility_degree(a, a) == -1
        for b in range(5):
            if a != b:
                assert (g.compatibility_degree(a, b) == 0) == g.compatible(a, b)


def test_exports():
    g = enumerate_graph(Seed.initial([[0, 1], [-1, 0]]))
    dot = g.to_dot()
    assert dot.startswith("graph exchange {") and dot.count(" -- ") == 5
    data = json.loads(g.dumps())
    assert len(data["nodes"]) == 5 and data["complete"]
    assert g.dumps() == enumerate_graph(Seed.initial([[0, 1], [-1, 0]])).dumps()
