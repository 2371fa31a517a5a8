import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from pclab.closure import (
    HopOrLasso,
    closure,
    closure_with_witness,
    decreasing_path_bound,
    descendants,
    find_hop_or_lasso,
    is_closed,
    resolution_closure,
)
from pclab.graphs import Graph, VertexOrder, greedy_colouring


@st.composite
def ordered_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=12)) if pairs else []
    seq = draw(st.permutations(range(n)))
    U = draw(st.frozensets(st.integers(0, n - 1), max_size=min(n, 4)))
    return Graph(n, edges), VertexOrder.from_sequence(seq), U


def test_descendants_on_a_path():
    G = Graph.path(5)
    order = VertexOrder.identity(5)
    assert descendants(G, order, [3]) == {0, 1, 2, 3}
    assert descendants(G, VertexOrder.from_sequence([4, 3, 2, 1, 0]), [3]) == {3, 4}
    assert descendants(G, order, []) == frozenset()


def test_hop_kinds():
    # 2-hop through one outside vertex
    G = Graph.path(3)
    q = find_hop_or_lasso(G, {0, 2})
    assert q == HopOrLasso("hop", 2, (0, 1, 2)) and q.is_valid(G, {0, 2})
    # a triangle hanging off a single vertex is a 3-hop cycle
    T = Graph(3, [(0, 1), (1, 2), (2, 0)])
    q = find_hop_or_lasso(T, {0})
    assert q.kind == "hop" and q.length == 3 and q.vertices[0] == q.vertices[-1] == 0
    # a pendant triangle at distance one is a lasso
    L = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 1)])
    q = find_hop_or_lasso(L, {0})
    assert q.kind == "lasso" and q.vertices[1] == q.vertices[-1] and q.is_valid(L, {0})
    # a plain pendant path needs nothing
    assert find_hop_or_lasso(Graph.path(4), {0}) is None


def test_invalid_hops_are_rejected():
    G = Graph.path(3)
    assert not HopOrLasso("hop", 2, (0, 2, 1)).is_valid(G, {0, 1})
    assert not HopOrLasso("hop", 2, (0, 1, 2)).is_valid(G, {0, 1, 2})
    assert not HopOrLasso("cycle", 2, (0, 1, 2)).is_valid(G, {0, 2})


def test_closure_of_a_four_cycle():
    G = Graph.cycle(4)
    order = VertexOrder.identity(4)
    assert closure(G, order, [0, 2]) == {0, 1, 2, 3}
    assert closure(G, order, []) == frozenset()
    assert is_closed(G, order, closure(G, order, [3]))


@settings(max_examples=150, deadline=None)
@given(ordered_graphs())
def test_closure_is_the_unique_minimal_closed_superset(data):
    G, order, U = data
    W = closure(G, order, U)
    minimal = oracles.brute_minimal_closed_supersets(G.n, G.edges, order.rank, U)
    assert minimal == [W]


@settings(max_examples=150, deadline=None)
@given(ordered_graphs())
def test_witness_trace(data):
    G, order, U = data
    trace = closure_with_witness(G, order, U)
    assert trace.closure == closure(G, order, U)
    assert descendants(G, order, trace.witness) == trace.closure
    assert U <= trace.witness <= trace.closure
    current = descendants(G, order, U)
    for q in trace.steps:
        assert q.is_valid(G, current)
        current = descendants(G, order, current | q.vertex_set)
    assert current == trace.closure


@settings(max_examples=100, deadline=None)
@given(ordered_graphs())
def test_closure_is_monotone_and_idempotent(data):
    G, order, U = data
    W = closure(G, order, U)
    assert closure(G, order, W) == W
    for v in range(G.n):
        assert W <= closure(G, order, U | {v})


@settings(max_examples=100, deadline=None)
@given(ordered_graphs())
def test_hop_detection_matches_brute_force(data):
    G, _, U = data
    assert (find_hop_or_lasso(G, U) is not None) == oracles.brute_has_hop_or_lasso(G.n, G.edges, U)


@settings(max_examples=100, deadline=None)
@given(ordered_graphs())
def test_resolution_closure_matches_brute_force(data):
    G, _, U = data
    assert oracles.brute_resolution_closure(G.n, G.edges, U) == [resolution_closure(G, U)]


def test_resolution_closure_shrinks_as_the_graph_loses_edges():
    rng = np.random.default_rng(2)
    for _ in range(50):
        edges = oracles.random_graph(rng, 9, 0.35)
        G = Graph(9, edges)
        U = {int(v) for v in rng.choice(9, 2, replace=False)}
        full = resolution_closure(G, U)
        for drop in range(len(edges)):
            H = Graph(9, edges[:drop] + edges[drop + 1 :])
            assert resolution_closure(H, U) <= full


def test_decreasing_path_bound():
    G = Graph.path(5)
    assert decreasing_path_bound(G, VertexOrder.identity(5)) == 5
    assert decreasing_path_bound(G, VertexOrder.from_sequence([0, 2, 4, 1, 3])) == 2
    assert decreasing_path_bound(G, VertexOrder.identity(5), avoid=[2]) == 2
    # ordering by a proper colouring bounds decreasing paths by the colour count
    rng = np.random.default_rng(8)
    for _ in range(40):
        G = Graph(10, oracles.random_graph(rng, 10, 0.3))
        col = greedy_colouring(G)
        seq = sorted(range(10), key=lambda v: (col[v], v))
        assert decreasing_path_bound(G, VertexOrder.from_sequence(seq)) <= max(col.values())


def test_json():
    trace = closure_with_witness(Graph.cycle(4), VertexOrder.identity(4), [0, 2])
    data = trace.to_json()
    assert data["closure"] == [0, 1, 2, 3] and data["steps"][0]["kind"] == "hop"
