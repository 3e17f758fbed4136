import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopmst.errors import InputError
from hopmst.graph import Graph, generate
from hopmst.hopdist import hop_bellman_ford, nearest_in_set, path_weight, reconstruct_path

from .conftest import brute_hop_dist, path_graph, small_graphs, triangle

INF = math.inf


def test_path_h1():
    assert hop_bellman_ford(path_graph(3), 0, 1).dist == (0.0, 1.0, INF)


def test_triangle_hop_bound_matters():
    g = triangle()
    # brute-force values: h=1 only the direct edge, h=2 also 0-1-2
    assert brute_hop_dist(g, 0, 2, 1) == 5
    assert brute_hop_dist(g, 0, 2, 2) == 2
    assert hop_bellman_ford(g, 0, 1).dist[2] == 5
    assert hop_bellman_ford(g, 0, 2).dist[2] == 2


def test_source_distance_zero():
    g = generate("gnp", 15, {"p": 0.3, "weights": "int"}, seed=2)
    for s in range(g.n):
        assert hop_bellman_ford(g, s, 3).dist[s] == 0


def test_reconstruct_examples():
    g = triangle()
    table = hop_bellman_ford(g, 0, 2)
    assert reconstruct_path(table, 0) == []
    assert reconstruct_path(table, 2) == [(0, 1, 1.0), (1, 2, 1.0)]
    star = generate("star", 6)
    assert reconstruct_path(hop_bellman_ford(star, 0, 1), 4) == [(0, 4, 1.0)]


def test_reconstruct_unreachable():
    with pytest.raises(InputError):
        reconstruct_path(hop_bellman_ford(path_graph(4), 0, 1), 3)


def test_nearest_in_set_examples():
    g = path_graph(4)
    table = nearest_in_set(g, {0, 3}, 2)
    assert table.nearest(1) == (0, 1.0, [(0, 1, 1.0)])
    assert table.nearest(2) == (3, 1.0, [(3, 2, 1.0)])
    assert table.nearest(0) == (0, 0.0, [])
    tri = nearest_in_set(triangle(), {2}, 1)
    assert tri.nearest(0) == (2, 5.0, [(2, 0, 5.0)])


def test_nearest_ties_go_to_lowest_source():
    g = path_graph(3)
    assert nearest_in_set(g, {0, 2}, 2).origin[1] == 0


def test_zero_weight_cycle_shortcut():
    # 0-1-2-0 triangle of zero weights plus a pendant 2-3
    g = Graph.from_edges(4, [(0, 1, 0), (1, 2, 0), (0, 2, 0), (2, 3, 1)])
    table = hop_bellman_ford(g, 0, 3)
    for v in range(4):
        p = reconstruct_path(table, v)
        verts = [0] + [b for _, b, _ in p]
        assert len(verts) == len(set(verts))
        assert path_weight(p) == table.dist[v]


def _check_path(table, v):
    p = reconstruct_path(table, v)
    assert len(p) <= table.h
    assert path_weight(p) == table.dist[v]
    if p:
        assert p[0][0] == table.origin[v] and p[-1][1] == v
        for (a, b, _), (c, _, _) in zip(p, p[1:]):
            assert b == c


@settings(max_examples=80, deadline=None)
@given(small_graphs(max_n=7), st.data())
def test_matches_brute_force(g, data):
    h = data.draw(st.integers(1, g.n))
    s = data.draw(st.integers(0, g.n - 1))
    table = hop_bellman_ford(g, s, h)
    for t in range(g.n):
        assert table.dist[t] == brute_hop_dist(g, s, t, h)
        if table.reachable(t):
            _check_path(table, t)


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=10), st.data())
def test_symmetry_and_monotonicity(g, data):
    h = data.draw(st.integers(1, g.n))
    rows = [hop_bellman_ford(g, s, h).dist for s in range(g.n)]
    for s in range(g.n):
        for t in range(g.n):
            assert rows[s][t] == rows[t][s]
    if h > 1:
        lower = [hop_bellman_ford(g, s, h - 1).dist for s in range(g.n)]
        for s in range(g.n):
            for t in range(g.n):
                assert rows[s][t] <= lower[s][t]


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=10), st.data())
def test_multi_source_consistency(g, data):
    h = data.draw(st.integers(1, g.n))
    sources = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    multi = nearest_in_set(g, sources, h)
    singles = {s: hop_bellman_ford(g, s, h).dist for s in sources}
    for u in range(g.n):
        best = min(singles[s][u] for s in sources)
        assert multi.dist[u] == best
        if best != INF:
            assert multi.origin[u] == min(s for s in sources if singles[s][u] == best)
            _check_path(multi, u)


@settings(max_examples=30, deadline=None)
@given(small_graphs(max_n=9), st.data())
def test_hop_triangle_inequality(g, data):
    h1 = data.draw(st.integers(1, 4))
    h2 = data.draw(st.integers(1, 4))
    s, m, t = (data.draw(st.integers(0, g.n - 1)) for _ in range(3))
    lhs = hop_bellman_ford(g, s, h1 + h2).dist[t]
    rhs = hop_bellman_ford(g, s, h1).dist[m] + hop_bellman_ford(g, m, h2).dist[t]
    assert lhs <= rhs


def test_bad_arguments():
    g = path_graph(3)
    with pytest.raises(InputError):
        hop_bellman_ford(g, 0, 0)
    with pytest.raises(InputError):
        nearest_in_set(g, set(), 2)
