import itertools
from collections import deque

import pytest
from hypothesis import strategies as st

from hopmst.graph import Graph, generate, load_graph


def triangle() -> Graph:
    return load_graph("p 3 3\ne 0 1 1\ne 1 2 1\ne 0 2 5\n")


def path_graph(n: int, w: float = 1.0) -> Graph:
    return Graph.from_edges(n, [(i, i + 1, w) for i in range(n - 1)])


def complete_unit(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v, 1.0) for u in range(n) for v in range(u + 1, n)])


def path_plus_chord() -> Graph:
    """Path 0-1-2-3-4 of unit edges plus a heavy chord (0, 4)."""
    return Graph.from_edges(5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 10)])


def brute_hop_dist(g: Graph, s: int, t: int, h: int) -> float:
    """Minimum weight over simple s-t paths with at most h edges, by DFS enumeration."""
    best = float("inf")

    def dfs(v, seen, weight, hops):
        nonlocal best
        if v == t:
            best = min(best, weight)
            return
        if hops == h:
            return
        for u, w in g.adjacency[v]:
            if u not in seen:
                seen.add(u)
                dfs(u, seen, weight + w, hops + 1)
                seen.remove(u)

    dfs(s, {s}, 0.0, 0)
    return best


def all_pairs_tree_diameter(n: int, edges) -> int:
    adj = [[] for _ in range(n)]
    for u, v, *_ in edges:
        adj[u].append(v)
        adj[v].append(u)
    best = 0
    for s in range(n):
        dist = {s: 0}
        q = deque([s])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        best = max(best, max(dist.values()))
    return best


def enumerate_spanning_trees(g: Graph):
    """Every (n-1)-edge acyclic subset; plain combinations, no pruning."""
    n = g.n
    for subset in itertools.combinations(g.edges, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for u, v, _ in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            yield subset


@st.composite
def small_graphs(draw, min_n=2, max_n=8, weights="int"):
    n = draw(st.integers(min_n, max_n))
    p = draw(st.sampled_from([0.3, 0.5, 0.8, 1.0]))
    seed = draw(st.integers(0, 2**32 - 1))
    return generate("gnp", n, {"p": p, "weights": weights, "wmax": 20, "max_retries": 1000}, seed)


@pytest.fixture
def tri():
    return triangle()


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
