"""Matching-style clustering baseline for benchmark comparison.

Each round computes ``d_h`` between all active vertices, takes a greedy
maximal matching (cheapest pair first), and for every matched pair keeps the
lower id, deactivates the higher id, and adds the connecting path. This is a
deliberate simplification of exact min-weight max-cardinality matching.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, MatchingStall
from .graph import Graph, SpanningTree, bfs_tree, check_spanning_tree
from .hopdist import INF, HopPathTable, hop_bellman_ford, reconstruct_path
from .sampler import _require_feasible


@dataclass
class AuxiliaryGraph:
    vertices: tuple[int, ...]
    dist: dict[tuple[int, int], float]  # keyed by (u, v) with u < v
    tables: dict[int, HopPathTable] | None = None

    def d(self, u: int, v: int) -> float:
        if u == v:
            return 0.0
        return self.dist[(u, v) if u < v else (v, u)]


def build_auxiliary(g: Graph, active, h: int) -> AuxiliaryGraph:
    verts = tuple(sorted(active))
    tables = {u: hop_bellman_ford(g, u, h) for u in verts}
    dist = {}
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            dist[(u, v)] = tables[u].dist[v]
    return AuxiliaryGraph(verts, dist, tables)


def greedy_matching_round(aux: AuxiliaryGraph) -> list[tuple[int, int]]:
    """Repeatedly take the cheapest finite pair of unmatched vertices."""
    if len(aux.vertices) < 2:
        raise InputError("matching needs at least two active vertices")
    pairs = sorted(
        (d, u, v) for (u, v), d in aux.dist.items()
        if d != INF and u in aux.vertices and v in aux.vertices
    )
    if not pairs:
        raise MatchingStall("no pair of active vertices is within h hops")
    matched: set[int] = set()
    out = []
    for _, u, v in pairs:
        if u not in matched and v not in matched:
            matched.update((u, v))
            out.append((u, v))
    return out


def solve_matching_baseline(g: Graph, h: int) -> tuple[SpanningTree, int]:
    """Return the baseline tree and the number of matching rounds used."""
    _require_feasible(g, h)
    active = list(range(g.n))
    union: set[tuple[int, int]] = set()
    rounds = 0
    while len(active) > 1:
        rounds += 1
        aux = build_auxiliary(g, active, h)
        matching = greedy_matching_round(aux)
        removed = set()
        for u, v in matching:
            for a, b, _ in reconstruct_path(aux.tables[u], v):
                union.add((a, b) if a < b else (b, a))
            removed.add(max(u, v))
        active = [v for v in active if v not in removed]
    tree = bfs_tree(g, union, active[0])
    check_spanning_tree(g, tree)
    return tree, rounds
