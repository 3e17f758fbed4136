"""Hop-constrained distances by layered Bellman-Ford.

``d_h(s, t)`` is the minimum weight over s-t paths with at most ``h`` edges.
Unreachable entries hold ``math.inf`` and are never used in arithmetic.

Ties are resolved deterministically: smaller distance, then lower source id,
then keeping the previous layer's entry (fewer hops), then the lowest
predecessor id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError
from .graph import Edge, Graph

INF = math.inf


@dataclass(frozen=True)
class HopPathTable:
    """Result of a (multi-)source sweep.

    ``steps[i][v]`` is the predecessor of ``v`` on its best path with at most
    ``i + 1`` edges, or ``v`` itself when that path has at most ``i`` edges.
    The sweep stops once a layer changes nothing, since all later layers
    would be identical.
    """

    graph: Graph
    sources: tuple[int, ...]
    h: int
    dist: tuple[float, ...]
    origin: tuple[int, ...]
    steps: tuple[tuple[int, ...], ...]

    @property
    def source(self) -> int:
        if len(self.sources) != 1:
            raise ValueError("table was built from several sources")
        return self.sources[0]

    def reachable(self, v: int) -> bool:
        return self.dist[v] != INF

    def nearest(self, u: int) -> tuple[int, float, list[Edge]]:
        """(nearest source, d_h, path from that source to ``u``)."""
        return self.origin[u], self.dist[u], reconstruct_path(self, u)


def _sweep(g: Graph, sources, h: int) -> HopPathTable:
    if h < 1:
        raise InputError("hop bound h must be >= 1")
    srcs = tuple(sorted(set(sources)))
    if not srcs:
        raise InputError("need at least one source")
    n = g.n
    for s in srcs:
        if not 0 <= s < n:
            raise InputError(f"source {s} out of range")
    adj = g.adjacency
    dist = [INF] * n
    origin = [-1] * n
    for s in srcs:
        dist[s] = 0.0
        origin[s] = s
    steps = []
    for _ in range(h):
        nd = dist[:]
        no = origin[:]
        step = list(range(n))
        changed = False
        for v in range(n):
            bd, bo = dist[v], origin[v]
            bp = v
            for u, w in adj[v]:
                du = dist[u]
                if du == INF:
                    continue
                cand = du + w
                if cand < bd or (cand == bd and origin[u] < bo):
                    bd, bo, bp = cand, origin[u], u
            if bp != v:
                nd[v], no[v], step[v] = bd, bo, bp
                changed = True
        if not changed:
            break
        steps.append(tuple(step))
        dist, origin = nd, no
    return HopPathTable(g, srcs, h, tuple(dist), tuple(origin), tuple(steps))


def hop_bellman_ford(g: Graph, source: int, h: int) -> HopPathTable:
    """Single-source table of ``d_h(source, .)``."""
    return _sweep(g, (source,), h)


def nearest_in_set(g: Graph, sources, h: int) -> HopPathTable:
    """One sweep from all ``sources`` at once.

    ``table.origin[u]`` is the source minimizing ``d_h(u, source)`` (lowest id
    on ties) and ``table.dist[u]`` that distance.
    """
    return _sweep(g, sources, h)


def reconstruct_path(table: HopPathTable, target: int) -> list[Edge]:
    """Edges of an optimal path from ``table.origin[target]`` to ``target``.

    The result has at most ``h`` edges and weighs exactly ``dist[target]``.
    A walk that revisits a vertex (only possible through zero-weight cycles)
    is shortcut to a simple path.
    """
    if not table.reachable(target):
        raise InputError(f"vertex {target} is not reachable within {table.h} hops")
    verts = [target]
    v = target
    for layer in range(len(table.steps) - 1, -1, -1):
        p = table.steps[layer][v]
        if p != v:
            verts.append(p)
            v = p
    verts.reverse()
    simple: list[int] = []
    index: dict[int, int] = {}
    for x in verts:
        if x in index:
            cut = index[x]
            for y in simple[cut + 1:]:
                del index[y]
            del simple[cut + 1:]
        else:
            index[x] = len(simple)
            simple.append(x)
    g = table.graph
    return [(a, b, g.weight(a, b)) for a, b in zip(simple, simple[1:])]


def path_weight(path) -> float:
    total = 0.0
    for _, _, w in path:
        total += w
    return total
