"""Exact OPT_h on tiny graphs, and empirical ratio reports against it."""

from __future__ import annotations

import math
import statistics
from collections import deque
from dataclasses import dataclass

from .errors import InfeasibleError, InstanceTooLarge, InvariantViolation
from .graph import Graph, SpanningTree
from .sampler import SolveParams, solve

MAX_N = 10


@dataclass(frozen=True)
class OptResult:
    opt_weight: float
    witness: SpanningTree | None
    trees_enumerated: int

    @property
    def feasible(self) -> bool:
        return self.witness is not None


def mst_weight(g: Graph) -> float:
    """Kruskal over edges sorted by (w, u, v)."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total = 0.0
    used = 0
    for u, v, w in sorted(g.edges, key=lambda e: (e[2], e[0], e[1])):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            total += w
            used += 1
    if used != g.n - 1:
        raise InfeasibleError("graph is disconnected")
    return total


def _component_diameter(adj: list[list[int]], start: int) -> int:
    def far(src):
        dist = {src: 0}
        q = deque([src])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        node = max(dist, key=dist.get)
        return node, dist[node]

    a, _ = far(start)
    return far(a)[1]


def brute_force_opt(g: Graph, h: int, max_n: int = MAX_N) -> OptResult:
    """Minimum-weight spanning tree with hop diameter <= h, by exhaustive search.

    Edges are branched include-first in (u, v) order, which visits candidate
    trees in lexicographic order of their sorted edge lists; the first
    optimum found is therefore the lexicographically smallest one, and later
    branches only need to be strictly better.
    """
    n = g.n
    if n > max_n:
        raise InstanceTooLarge(f"brute force is capped at n <= {max_n}, got {n}")
    if n == 1:
        return OptResult(0.0, SpanningTree(0, (0,), (), 0.0, 0), 1)
    edges = list(g.edges)
    m = len(edges)
    need_total = n - 1
    # suffix_sorted[i]: weights of edges[i:], ascending, for a weight lower bound
    suffix_sorted = [sorted(e[2] for e in edges[i:]) for i in range(m + 1)]

    best_w = math.inf
    best_edges: list | None = None
    count = 0
    comp = list(range(n))
    adj: list[list[int]] = [[] for _ in range(n)]
    chosen: list = []

    def find(x):
        while comp[x] != x:
            x = comp[x]
        return x

    def rec(i: int, weight: float):
        nonlocal best_w, best_edges, count
        k = len(chosen)
        if k == need_total:
            count += 1
            if weight < best_w:
                best_w, best_edges = weight, list(chosen)
            return
        need = need_total - k
        if m - i < need:
            return
        lb = weight + sum(suffix_sorted[i][:need])
        if lb >= best_w:
            return
        u, v, w = edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            comp[ru] = rv
            adj[u].append(v)
            adj[v].append(u)
            chosen.append(edges[i])
            if _component_diameter(adj, u) <= h:
                rec(i + 1, weight + w)
            chosen.pop()
            adj[u].pop()
            adj[v].pop()
            comp[ru] = ru
        rec(i + 1, weight)

    rec(0, 0.0)
    if best_edges is None:
        return OptResult(math.inf, None, count)
    witness = SpanningTree.from_edges(g, best_edges, 0)
    if witness.hop_diameter > h or witness.total_weight != best_w:
        raise InvariantViolation("brute-force witness fails its own constraints")
    return OptResult(best_w, witness, count)


@dataclass
class RatioRow:
    seed: int
    total_weight: float
    ratio: float
    hop_diameter: int
    slack: float
    rounds_used: int


@dataclass
class RatioReport:
    opt_weight: float
    rows: list[RatioRow]

    @property
    def ratios(self) -> list[float]:
        return [r.ratio for r in self.rows]

    def summary(self) -> dict:
        rs = self.ratios
        return {
            "opt_weight": self.opt_weight,
            "runs": len(rs),
            "ratio_min": min(rs),
            "ratio_median": statistics.median(rs),
            "ratio_max": max(rs),
            "slack_max": max(r.slack for r in self.rows),
        }


def ratio_report(g: Graph, h: int, epsilon: float, seeds, *, opt: OptResult | None = None) -> RatioReport:
    """Solve once per seed and compare each tree against OPT_h."""
    opt = opt or brute_force_opt(g, h)
    if not opt.feasible:
        raise InfeasibleError(f"no spanning tree of hop diameter <= {h} exists")
    rows = []
    for seed in seeds:
        tree, trace = solve(g, SolveParams(epsilon, h, seed))
        if opt.opt_weight > 0:
            ratio = tree.total_weight / opt.opt_weight
        else:
            ratio = 1.0 if tree.total_weight == 0 else math.inf
        if tree.hop_diameter > 4 * trace.rounds_used * h:
            raise InvariantViolation("diameter bound violated")
        rows.append(RatioRow(seed, tree.total_weight, ratio, tree.hop_diameter,
                             tree.hop_diameter / h, trace.rounds_used))
    return RatioReport(opt.opt_weight, rows)
