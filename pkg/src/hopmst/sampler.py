"""Randomized sampling solver for hop-bounded minimum spanning trees.

Each round keeps every active non-root vertex with probability ``n**-eps``
(the root always stays), and merges every other active vertex into its
``d_h``-nearest kept vertex by adding a minimum-weight path of at most ``h``
edges. After the rounds, the hop-BFS tree of the union rooted at the root is
returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleError, InputError, InvariantViolation, RoundBudgetExceeded
from .graph import Edge, Graph, SpanningTree, bfs_hops, bfs_tree, check_spanning_tree
from .hopdist import INF, nearest_in_set, path_weight

ROOT = 0
_MASK64 = (1 << 64) - 1


def round_budget(epsilon: float) -> int:
    # rounding guards against 3/0.3 == 10.000000000000002
    return max(1, math.ceil(round(3.0 / epsilon, 9)))


def derive_seed(seed: int, trial: int) -> int:
    """splitmix64 output at position ``trial`` of the stream seeded by ``seed``."""
    z = (seed + (trial + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SolveParams:
    epsilon: float
    h: int
    seed: int = 0
    max_rounds: int | None = None
    extra_rounds_on_failure: int | None = None

    def __post_init__(self):
        if not self.epsilon > 0 or not math.isfinite(self.epsilon):
            raise InputError("epsilon must be a positive finite number")
        if self.h < 1:
            raise InputError("h must be >= 1")
        if not 0 <= self.seed <= _MASK64:
            raise InputError("seed must be a 64-bit unsigned integer")
        if self.max_rounds is not None and self.max_rounds < 1:
            raise InputError("max_rounds must be >= 1")
        if self.extra_rounds_on_failure is not None and self.extra_rounds_on_failure < 0:
            raise InputError("extra_rounds_on_failure must be >= 0")

    @property
    def rounds(self) -> int:
        return self.max_rounds if self.max_rounds is not None else round_budget(self.epsilon)

    @property
    def extra_rounds(self) -> int:
        if self.extra_rounds_on_failure is not None:
            return self.extra_rounds_on_failure
        return 2 * self.rounds


@dataclass(frozen=True)
class Merge:
    u: int
    target: int
    path: tuple[Edge, ...]  # from u to target
    weight: float

    def to_dict(self) -> dict:
        return {
            "u": self.u,
            "target": self.target,
            "path": [list(e) for e in self.path],
            "weight": self.weight,
        }


@dataclass(frozen=True)
class RoundRecord:
    index: int
    active: tuple[int, ...]
    sampled: tuple[int, ...]
    merges: tuple[Merge, ...]
    path_weight_sum: float
    increment: float
    partial_weight: float

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "active": list(self.active),
            "sampled": list(self.sampled),
            "merges": [m.to_dict() for m in self.merges],
            "path_weight_sum": self.path_weight_sum,
            "increment": self.increment,
            "partial_weight": self.partial_weight,
        }


@dataclass(frozen=True)
class SolveTrace:
    n: int
    h: int
    epsilon: float
    seed: int
    root: int
    rounds: tuple[RoundRecord, ...]
    rounds_used: int

    def to_list(self) -> list[dict]:
        return [r.to_dict() for r in self.rounds]


def precheck_feasibility(g: Graph, h: int) -> tuple[int, int] | None:
    """Return a vertex pair more than ``h`` hops apart, or None.

    Passing is necessary but not sufficient for a diameter-``h`` spanning tree.
    """
    g.require_connected()
    for s in range(g.n):
        hops = bfs_hops(g.adjacency, s)
        for t in range(s + 1, g.n):
            if hops[t] > h:
                return (s, t)
    return None


def _require_feasible(g: Graph, h: int) -> None:
    cert = precheck_feasibility(g, h)
    if cert is not None:
        raise InfeasibleError(
            f"vertices {cert[0]} and {cert[1]} are more than {h} hops apart", certificate=cert
        )


def solve(g: Graph, params: SolveParams, *, checked: bool = False) -> tuple[SpanningTree, SolveTrace]:
    """Run the sampling solver once. ``checked=True`` skips the feasibility precheck."""
    if not checked:
        _require_feasible(g, params.h)
    n, h = g.n, params.h
    root = ROOT
    rng = np.random.default_rng(params.seed)
    prob = float(n) ** (-params.epsilon)
    budget = params.rounds + params.extra_rounds

    active = list(range(n))
    union: dict[tuple[int, int], float] = {}
    weight = 0.0
    records = []
    i = 0
    while len(active) > 1 and i < budget:
        i += 1
        others = [v for v in active if v != root]
        draws = rng.random(len(others))
        sampled = sorted([root] + [v for v, d in zip(others, draws) if d < prob])
        keep = set(sampled)
        table = nearest_in_set(g, sampled, h)
        merges = []
        raw = 0.0
        increment = 0.0
        for u in active:
            if u in keep:
                continue
            if table.dist[u] == INF:
                raise InvariantViolation(f"vertex {u} has no sampled vertex within {h} hops")
            target, dist, path = table.nearest(u)
            path = tuple((b, a, w) for a, b, w in reversed(path))
            if path_weight(path[::-1]) != dist or len(path) > h:
                raise InvariantViolation(f"merge path of vertex {u} is inconsistent")
            merges.append(Merge(u, target, path, dist))
            raw += dist
            for a, b, w in path:
                key = (a, b) if a < b else (b, a)
                if key not in union:
                    union[key] = w
                    increment += w
        weight += increment
        records.append(
            RoundRecord(i, tuple(active), tuple(sampled), tuple(merges), raw, increment, weight)
        )
        active = sampled

    if len(active) > 1:
        raise RoundBudgetExceeded(
            f"{len(active) - 1} non-root vertices still active after {budget} rounds"
        )
    rounds_used = max(params.rounds, i) if n > 1 else 0
    tree = bfs_tree(g, union.keys(), root)
    check_spanning_tree(g, tree)
    if tree.hop_diameter > 4 * rounds_used * h:
        raise InvariantViolation(
            f"hop diameter {tree.hop_diameter} exceeds 4 * {rounds_used} * {h}"
        )
    trace = SolveTrace(n, h, params.epsilon, params.seed, root, tuple(records), rounds_used)
    return tree, trace


def default_trials(n: int) -> int:
    return max(1, math.ceil(4 * math.log2(n))) if n > 1 else 1


@dataclass
class AmplifiedResult:
    tree: SpanningTree
    trace: SolveTrace
    best_trial: int
    seeds: list[int]
    weights: list[float | None]  # None marks a trial that ran out of rounds
    runs: list[tuple[SpanningTree, SolveTrace] | None] = field(repr=False, default_factory=list)


def solve_amplified(g: Graph, params: SolveParams, trials: int | None = None) -> AmplifiedResult:
    """Best of several independent solves, by (weight, trial index)."""
    if trials is None:
        trials = default_trials(g.n)
    if trials < 1:
        raise InputError("trials must be >= 1")
    _require_feasible(g, params.h)
    seeds = [derive_seed(params.seed, t) for t in range(trials)]
    runs: list[tuple[SpanningTree, SolveTrace] | None] = []
    last_error = None
    for s in seeds:
        p = SolveParams(params.epsilon, params.h, s, params.max_rounds, params.extra_rounds_on_failure)
        try:
            runs.append(solve(g, p, checked=True))
        except RoundBudgetExceeded as exc:
            runs.append(None)
            last_error = exc
    weights = [r[0].total_weight if r else None for r in runs]
    ok = [t for t, r in enumerate(runs) if r is not None]
    if not ok:
        raise last_error
    best = min(ok, key=lambda t: (weights[t], t))
    return AmplifiedResult(runs[best][0], runs[best][1], best, seeds, weights, runs)


@dataclass
class BCMDSTResult:
    tree: SpanningTree
    h_found: int
    trace: SolveTrace
    budget: float
    weight_ratio: float  # achieved weight / budget


def solve_bcmdst(
    g: Graph,
    weight_budget: float,
    epsilon: float,
    seed: int = 0,
    *,
    factor: float = math.inf,
    diameter_slack: float = 1.0,
    trials: int | None = None,
) -> BCMDSTResult:
    """Smallest hop bound whose solve meets the weight budget.

    Sweeps ``h = 1 .. n-1``. At each ``h`` the amplified trials are scanned
    lightest first for a tree with weight at most ``weight_budget * factor``
    and hop diameter at most ``diameter_slack * h``. Pass
    ``diameter_slack=math.inf`` to accept any diameter.
    """
    from .oracle import mst_weight

    g.require_connected()
    floor = mst_weight(g)
    if weight_budget < floor:
        raise InfeasibleError(f"budget {weight_budget} is below the MST weight {floor}")
    limit = weight_budget * factor
    for h in range(1, max(2, g.n)):
        if precheck_feasibility(g, h) is not None:
            continue
        try:
            amp = solve_amplified(g, SolveParams(epsilon, h, seed), trials)
        except RoundBudgetExceeded:
            continue
        order = sorted(
            (t for t, r in enumerate(amp.runs) if r is not None),
            key=lambda t: (amp.weights[t], t),
        )
        for t in order:
            tree, trace = amp.runs[t]
            if tree.total_weight <= limit and tree.hop_diameter <= diameter_slack * h:
                ratio = tree.total_weight / weight_budget if weight_budget > 0 else math.inf
                if tree.total_weight == 0:
                    ratio = 0.0
                return BCMDSTResult(tree, h, trace, weight_budget, ratio)
    raise InfeasibleError("no hop bound up to n-1 met the weight budget")
