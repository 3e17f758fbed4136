"""Euler-tour charging: executable checks of the per-round weight analysis.

A reference tree of hop diameter <= h is unrolled into a cyclic Euler tour
(each tree edge appears as two arcs). In each solver round the tour is
contracted to the first copy of every active vertex, and each unsampled
vertex walks clockwise to the first sampled one. The total walk weight
``phi`` bounds the weight the solver added in that round.

Contracted weights and ``phi`` are exact ``Fraction`` values so the
per-round inequality can be checked without rounding slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InputError
from .graph import Graph, SpanningTree, edge_key
from .sampler import SolveTrace


@dataclass(frozen=True)
class EulerCycle:
    tour: tuple[int, ...]
    arc_weights: tuple[float, ...]  # arc j runs tour[j] -> tour[(j + 1) % t]
    first_index: dict[int, int]

    @property
    def length(self) -> int:
        return len(self.tour)

    @property
    def total_weight(self) -> Fraction:
        return sum((Fraction(w) for w in self.arc_weights), Fraction(0))


@dataclass(frozen=True)
class ContractedCycle:
    vertices: tuple[int, ...]  # tour order
    positions: tuple[int, ...]  # index of each retained copy in the full tour
    weights: tuple[Fraction, ...]  # weights[j]: vertices[j] -> vertices[(j + 1) % t_i]
    round_index: int = 0

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))


@dataclass(frozen=True)
class ChargingResult:
    next_of: dict[int, int]
    charged: dict[int, Fraction]
    hops: dict[int, int]  # contracted arcs walked
    phi: Fraction


def build_euler_cycle(tree: SpanningTree, root: int | None = None) -> EulerCycle:
    """DFS Euler tour from ``root`` visiting children in ascending id order."""
    root = tree.root if root is None else root
    adj = tree.adjacency()
    tour = [root]
    weights = []
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        v, par, it = stack[-1]
        for child, w in it:
            if child != par:
                weights.append(w)
                tour.append(child)
                stack.append((child, v, iter(adj[child])))
                break
        else:
            stack.pop()
            if stack:
                weights.append(next(w for x, w in adj[v] if x == par))
                tour.append(par)
    # the walk ends back at the root; the cycle closes that last arc
    if len(tour) > 1:
        tour.pop()
    first: dict[int, int] = {}
    for j, v in enumerate(tour):
        first.setdefault(v, j)
    return EulerCycle(tuple(tour), tuple(weights), first)


def contract_cycle(cycle: EulerCycle, active, round_index: int = 0) -> ContractedCycle:
    """Keep only the first copy of each active vertex; sum the skipped arcs."""
    active = set(active)
    if not active:
        raise InputError("active set is empty")
    missing = active - cycle.first_index.keys()
    if missing:
        raise InputError(f"vertices {sorted(missing)} are not on the tour")
    positions = sorted(cycle.first_index[v] for v in active)
    t = cycle.length
    arcs = cycle.arc_weights
    weights = []
    for j, start in enumerate(positions):
        stop = positions[(j + 1) % len(positions)]
        span = ((stop - start) % t or t) if t else 0
        total = Fraction(0)
        for k in range(span):
            total += Fraction(arcs[(start + k) % t])
        weights.append(total)
    verts = tuple(cycle.tour[p] for p in positions)
    return ContractedCycle(verts, tuple(positions), tuple(weights), round_index)


def charge(contracted: ContractedCycle, sampled) -> ChargingResult:
    """Walk each unsampled vertex clockwise to the first sampled one."""
    sampled = set(sampled)
    if not sampled:
        raise InputError("sampled set is empty")
    if not sampled <= set(contracted.vertices):
        raise InputError("sampled set is not a subset of the active set")
    t = contracted.size
    next_of, charged, hops = {}, {}, {}
    for j, v in enumerate(contracted.vertices):
        if v in sampled:
            continue
        k, walked = j, Fraction(0)
        while contracted.vertices[k] not in sampled:
            walked += contracted.weights[k]
            k = (k + 1) % t
        next_of[v] = contracted.vertices[k]
        charged[v] = walked
        hops[v] = (k - j) % t
    return ChargingResult(next_of, charged, hops, sum(charged.values(), Fraction(0)))


# --------------------------------------------------------------------------
# claim checks


@dataclass
class RoundCheck:
    index: int
    increment: Fraction
    phi: Fraction
    merges_ok: bool

    @property
    def ok(self) -> bool:
        return self.increment <= self.phi and self.merges_ok

    def to_dict(self) -> dict:
        return {
            "round": self.index,
            "increment": float(self.increment),
            "phi": float(self.phi),
            "merges_ok": self.merges_ok,
            "pass": self.ok,
        }


def verify_claim_med(trace: SolveTrace, reference: SpanningTree, graph: Graph | None = None) -> list[RoundCheck]:
    """Check, for every traced round, ``increment <= phi`` exactly.

    Also checks every merge: its path weight is at most the walk weight
    charged to the merged vertex.
    """
    if reference.hop_diameter > trace.h:
        raise InputError(
            f"reference tree has hop diameter {reference.hop_diameter} > h = {trace.h}"
        )
    if reference.n != trace.n:
        raise InputError("reference tree does not span the traced graph")
    if graph is not None:
        for u, v, w in reference.edges:
            if not graph.has_edge(u, v) or graph.weight(u, v) != w:
                raise InputError(f"reference edge ({u}, {v}) is not a graph edge")
    cycle = build_euler_cycle(reference, trace.root)
    present: set[tuple[int, int]] = set()
    checks = []
    for rec in trace.rounds:
        contracted = contract_cycle(cycle, rec.active, rec.index)
        result = charge(contracted, rec.sampled)
        increment = Fraction(0)
        merges_ok = True
        for merge in rec.merges:
            exact = Fraction(0)
            for a, b, w in merge.path:
                exact += Fraction(w)
                key = edge_key(a, b)
                if key not in present:
                    present.add(key)
                    increment += Fraction(w)
            if exact > result.charged[merge.u] or len(merge.path) > trace.h:
                merges_ok = False
        checks.append(RoundCheck(rec.index, increment, result.phi, merges_ok))
    return checks


def claim_hard_constant(n: int, epsilon: float) -> float:
    """Explicit per-round multiplier ``(n**eps + 1)**2 / n**eps``."""
    m = float(n) ** epsilon
    return (m + 1.0) ** 2 / m


@dataclass
class ClaimHardReport:
    mean: float
    stderr: float
    bound: float
    ratio: float  # mean / (2 * reference weight)
    trials: int
    passed: bool

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "stderr": self.stderr,
            "bound": self.bound,
            "ratio": self.ratio,
            "trials": self.trials,
            "pass": self.passed,
        }


def phi_samples(contracted: ContractedCycle, sampled_mask: np.ndarray) -> np.ndarray:
    """Vectorized ``phi`` for many sampling outcomes at once (float64).

    ``sampled_mask`` has shape (trials, t_i) and marks sampled positions of
    the contracted cycle. Every row must contain at least one True.
    """
    t = contracted.size
    w = np.array([float(x) for x in contracted.weights])
    cum = np.concatenate([[0.0], np.cumsum(np.concatenate([w, w]))])
    out = np.empty(sampled_mask.shape[0])
    idx = np.arange(t)
    for r, row in enumerate(sampled_mask):
        hit = np.flatnonzero(np.concatenate([row, row]))
        nxt = hit[np.searchsorted(hit, idx)]
        out[r] = np.sum((cum[nxt] - cum[idx])[~row])
    return out


def estimate_claim_hard(
    reference: SpanningTree,
    epsilon: float,
    trials: int = 2000,
    seed: int = 0,
    *,
    root: int = 0,
    sample_prob: float | None = None,
) -> ClaimHardReport:
    """Monte-Carlo estimate of E[phi] in the first round (all vertices active).

    Passes when ``mean <= B * 2 * w(reference) + 5 * stderr`` with
    ``B = claim_hard_constant(n, epsilon)``. ``sample_prob`` overrides the
    sampling probability ``n**-epsilon``.
    """
    if trials < 1:
        raise InputError("trials must be >= 1")
    n = reference.n
    cycle = build_euler_cycle(reference, root)
    contracted = contract_cycle(cycle, range(n), 1)
    prob = float(n) ** (-epsilon) if sample_prob is None else sample_prob
    rng = np.random.default_rng(seed)
    mask = rng.random((trials, contracted.size)) < prob
    mask[:, [j for j, v in enumerate(contracted.vertices) if v == root]] = True
    values = phi_samples(contracted, mask)
    mean = math.fsum(values) / trials
    stderr = float(np.std(values, ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    double_ref = 2.0 * reference.total_weight
    bound = claim_hard_constant(n, epsilon) * double_ref
    ratio = mean / double_ref if double_ref > 0 else 0.0
    return ClaimHardReport(mean, stderr, bound, ratio, trials, mean <= bound + 5 * stderr)


def check_sum_of_exps(M: float, N: int) -> tuple[float, float, bool]:
    """``sum_{j,k < N} exp(-(j + k) / M)`` against ``(M + 1)**2``.

    The double sum is the square of one geometric sum, evaluated in closed
    form with expm1 for accuracy at large ``M``.
    """
    if not M > 0 or N < 1:
        raise InputError("need M > 0 and N >= 1")
    single = math.expm1(-N / M) / math.expm1(-1.0 / M)
    total = single * single
    bound = (M + 1.0) ** 2
    return total, bound, total <= bound * (1 + 1e-9)
