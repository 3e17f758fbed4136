"""Undirected weighted graphs, spanning trees, generators and edge-list I/O.

Vertices are dense ids ``0..n-1``. Edges are stored normalized as
``(u, v, w)`` with ``u < v`` and sorted, so two graphs built from the same
edge set compare equal regardless of input order.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DisconnectedGraphError,
    GenerationError,
    GraphFormatError,
    InputError,
    InvariantViolation,
)

Edge = tuple[int, int, float]


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[tuple[int, float], ...], ...] = field(repr=False, compare=False)
    weights: dict[tuple[int, int], float] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence]) -> Graph:
        if n < 1:
            raise InputError("graph needs at least one vertex")
        weights: dict[tuple[int, int], float] = {}
        for u, v, w in edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not math.isfinite(w) or w < 0:
                raise InputError(f"edge ({u}, {v}) has invalid weight {w!r}")
            key = edge_key(u, v)
            if key in weights:
                raise InputError(f"duplicate edge ({key[0]}, {key[1]})")
            weights[key] = w
        norm = tuple(sorted((u, v, w) for (u, v), w in weights.items()))
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, w in norm:
            adj[u].append((v, w))
            adj[v].append((u, w))
        adjacency = tuple(tuple(sorted(a)) for a in adj)
        return cls(n, norm, adjacency, weights)

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, u: int, v: int) -> float:
        return self.weights[edge_key(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.weights

    def neighbors(self, v: int) -> tuple[tuple[int, float], ...]:
        return self.adjacency[v]

    @property
    def is_connected(self) -> bool:
        return len(bfs_hops(self.adjacency, 0)) == self.n

    def require_connected(self) -> None:
        if not self.is_connected:
            seen = bfs_hops(self.adjacency, 0)
            missing = min(v for v in range(self.n) if v not in seen)
            raise DisconnectedGraphError(
                f"graph is disconnected (vertex {missing} unreachable from 0)",
                certificate=(0, missing),
            )

    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges)


def bfs_hops(adjacency, source: int) -> dict[int, int]:
    """Hop distances from ``source``; only reached vertices are present."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v, _ in adjacency[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


# --------------------------------------------------------------------------
# spanning trees


@dataclass(frozen=True)
class SpanningTree:
    root: int
    parent: tuple[int, ...]
    edges: tuple[Edge, ...]
    total_weight: float
    hop_diameter: int

    @property
    def n(self) -> int:
        return len(self.parent)

    def adjacency(self) -> list[list[tuple[int, float]]]:
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        for a in adj:
            a.sort()
        return adj

    @classmethod
    def from_parent(cls, graph: Graph, parent: Sequence[int], root: int) -> SpanningTree:
        if len(parent) != graph.n:
            raise InputError("parent array length differs from vertex count")
        if parent[root] != root:
            raise InputError("root must be its own parent")
        edges = []
        for v, p in enumerate(parent):
            if v == root:
                continue
            if not graph.has_edge(v, p):
                raise InputError(f"tree edge ({v}, {p}) is not an edge of the graph")
            edges.append((*edge_key(v, p), graph.weight(v, p)))
        return cls._build(graph, edges, root)

    @classmethod
    def from_edges(cls, graph: Graph, edges: Iterable[Sequence], root: int = 0) -> SpanningTree:
        picked = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not graph.has_edge(u, v):
                raise InputError(f"tree edge ({u}, {v}) is not an edge of the graph")
            picked.append((*edge_key(u, v), graph.weight(u, v)))
        return cls._build(graph, picked, root)

    @classmethod
    def _build(cls, graph: Graph, edges: list[Edge], root: int) -> SpanningTree:
        n = graph.n
        edges = sorted(set(edges))
        if len(edges) != n - 1:
            raise InputError(f"a spanning tree on {n} vertices needs {n - 1} edges, got {len(edges)}")
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, w in edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        parent = [-1] * n
        parent[root] = root
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, _ in sorted(adj[u]):
                if parent[v] == -1:
                    parent[v] = u
                    queue.append(v)
        if -1 in parent:
            raise InputError("edge set is not connected, so it is not a spanning tree")
        total = 0.0
        for _, _, w in edges:
            total += w
        return cls(root, tuple(parent), tuple(edges), total, _double_bfs_diameter(adj))

    def to_dict(self, **extra) -> dict:
        out = {
            "root": self.root,
            "parent": list(self.parent),
            "edges": [[u, v, w] for u, v, w in self.edges],
            "total_weight": self.total_weight,
            "hop_diameter": self.hop_diameter,
        }
        out.update(extra)
        return out


def _double_bfs_diameter(adj) -> int:
    if len(adj) <= 1:
        return 0
    first = bfs_hops(adj, 0)
    far = max(first, key=lambda v: (first[v], -v))
    second = bfs_hops(adj, far)
    return max(second.values())


def tree_hop_diameter(tree: SpanningTree) -> int:
    """Exact hop diameter of a tree by double BFS."""
    return _double_bfs_diameter(tree.adjacency())


def check_spanning_tree(graph: Graph, tree: SpanningTree) -> None:
    """Raise InvariantViolation unless ``tree`` is a valid spanning tree of ``graph``."""
    n = graph.n
    if tree.n != n or len(tree.edges) != n - 1:
        raise InvariantViolation("tree has the wrong number of vertices or edges")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total = 0.0
    for u, v, w in tree.edges:
        if not graph.has_edge(u, v) or graph.weight(u, v) != w:
            raise InvariantViolation(f"tree edge ({u}, {v}, {w}) is not a graph edge")
        ru, rv = find(u), find(v)
        if ru == rv:
            raise InvariantViolation("tree contains a cycle")
        parent[ru] = rv
        total += w
    if total != tree.total_weight:
        raise InvariantViolation("stored total_weight disagrees with the edge set")
    if tree_hop_diameter(tree) != tree.hop_diameter:
        raise InvariantViolation("stored hop_diameter disagrees with double BFS")


def bfs_tree(graph: Graph, edges: Iterable[tuple[int, int]], root: int) -> SpanningTree:
    """Hop-shortest-path tree of the subgraph ``edges``; ties go to the lowest parent id.

    Raises InvariantViolation if the subgraph does not span ``graph``.
    """
    adj: list[list[int]] = [[] for _ in range(graph.n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    parent = [-1] * graph.n
    parent[root] = root
    level = [root]
    while level:
        nxt = []
        for u in sorted(level):
            for v in adj[u]:
                if parent[v] == -1:
                    parent[v] = u
                    nxt.append(v)
        level = nxt
    if -1 in parent:
        raise InvariantViolation("subgraph does not span the graph")
    return SpanningTree.from_parent(graph, parent, root)


# --------------------------------------------------------------------------
# edge-list format


def load_graph(text: str) -> Graph:
    """Parse the ``p n m`` / ``e u v w`` edge-list format.

    Disconnected graphs load fine; solvers call :meth:`Graph.require_connected`.
    """
    header = None
    edges = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if header is not None:
                raise GraphFormatError("second 'p' line", lineno)
            if len(parts) != 3:
                raise GraphFormatError("expected 'p <n> <m>'", lineno)
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise GraphFormatError("vertex and edge counts must be integers", lineno) from None
            if header[0] < 1 or header[1] < 0:
                raise GraphFormatError("counts out of range", lineno)
        elif tag == "e":
            if header is None:
                raise GraphFormatError("'e' line before 'p' line", lineno)
            if len(parts) != 4:
                raise GraphFormatError("expected 'e <u> <v> <w>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
                w = float(parts[3])
            except ValueError:
                raise GraphFormatError("malformed edge fields", lineno) from None
            n = header[0]
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex id out of range 0..{n - 1}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}", lineno)
            if not math.isfinite(w) or w < 0:
                raise GraphFormatError(f"weight must be finite and non-negative, got {parts[3]}", lineno)
            key = edge_key(u, v)
            if key in seen:
                raise GraphFormatError(f"duplicate edge ({u}, {v}), first seen on line {seen[key]}", lineno)
            seen[key] = lineno
            edges.append((u, v, w))
        else:
            raise GraphFormatError(f"unknown line type {tag!r}", lineno)
    if header is None:
        raise GraphFormatError("missing 'p' line")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def dump_graph(graph: Graph) -> str:
    lines = [f"p {graph.n} {graph.m}"]
    lines += [f"e {u} {v} {w!r}" for u, v, w in graph.edges]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_graph(fh.read())


def load_tree_json(graph: Graph, text: str) -> SpanningTree:
    try:
        doc = json.loads(text)
        root = int(doc.get("root", 0))
        if "edges" in doc:
            return SpanningTree.from_edges(graph, doc["edges"], root)
        return SpanningTree.from_parent(graph, [int(p) for p in doc["parent"]], root)
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad tree JSON: {exc}") from None


# --------------------------------------------------------------------------
# generators

FAMILIES = ("gnp", "path", "star", "complete_metric", "wheel")


def _weights(rng: np.random.Generator, count: int, params: dict) -> list[float]:
    kind = params.get("weights", "unit")
    if kind == "unit":
        return [1.0] * count
    lo, hi = params.get("wmin", 1), params.get("wmax", 100)
    if kind == "int":
        # integer weights keep every sum exact in float64
        return [float(x) for x in rng.integers(lo, hi, endpoint=True, size=count)]
    if kind == "uniform":
        return [float(x) for x in rng.uniform(lo, hi, size=count)]
    raise InputError(f"unknown weight kind {kind!r}")


def generate(family: str, n: int, params: dict | None = None, seed: int = 0) -> Graph:
    """Deterministic instance generator.

    ``params`` keys: ``weights`` ('unit' | 'int' | 'uniform', default 'unit'),
    ``wmin``/``wmax``, and for gnp ``p`` and ``max_retries`` (default 100).
    complete_metric always uses Euclidean distances of random unit-square points.
    """
    params = dict(params or {})
    if n < 2:
        raise InputError("generators need n >= 2")
    rng = np.random.default_rng(seed)
    if family == "path":
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif family == "star":
        pairs = [(0, i) for i in range(1, n)]
    elif family == "wheel":
        if n < 4:
            raise InputError("wheel needs n >= 4")
        rim = list(range(1, n))
        pairs = [(0, i) for i in rim] + [(rim[k], rim[(k + 1) % len(rim)]) for k in range(len(rim))]
    elif family == "complete_metric":
        pts = rng.random((n, 2))
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                edges.append((u, v, float(np.hypot(*(pts[u] - pts[v])))))
        return Graph.from_edges(n, edges)
    elif family == "gnp":
        p = float(params.get("p", 0.5))
        if not 0 < p <= 1:
            raise InputError("gnp needs 0 < p <= 1")
        retries = int(params.get("max_retries", 100))
        all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        for _ in range(retries):
            mask = rng.random(len(all_pairs)) < p
            pairs = [pr for pr, keep in zip(all_pairs, mask) if keep]
            ws = _weights(rng, len(pairs), params)
            g = Graph.from_edges(n, [(u, v, w) for (u, v), w in zip(pairs, ws)])
            if g.is_connected:
                return g
        raise GenerationError(f"gnp(n={n}, p={p}) stayed disconnected after {retries} retries")
    else:
        raise InputError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    ws = _weights(rng, len(pairs), params)
    return Graph.from_edges(n, [(u, v, w) for (u, v), w in zip(pairs, ws)])


def hop_diameter(graph: Graph) -> int:
    """Unweighted diameter of a connected graph (all-pairs BFS)."""
    return max(max(bfs_hops(graph.adjacency, s).values()) for s in range(graph.n))
