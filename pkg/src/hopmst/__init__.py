"""Hop-bounded minimum spanning trees by randomized sampling."""

__version__ = "0.1.0"

from .errors import (
    DisconnectedGraphError,
    HopMSTError,
    InfeasibleError,
    InputError,
    InvariantViolation,
    RoundBudgetExceeded,
)
from .graph import Graph, SpanningTree, generate, load_graph, tree_hop_diameter
from .hopdist import hop_bellman_ford, nearest_in_set, reconstruct_path
from .sampler import SolveParams, precheck_feasibility, solve, solve_amplified, solve_bcmdst

__all__ = [
    "DisconnectedGraphError",
    "Graph",
    "HopMSTError",
    "InfeasibleError",
    "InputError",
    "InvariantViolation",
    "RoundBudgetExceeded",
    "SolveParams",
    "SpanningTree",
    "generate",
    "hop_bellman_ford",
    "load_graph",
    "nearest_in_set",
    "precheck_feasibility",
    "reconstruct_path",
    "solve",
    "solve_amplified",
    "solve_bcmdst",
    "tree_hop_diameter",
]
