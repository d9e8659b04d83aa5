"""Exact maximum common induced subgraph search with learned branching."""
from .environment import Bidomain, bound_sum, initial_environment, remove_left_vertex, select_domain, split
from .graph import Graph, ParseError, degree, leaf_neighbors, parse_dimacs, parse_lad, read_graph, to_lad
from .oracle import brute_force_mcs, oracle_agrees
from .policy import Alternate, Depth, PolicyKind, Random, ScoreTables, Single, parse_policy
from .solver import SolveResult, SolverConfig, Status, check_solution, solve

__all__ = [
    "Alternate", "Bidomain", "Depth", "Graph", "ParseError", "PolicyKind", "Random", "ScoreTables",
    "Single", "SolveResult", "SolverConfig", "Status", "bound_sum", "brute_force_mcs", "check_solution",
    "degree", "initial_environment", "leaf_neighbors", "oracle_agrees", "parse_dimacs", "parse_lad",
    "parse_policy", "read_graph", "remove_left_vertex", "select_domain", "solve", "split", "to_lad",
]
