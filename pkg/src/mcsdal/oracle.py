"""Brute-force maximum common induced subgraph, used as ground truth.

Deliberately shares nothing with the branch-and-bound code except the
:class:`Graph` type: plain depth-first enumeration of partial injective maps,
checking the induced-isomorphism condition pair by pair, no bounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .graph import Assignment, Graph

MAX_ORACLE_SIZE = 10


@dataclass
class OracleResult:
    size: int
    witness: Assignment
    explored: int


def brute_force_extension(
    gp: Graph,
    gt: Graph,
    fixed: Assignment = (),
    left: Optional[Iterable[int]] = None,
    right: Optional[Iterable[int]] = None,
) -> OracleResult:
    """Largest set of extra pairs drawn from ``left`` x ``right`` compatible with ``fixed``.

    ``size`` counts only the extra pairs; ``witness`` is ``fixed`` plus them.
    """
    fixed = list(fixed)
    left = sorted(range(gp.n) if left is None else left)
    right = sorted(range(gt.n) if right is None else right)
    used_left = {v for v, _ in fixed}
    used_right = {w for _, w in fixed}
    left = [v for v in left if v not in used_left]
    right = [w for w in right if w not in used_right]

    mapping: List[Tuple[int, int]] = list(fixed)
    taken = [False] * gt.n
    best: List[Tuple[int, int]] = list(fixed)
    explored = 0

    def consistent(v, w):
        for a, b in mapping:
            if gp.adjacent(v, a) != gt.adjacent(w, b):
                return False
        return True

    def visit(i):
        nonlocal best, explored
        explored += 1
        if len(mapping) > len(best):
            best = list(mapping)
        if i == len(left):
            return
        v = left[i]
        for w in right:
            if not taken[w] and consistent(v, w):
                taken[w] = True
                mapping.append((v, w))
                visit(i + 1)
                mapping.pop()
                taken[w] = False
        visit(i + 1)

    visit(0)
    return OracleResult(len(best) - len(fixed), best, explored)


def brute_force_mcs(gp: Graph, gt: Graph, limit: int = MAX_ORACLE_SIZE) -> OracleResult:
    if min(gp.n, gt.n) > limit:
        raise ValueError(
            f"refusing exhaustive search on {gp.n} x {gt.n} vertices (limit {limit}); "
            "raise `limit` explicitly if you mean it"
        )
    return brute_force_extension(gp, gt)


def oracle_agrees(gp: Graph, gt: Graph, cfg=None) -> bool:
    from .solver import SolverConfig, solve

    return solve(gp, gt, cfg or SolverConfig()).size == brute_force_mcs(gp, gt).size
