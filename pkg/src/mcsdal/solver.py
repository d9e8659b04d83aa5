"""Branch-and-bound search for the maximum common induced subgraph.

The search is the McSplit skeleton: bound, pick the smallest domain, pick a
pattern vertex ``v`` from it, try every target vertex ``w`` of the domain in
policy order, then try the branch where ``v`` stays unmatched. After each
split the RL and DAL rewards are credited to the score tables, whichever
policy is currently driving.
"""
from __future__ import annotations

import enum
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from .environment import (
    Environment,
    bound_sum,
    initial_environment,
    left_union,
    remove_left_vertex,
    remove_pair,
    right_union,
    select_domain,
    _split,
)
from .graph import Assignment, Graph, VertexId, leaf_neighbors
from .policy import (
    Alternate,
    HybridController,
    HybridMode,
    ScoreTables,
    order_w,
    policy_name,
    select_v,
)


class Status(enum.Enum):
    OPTIMAL = "Optimal"
    TIMED_OUT = "TimedOut"
    NODE_BUDGET_EXHAUSTED = "NodeBudgetExhausted"


@dataclass
class SolverConfig:
    """Search settings. ``max_nb_app=None`` means 2 * min(|Vp|, |Vt|) per instance."""

    policy: HybridMode = field(default_factory=Alternate)
    t_v: int = 100_000
    t_vw: int = 1_000_000_000
    max_nb_app: Optional[int] = None
    lum: bool = False
    time_budget: Optional[float] = None
    node_budget: Optional[int] = None
    seed: int = 0
    rl_reward_variant: str = "sum-delta"
    check_incumbents: bool = False

    def __post_init__(self):
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")
        if self.node_budget is not None and self.node_budget <= 0:
            raise ValueError("node_budget must be positive")
        if self.max_nb_app is not None and self.max_nb_app <= 0:
            raise ValueError("max_nb_app must be positive")
        if self.t_v <= 0 or self.t_vw <= 0:
            raise ValueError("decay thresholds must be positive")
        if self.rl_reward_variant not in ("sum-delta", "ub-delta"):
            raise ValueError(f"unknown rl_reward_variant {self.rl_reward_variant!r}")

    @classmethod
    def for_graphs(cls, gp: Graph, gt: Graph, **overrides) -> "SolverConfig":
        cfg = cls(**overrides)
        if cfg.max_nb_app is None:
            cfg.max_nb_app = default_max_nb_app(gp, gt)
        return cfg

    @property
    def policy_label(self) -> str:
        return policy_name(self.policy)


def default_max_nb_app(gp: Graph, gt: Graph) -> int:
    return max(1, 2 * min(gp.n, gt.n))


@dataclass
class SearchStats:
    prunes: int = 0
    policy_switches: int = 0
    incumbent_updates: int = 0
    max_depth: int = 0


@dataclass
class SolveResult:
    best: Assignment
    recursive_calls: int
    elapsed: float
    status: Status
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def size(self) -> int:
        return len(self.best)


def check_solution(gp: Graph, gt: Graph, a: Assignment) -> bool:
    left = [v for v, _ in a]
    right = [w for _, w in a]
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        return False
    if any(not 0 <= v < gp.n for v in left) or any(not 0 <= w < gt.n for w in right):
        return False
    for i, (vi, wi) in enumerate(a):
        for vj, wj in a[i + 1:]:
            if gp.adjacent(vi, vj) != gt.adjacent(wi, wj):
                return False
    return True


def lum_extend(gp: Graph, gt: Graph, v: VertexId, w: VertexId, env: Environment, cur: Assignment):
    """Match leaf neighbours of ``v`` with leaf neighbours of ``w``.

    Only leaves still present in ``env`` are used; the ``k`` smallest ids on each
    side are paired in ascending order. A leaf's single neighbour is already
    matched, so consuming the pair touches no other domain.
    """
    left_present = left_union(env)
    right_present = right_union(env)
    lp = sorted(u for u in leaf_neighbors(gp, v) if left_present >> u & 1)
    lt = sorted(x for x in leaf_neighbors(gt, w) if right_present >> x & 1)
    k = min(len(lp), len(lt))
    if k == 0:
        return env, cur
    cur = list(cur)
    for u, x in zip(lp[:k], lt[:k]):
        env = remove_pair(env, u, x)
        cur.append((u, x))
    return env, cur


class _Interrupted(Exception):
    def __init__(self, status: Status):
        self.status = status


def solve(gp: Graph, gt: Graph, cfg: Optional[SolverConfig] = None, trace: Optional[list] = None) -> SolveResult:
    """Exact MCS of ``gp`` and ``gt``, or the best found before a budget ran out.

    ``trace`` collects controller events plus ``("prune", cur, env)`` and
    ``("incumbent", size)`` entries; leave it ``None`` for normal runs.
    """
    cfg = cfg or SolverConfig()
    start = time.perf_counter()
    stats = SearchStats()
    if gp.n == 0 or gt.n == 0:
        return SolveResult([], 0, time.perf_counter() - start, Status.OPTIMAL, stats)

    max_dep = min(gp.n, gt.n)
    max_nb_app = cfg.max_nb_app if cfg.max_nb_app is not None else default_max_nb_app(gp, gt)
    tables = ScoreTables(gp.n, gt.n, cfg.t_v, cfg.t_vw)
    ctl = HybridController(cfg.policy, max_nb_app, max_dep, trace)
    rl_offset = 1 if cfg.rl_reward_variant == "ub-delta" else 0
    deadline = None if cfg.time_budget is None else start + cfg.time_budget
    node_budget = cfg.node_budget
    lum = cfg.lum
    check = cfg.check_incumbents
    update = tables.update
    clock = time.perf_counter

    cur: Assignment = []
    best: Assignment = []
    calls = 0

    def record_incumbent():
        nonlocal best
        best = list(cur)
        stats.incumbent_updates += 1
        if check and not check_solution(gp, gt, best):
            raise AssertionError(f"incumbent {best} is not a common induced subgraph")
        if trace is not None:
            trace.append(("incumbent", len(best)))
        ctl.on_improvement()

    pmasks = gp.masks
    tmasks = gt.masks

    def search(env: Environment, depth: int, bound: int):
        nonlocal calls
        if node_budget is not None and calls >= node_budget:
            raise _Interrupted(Status.NODE_BUDGET_EXHAUSTED)
        if deadline is not None and clock() >= deadline:
            raise _Interrupted(Status.TIMED_OUT)
        calls += 1
        if depth > stats.max_depth:
            stats.max_depth = depth

        if len(cur) + bound <= len(best):
            stats.prunes += 1
            if trace is not None:
                trace.append(("prune", list(cur), list(env)))
            return

        kind = ctl.begin_node(len(cur) + 1)
        domain = env[select_domain(env, gp)]
        v = select_v(domain, tables, kind, gp)
        ctl.on_selection()
        for w in order_w(domain, v, tables, kind, gt):
            ctl.on_selection()
            child = _split(env, v, w, pmasks[v], tmasks[w])
            child_bound = bound_sum(child)
            delta = bound - child_bound
            update(v, w, delta - rl_offset, delta + len(child))
            cur.append((v, w))
            added = 0
            if lum:
                child, extended = lum_extend(gp, gt, v, w, child, cur)
                added = len(extended) - len(cur)
                cur[:] = extended
                child_bound -= added
            if len(cur) > len(best):
                record_incumbent()
            search(child, depth + 1, child_bound)
            del cur[len(cur) - added - 1:]
        rest = remove_left_vertex(env, v)
        search(rest, depth + 1, bound_sum(rest))

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 2 * gp.n + 200))
    status = Status.OPTIMAL
    try:
        env = initial_environment(gp, gt)
        search(env, 1, bound_sum(env))
    except _Interrupted as stop:
        status = stop.status
    finally:
        sys.setrecursionlimit(old_limit)
    stats.policy_switches = ctl.switches
    return SolveResult(best, calls, time.perf_counter() - start, status, stats)
