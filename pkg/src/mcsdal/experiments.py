"""Desk-scale policy comparison on seeded Erdos-Renyi pairs."""
from __future__ import annotations

import random
import statistics
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .graph import Graph, random_graph
from .policy import parse_policy
from .solver import SolverConfig, Status, solve


def er_pairs(n_pairs: int, n_min: int, n_max: int, p: float, seed: int = 0) -> List[Tuple[Graph, Graph]]:
    pairs = []
    for i in range(n_pairs):
        rng = random.Random(seed * 1_000_003 + i)
        n_p, n_t = rng.randint(n_min, n_max), rng.randint(n_min, n_max)
        pairs.append((random_graph(n_p, p, rng), random_graph(n_t, p, rng)))
    return pairs


@dataclass
class TrendSummary:
    policies: Tuple[str, ...]
    node_budget: int
    calls: Dict[str, List[int]] = field(default_factory=dict)
    solved: Dict[str, List[bool]] = field(default_factory=dict)
    sizes: Dict[str, List[int]] = field(default_factory=dict)

    def median_calls(self, policy: str) -> float:
        """Median recursive calls; runs that hit the budget count as the budget."""
        return statistics.median(self.calls[policy])

    def n_solved(self, policy: str) -> int:
        return sum(self.solved[policy])

    def trend_holds(self, candidate: str = "hybrid", baseline: str = "rl", slack: float = 1.10) -> bool:
        return (self.median_calls(candidate) <= slack * self.median_calls(baseline)
                and self.n_solved(candidate) >= self.n_solved(baseline))

    def lines(self) -> List[str]:
        n = len(next(iter(self.calls.values()), []))
        out = [f"{n} pairs, node budget {self.node_budget}"]
        for p in self.policies:
            out.append(f"{p:>12}: solved {self.n_solved(p):3d}/{n}  median calls {self.median_calls(p):.0f}")
        return out


def trend_check(
    pairs: Sequence[Tuple[Graph, Graph]],
    policies: Sequence[str] = ("rl", "hybrid"),
    node_budget: int = 10**6,
    seed: int = 0,
    progress: Optional[Callable[[int, str, object], None]] = None,
) -> TrendSummary:
    summary = TrendSummary(tuple(policies), node_budget)
    for name in policies:
        summary.calls[name], summary.solved[name], summary.sizes[name] = [], [], []
    for i, (gp, gt) in enumerate(pairs):
        for name in policies:
            res = solve(gp, gt, SolverConfig(policy=parse_policy(name, seed), node_budget=node_budget, seed=seed))
            summary.calls[name].append(res.recursive_calls)
            summary.solved[name].append(res.status is Status.OPTIMAL)
            summary.sizes[name].append(res.size)
            if progress is not None:
                progress(i, name, res)
    return summary
