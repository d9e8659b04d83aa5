"""Branching policies: rewards, accumulated score tables and the hybrid controller.

Four ways of picking the branching pair are supported:

* ``DEGREE``: plain McSplit, highest degree first.
* ``RL``: accumulated bound reductions, credited to both matched vertices.
* ``DAL``: accumulated bound reduction plus the number of child domains,
  kept per pattern vertex and per matched pair.
* ``LL``: RL vertex scores for ``v``, RL rewards per matched pair for ``w``.

Every score tie falls back to the larger degree, then the smaller vertex id,
so with all-zero tables each learned policy behaves exactly like ``DEGREE``.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .environment import Bidomain, Environment, bound_sum
from .graph import Graph, VertexId, bits


class PolicyKind(enum.Enum):
    DEGREE = "degree"
    RL = "rl"
    DAL = "dal"
    LL = "ll"


@dataclass(frozen=True)
class Single:
    kind: PolicyKind


@dataclass(frozen=True)
class Alternate:
    pass


@dataclass(frozen=True)
class Random:
    seed: int = 0


@dataclass(frozen=True)
class Depth:
    pass


HybridMode = Union[Single, Alternate, Random, Depth]

POLICY_NAMES = ("degree", "rl", "dal", "ll", "hybrid", "hybrid-rand", "hybrid-depth")


def parse_policy(name: str, seed: int = 0) -> HybridMode:
    """Map a command-line policy name onto a :data:`HybridMode`."""
    if name in ("degree", "rl", "dal", "ll"):
        return Single(PolicyKind(name))
    if name == "hybrid":
        return Alternate()
    if name == "hybrid-rand":
        return Random(seed)
    if name == "hybrid-depth":
        return Depth()
    raise ValueError(f"unknown policy {name!r}; expected one of {', '.join(POLICY_NAMES)}")


def policy_name(mode: HybridMode) -> str:
    if isinstance(mode, Single):
        return mode.kind.value
    if isinstance(mode, Alternate):
        return "hybrid"
    if isinstance(mode, Random):
        return "hybrid-rand"
    return "hybrid-depth"


# --- rewards ---------------------------------------------------------------

def reward_rl(env: Environment, env_child: Environment, variant: str = "sum-delta") -> int:
    """Upper-bound reduction caused by a match.

    ``sum-delta`` compares the bound sums directly; ``ub-delta`` compares the
    full bounds |curSol| + sum, which is one less because the child carries the
    new pair in its solution.
    """
    delta = bound_sum(env) - bound_sum(env_child)
    if variant == "sum-delta":
        return delta
    if variant == "ub-delta":
        return delta - 1
    raise ValueError(f"unknown RL reward variant {variant!r}")


def reward_dal(env: Environment, env_child: Environment) -> int:
    return bound_sum(env) - bound_sum(env_child) + len(env_child)


# --- score tables ----------------------------------------------------------

def _halve_list(xs: List[int]) -> None:
    for i, x in enumerate(xs):
        xs[i] = x >> 1


def _halve_dict(d: Dict) -> None:
    for k, x in d.items():
        d[k] = x >> 1


@dataclass
class ScoreTables:
    """Accumulated rewards. Vertex tables decay at ``t_v``, pair tables at ``t_vw``.

    Pair tables are sparse: a missing key reads as zero.
    """

    n_p: int
    n_t: int
    t_v: int = 100_000
    t_vw: int = 1_000_000_000
    rl_vertex: List[int] = field(default_factory=list)
    rl_target: List[int] = field(default_factory=list)
    dal_vertex: List[int] = field(default_factory=list)
    dal_pair: Dict[Tuple[int, int], int] = field(default_factory=dict)
    ll_pair: Dict[Tuple[int, int], int] = field(default_factory=dict)
    decays: int = 0

    def __post_init__(self):
        self.rl_vertex = self.rl_vertex or [0] * self.n_p
        self.rl_target = self.rl_target or [0] * self.n_t
        self.dal_vertex = self.dal_vertex or [0] * self.n_p

    def update(self, v: VertexId, w: VertexId, r_rl: int, r_dal: int) -> None:
        t_v = self.t_v
        t_vw = self.t_vw
        pair = (v, w)

        x = self.rl_vertex[v] + r_rl
        self.rl_vertex[v] = x
        if x >= t_v:
            _halve_list(self.rl_vertex)
            self.decays += 1
        x = self.rl_target[w] + r_rl
        self.rl_target[w] = x
        if x >= t_v:
            _halve_list(self.rl_target)
            self.decays += 1
        x = self.dal_vertex[v] + r_dal
        self.dal_vertex[v] = x
        if x >= t_v:
            _halve_list(self.dal_vertex)
            self.decays += 1
        x = self.dal_pair.get(pair, 0) + r_dal
        self.dal_pair[pair] = x
        if x >= t_vw:
            _halve_dict(self.dal_pair)
            self.decays += 1
        x = self.ll_pair.get(pair, 0) + r_rl
        self.ll_pair[pair] = x
        if x >= t_vw:
            _halve_dict(self.ll_pair)
            self.decays += 1


def select_v(domain: Bidomain, tables: ScoreTables, kind: PolicyKind, gp: Graph) -> VertexId:
    deg = gp.degrees
    if kind is PolicyKind.DEGREE:
        return min(bits(domain.left), key=lambda u: (-deg[u], u))
    # LL shares the RL vertex memory
    score = tables.dal_vertex if kind is PolicyKind.DAL else tables.rl_vertex
    return min(bits(domain.left), key=lambda u: (-score[u], -deg[u], u))


def order_w(domain: Bidomain, v: VertexId, tables: ScoreTables, kind: PolicyKind, gt: Graph) -> List[VertexId]:
    deg = gt.degrees
    right = bits(domain.right)
    if kind is PolicyKind.DEGREE:
        right.sort(key=lambda x: (-deg[x], x))
    elif kind is PolicyKind.RL:
        score = tables.rl_target
        right.sort(key=lambda x: (-score[x], -deg[x], x))
    else:
        pairs = tables.dal_pair if kind is PolicyKind.DAL else tables.ll_pair
        get = pairs.get
        right.sort(key=lambda x: (-get((v, x), 0), -deg[x], x))
    return right


# --- hybrid controller -----------------------------------------------------

def policy_at_depth(max_dep: int, depth: int) -> PolicyKind:
    """RL on depths [1, max_dep/4] and [max_dep/2, 3*max_dep/4], DAL elsewhere."""
    if 1 <= depth <= max_dep // 4:
        return PolicyKind.RL
    if -(-max_dep // 2) <= depth <= (3 * max_dep) // 4:
        return PolicyKind.RL
    return PolicyKind.DAL


class HybridController:
    """Decides which policy drives the next branching decision.

    ``trace``, when given, receives ``("select", policy)``, ``("switch", policy)``
    and ``("improve",)`` events.
    """

    def __init__(self, mode: HybridMode, max_nb_app: int, max_dep: int, trace: Optional[list] = None):
        if max_nb_app < 1 or max_dep < 1:
            raise ValueError("max_nb_app and max_dep must be positive")
        self.mode = mode
        self.max_nb_app = max_nb_app
        self.max_dep = max_dep
        self.nb_app = 0
        self.switches = 0
        self.trace = trace
        self.rng = random.Random(mode.seed) if isinstance(mode, Random) else None
        self.current = mode.kind if isinstance(mode, Single) else PolicyKind.RL

    def _set(self, kind: PolicyKind) -> None:
        if kind is not self.current:
            self.current = kind
            self.switches += 1
            if self.trace is not None:
                self.trace.append(("switch", kind))

    def begin_node(self, depth: int) -> PolicyKind:
        """Policy for a new branch node at ``depth`` (1 for the root)."""
        if isinstance(self.mode, Random):
            self._set(self.rng.choice((PolicyKind.RL, PolicyKind.DAL)))
        elif isinstance(self.mode, Depth):
            self._set(policy_at_depth(self.max_dep, depth))
        return self.current

    def policy_at_depth(self, depth: int) -> PolicyKind:
        return policy_at_depth(self.max_dep, depth)

    def on_selection(self) -> None:
        if self.trace is not None:
            self.trace.append(("select", self.current))
        if not isinstance(self.mode, Alternate):
            return
        self.nb_app += 1
        if self.nb_app >= self.max_nb_app:
            self.nb_app = 0
            self._set(PolicyKind.DAL if self.current is PolicyKind.RL else PolicyKind.RL)

    def on_improvement(self) -> None:
        self.nb_app = 0
        if self.trace is not None:
            self.trace.append(("improve",))

