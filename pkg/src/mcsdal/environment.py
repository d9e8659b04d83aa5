"""Bidomain environments: the search state of the McSplit family.

A bidomain pairs a set of pattern vertices with a set of target vertices that
share the same adjacency history towards every matched pair, so only
within-bidomain matches can extend the current solution. Sides are stored as
vertex bitmasks; iteration is always in ascending vertex id, which is the
order the initial environment starts in and every split preserves.

Every operation returns a fresh list; a parent environment is never mutated,
so backtracking needs no undo log.
"""
from __future__ import annotations

from typing import Iterable, List, NamedTuple

from .graph import Graph, VertexId, bits, mask_of


class Bidomain(NamedTuple):
    left: int
    right: int

    @classmethod
    def of(cls, left: Iterable[int], right: Iterable[int]) -> "Bidomain":
        return cls(mask_of(left), mask_of(right))

    @property
    def left_vertices(self) -> List[VertexId]:
        return bits(self.left)

    @property
    def right_vertices(self) -> List[VertexId]:
        return bits(self.right)


Environment = List[Bidomain]


class ContractViolation(RuntimeError):
    pass


def initial_environment(gp: Graph, gt: Graph) -> Environment:
    if gp.n == 0 or gt.n == 0:
        return []
    return [Bidomain((1 << gp.n) - 1, (1 << gt.n) - 1)]


def bound_sum(env: Environment) -> int:
    total = 0
    for left, right in env:
        a = left.bit_count()
        b = right.bit_count()
        total += a if a < b else b
    return total


def select_domain(env: Environment, gp: Graph) -> int:
    """Index of the domain with the smallest max(|left|, |right|).

    Ties go to the domain holding the highest-degree pattern vertex, then to
    the lower index.
    """
    if not env:
        raise ContractViolation("select_domain on an empty environment")
    best_size = None
    candidates = []
    for i, (left, right) in enumerate(env):
        a = left.bit_count()
        b = right.bit_count()
        s = a if a > b else b
        if best_size is None or s < best_size:
            best_size = s
            candidates = [i]
        elif s == best_size:
            candidates.append(i)
    if len(candidates) == 1:
        return candidates[0]
    deg = gp.degrees
    best_i = candidates[0]
    best_deg = -1
    for i in candidates:
        d = max(deg[u] for u in bits(env[i].left))
        if d > best_deg:
            best_deg = d
            best_i = i
    return best_i


def split(env: Environment, v: VertexId, w: VertexId, gp: Graph, gt: Graph) -> Environment:
    """Child environment after matching ``v`` (pattern) with ``w`` (target).

    Each domain yields its part adjacent to the new pair first, then the
    non-adjacent part; parts with an empty side are dropped.
    """
    vbit = 1 << v
    wbit = 1 << w
    for left, right in env:
        if left & vbit:
            if not right & wbit:
                raise ContractViolation(f"vertices {v} and {w} are not in the same domain")
            break
    else:
        raise ContractViolation(f"pattern vertex {v} is not in the environment")
    return _split(env, v, w, gp.masks[v], gt.masks[w])


def _split(env: Environment, v: VertexId, w: VertexId, nv: int, nw: int) -> Environment:
    vbit = ~(1 << v)
    wbit = ~(1 << w)
    out = []
    append = out.append
    for left, right in env:
        left &= vbit
        right &= wbit
        la = left & nv
        ra = right & nw
        if la and ra:
            append(Bidomain(la, ra))
        ln = left & ~nv
        rn = right & ~nw
        if ln and rn:
            append(Bidomain(ln, rn))
    return out


def remove_left_vertex(env: Environment, v: VertexId) -> Environment:
    vbit = 1 << v
    out = []
    found = False
    for d in env:
        if d.left & vbit:
            found = True
            left = d.left & ~vbit
            if left:
                out.append(Bidomain(left, d.right))
        else:
            out.append(d)
    if not found:
        raise ContractViolation(f"pattern vertex {v} is not in the environment")
    return out


def remove_pair(env: Environment, v: VertexId, w: VertexId) -> Environment:
    """Drop ``v`` and ``w`` from their domain without splitting anything else.

    Equivalent to ``split`` when ``v`` and ``w`` have no neighbours left in the
    environment, which is the case for leaf vertices whose only neighbours are
    already matched.
    """
    vbit = 1 << v
    wbit = 1 << w
    out = []
    for d in env:
        if d.left & vbit or d.right & wbit:
            if not (d.left & vbit and d.right & wbit):
                raise ContractViolation(f"vertices {v} and {w} are not in the same domain")
            left = d.left & ~vbit
            right = d.right & ~wbit
            if left and right:
                out.append(Bidomain(left, right))
        else:
            out.append(d)
    return out


def left_union(env: Environment) -> int:
    m = 0
    for d in env:
        m |= d.left
    return m


def right_union(env: Environment) -> int:
    m = 0
    for d in env:
        m |= d.right
    return m


def dump(env: Environment) -> str:
    """One domain per line, ``left | right`` with ids ascending."""
    return "\n".join(
        " ".join(map(str, d.left_vertices)) + " | " + " ".join(map(str, d.right_vertices))
        for d in env
    )
