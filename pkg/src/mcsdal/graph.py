"""Undirected, unlabelled graphs and the LAD / DIMACS readers.

Adjacency is kept as one neighbour bitmask per vertex (a Python int), which
gives O(1) adjacency tests and lets the bidomain code split vertex sets with
a single ``&``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Tuple

VertexId = int
Assignment = List[Tuple[VertexId, VertexId]]


class ParseError(ValueError):
    """Raised for malformed graph input. Carries a 1-based line and token position."""

    def __init__(self, message: str, line: int | None = None, token: int | None = None):
        self.line = line
        self.token = token
        where = []
        if line is not None:
            where.append(f"line {line}")
        if token is not None:
            where.append(f"token {token}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> List[int]:
    return list(iter_bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    masks: Tuple[int, ...]
    degrees: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.masks) != self.n:
            raise ValueError(f"expected {self.n} neighbour masks, got {len(self.masks)}")
        full = (1 << self.n) - 1
        for v, m in enumerate(self.masks):
            if m & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside [0, {self.n})")
            if (m >> v) & 1:
                raise ValueError(f"self-loop on vertex {v}")
            for u in iter_bits(m):
                if not (self.masks[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "degrees", tuple(m.bit_count() for m in self.masks))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        masks = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(n, tuple(masks))

    def adjacent(self, u: VertexId, v: VertexId) -> bool:
        return bool((self.masks[u] >> v) & 1)

    def neighbors(self, v: VertexId) -> List[VertexId]:
        return bits(self.masks[v])

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.masks[u]) if v > u]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def __len__(self) -> int:
        return self.n


def degree(g: Graph, v: VertexId) -> int:
    return g.degrees[v]


def leaf_neighbors(g: Graph, v: VertexId) -> set:
    """Neighbours of ``v`` whose degree is exactly one."""
    return {u for u in iter_bits(g.masks[v]) if g.degrees[u] == 1}


def _tokens(text: str) -> Iterator[Tuple[str, int, int]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        for col, tok in enumerate(line.split(), start=1):
            yield tok, lineno, col


def _int_token(tok: str, line: int, col: int, what: str) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {tok!r}", line, col) from None
    if value < 0:
        raise ParseError(f"negative {what} {value}", line, col)
    return value


def parse_lad(text: str, symmetrize: bool = False) -> Graph:
    """Parse the unlabelled LAD format.

    The first token is the vertex count ``n``; record ``i`` is a degree ``d``
    followed by ``d`` 0-based neighbour indices. An edge listed on one side only
    means the input is directed, which is rejected unless ``symmetrize`` is set.
    """
    it = _tokens(text)

    def take(what: str) -> Tuple[int, int, int]:
        try:
            tok, line, col = next(it)
        except StopIteration:
            raise ParseError(f"unexpected end of input while reading {what}") from None
        return _int_token(tok, line, col, what), line, col

    n, _, _ = take("vertex count")
    listed: List[set] = [set() for _ in range(n)]
    for i in range(n):
        d, _, _ = take(f"degree of vertex {i}")
        for _ in range(d):
            j, line, col = take(f"neighbour of vertex {i}")
            if j >= n:
                raise ParseError(f"neighbour index {j} out of range for n={n}", line, col)
            if j == i:
                raise ParseError(f"self-loop on vertex {i}", line, col)
            listed[i].add(j)
    extra = next(it, None)
    if extra is not None:
        raise ParseError(f"trailing token {extra[0]!r}", extra[1], extra[2])

    if not symmetrize:
        for i in range(n):
            for j in listed[i]:
                if i not in listed[j]:
                    raise ParseError(
                        f"edge {i}->{j} has no reverse listing; input looks directed "
                        "(pass symmetrize=True to treat it as undirected)"
                    )
    masks = [0] * n
    for i in range(n):
        for j in listed[i]:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
    return Graph(n, tuple(masks))


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS ``p edge n m`` / ``e u v`` files (1-based ids, ``c`` comments)."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno, 1)
            if len(parts) != 4:
                raise ParseError("problem line must be 'p edge n m'", lineno, 1)
            n = _int_token(parts[2], lineno, 3, "vertex count")
            _int_token(parts[3], lineno, 4, "edge count")
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before problem line", lineno, 1)
            if len(parts) != 3:
                raise ParseError("edge line must be 'e u v'", lineno, 1)
            u = _int_token(parts[1], lineno, 2, "vertex id")
            v = _int_token(parts[2], lineno, 3, "vertex id")
            for col, x in ((2, u), (3, v)):
                if not 1 <= x <= n:
                    raise ParseError(f"vertex id {x} outside [1, {n}]", lineno, col)
            if u == v:
                raise ParseError(f"self-loop on vertex {u}", lineno, 2)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", lineno, 1)
    if n is None:
        raise ParseError("missing 'p edge n m' header")
    return Graph.from_edges(n, edges)


def to_lad(g: Graph) -> str:
    lines = [str(g.n)]
    for v in range(g.n):
        nbrs = g.neighbors(v)
        lines.append(" ".join(str(x) for x in [len(nbrs), *nbrs]))
    return "\n".join(lines) + "\n"


def sniff_format(text: str) -> str:
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        return "dimacs" if parts[0] in ("p", "c") else "lad"
    return "lad"


def parse_graph(text: str, fmt: str = "auto", symmetrize: bool = False) -> Graph:
    if fmt == "auto":
        fmt = sniff_format(text)
    if fmt == "lad":
        return parse_lad(text, symmetrize=symmetrize)
    if fmt == "dimacs":
        return parse_dimacs(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def read_graph(path, fmt: str = "auto", symmetrize: bool = False) -> Graph:
    with open(path, encoding="utf-8") as f:
        return parse_graph(f.read(), fmt, symmetrize)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_graph(n: int, p: float, rng) -> Graph:
    """Erdos-Renyi G(n, p) drawn from a ``random.Random``-like ``rng``."""
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])

