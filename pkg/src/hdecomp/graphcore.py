"""Vertex labels, graph construction and piece recognizers.

Labels are plain non-negative integers.  In a hypercube ``Q_n`` bit ``d - 1``
of a label is coordinate ``x_d``, so neighbours differ in exactly one bit.
Products flatten a pair ``(u, v)`` of ``G1 x G2`` to ``u * |V(G2)| + v`` (high
factor first); with this convention ``Q_a x Q_b`` is literally ``Q_{a+b}``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Union

MAX_DIMENSION = 24

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Canonical (low, high) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


def parity(v: int) -> int:
    """0 for even weight, 1 for odd weight."""
    return v.bit_count() & 1


# -- descriptors ------------------------------------------------------------


@dataclass(frozen=True)
class Hypercube:
    n: int

    @property
    def vertex_count(self) -> int:
        return 1 << self.n

    def __str__(self) -> str:
        return f"Q{self.n}"


@dataclass(frozen=True)
class Cycle:
    k: int

    @property
    def vertex_count(self) -> int:
        return self.k

    def __str__(self) -> str:
        return f"C{self.k}"


@dataclass(frozen=True)
class Product:
    left: "GraphDescriptor"
    right: "GraphDescriptor"

    @property
    def vertex_count(self) -> int:
        return self.left.vertex_count * self.right.vertex_count

    def __str__(self) -> str:
        right = f"({self.right})" if isinstance(self.right, Product) else str(self.right)
        return f"{self.left}x{right}"


GraphDescriptor = Union[Hypercube, Cycle, Product]


def product_descriptor(left: GraphDescriptor, right: GraphDescriptor) -> GraphDescriptor:
    """Descriptor of ``left x right``; two hypercubes collapse to one."""
    if isinstance(left, Hypercube) and isinstance(right, Hypercube):
        return Hypercube(left.n + right.n)
    return Product(left, right)


def parse_descriptor(text: str) -> GraphDescriptor:
    """Parse ``Q6``, ``C8`` or ``x``-joined factors such as ``C4xC4``.

    Products associate to the left; adjacent hypercube factors merge.
    """
    factors = []
    for token in text.strip().lower().split("x"):
        if len(token) < 2 or token[0] not in "qc" or not token[1:].isdigit():
            raise ValueError(f"bad graph descriptor {text!r}")
        size = int(token[1:])
        if size < (1 if token[0] == "q" else 3):
            raise ValueError(f"bad graph descriptor {text!r}: {token} is too small")
        factors.append(Hypercube(size) if token[0] == "q" else Cycle(size))
    desc = factors[0]
    for f in factors[1:]:
        desc = product_descriptor(desc, f)
    return desc


# -- graphs -----------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[Edge]
    descriptor: GraphDescriptor | None = field(default=None, compare=False)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


def hypercube(n: int) -> Graph:
    if not 1 <= n <= MAX_DIMENSION:
        raise ValueError(f"hypercube dimension must be in 1..{MAX_DIMENSION}, got {n}")
    edges = frozenset(
        (u, u | bit) for u in range(1 << n) for bit in (1 << d for d in range(n)) if not u & bit
    )
    return Graph(1 << n, edges, Hypercube(n))


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError(f"cycle length must be at least 3, got {k}")
    return Graph(k, frozenset(edge(i, (i + 1) % k) for i in range(k)), Cycle(k))


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    n2 = g2.vertex_count
    edges = set()
    for v in range(n2):
        edges.update((a * n2 + v, b * n2 + v) for a, b in g1.edges)
    for u in range(g1.vertex_count):
        edges.update((u * n2 + a, u * n2 + b) for a, b in g2.edges)
    desc = None
    if g1.descriptor is not None and g2.descriptor is not None:
        desc = product_descriptor(g1.descriptor, g2.descriptor)
    return Graph(g1.vertex_count * n2, frozenset(edges), desc)


def build_graph(desc: GraphDescriptor) -> Graph:
    if isinstance(desc, Hypercube):
        return hypercube(desc.n)
    if isinstance(desc, Cycle):
        return cycle_graph(desc.k)
    return cartesian_product(build_graph(desc.left), build_graph(desc.right))


# -- pieces -----------------------------------------------------------------


@dataclass(frozen=True)
class PieceKind:
    """``cycle(k)`` or ``sunlet(2k)``; both are keyed by the cycle length k."""

    shape: str
    cycle_length: int

    def __post_init__(self) -> None:
        if self.shape not in ("cycle", "sunlet"):
            raise ValueError(f"unknown piece shape {self.shape!r}")
        if self.cycle_length < 3:
            raise ValueError("cycle length must be at least 3")

    @classmethod
    def cycle(cls, k: int) -> "PieceKind":
        return cls("cycle", k)

    @classmethod
    def sunlet(cls, order: int) -> "PieceKind":
        if order % 2:
            raise ValueError("sunlet order must be even")
        return cls("sunlet", order // 2)

    @property
    def edge_count(self) -> int:
        return self.cycle_length * (2 if self.shape == "sunlet" else 1)

    def __str__(self) -> str:
        if self.shape == "cycle":
            return f"cycle({self.cycle_length})"
        return f"sunlet({2 * self.cycle_length})"


@dataclass(frozen=True, slots=True)
class CyclePiece:
    vertices: tuple[int, ...]

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [edge(vs[i - 1], vs[i]) for i in range(len(vs))]

    def relabel(self, f) -> "CyclePiece":
        return CyclePiece(tuple(map(f, self.vertices)))


@dataclass(frozen=True, slots=True)
class SunletPiece:
    """A cycle plus one pendant per cycle vertex, aligned with ``cycle``."""

    cycle: tuple[int, ...]
    pendants: tuple[int, ...]

    def edges(self) -> list[Edge]:
        cs = self.cycle
        out = [edge(cs[i - 1], cs[i]) for i in range(len(cs))]
        out.extend(edge(c, p) for c, p in zip(cs, self.pendants))
        return out

    def pendant_map(self) -> dict[int, int]:
        return dict(zip(self.cycle, self.pendants))

    def relabel(self, f) -> "SunletPiece":
        return SunletPiece(tuple(map(f, self.cycle)), tuple(map(f, self.pendants)))


Piece = Union[CyclePiece, SunletPiece]


@dataclass(frozen=True)
class Decomposition:
    graph: GraphDescriptor
    kind: PieceKind
    pieces: tuple[Piece, ...]

    def __len__(self) -> int:
        return len(self.pieces)


def _is_single_cycle(adj: dict[int, list[int]]) -> bool:
    """True if the 2-regular graph given by ``adj`` is connected."""
    start = next(iter(adj))
    prev, cur, seen = None, start, 1
    while True:
        a, b = adj[cur]
        nxt = b if a == prev else a
        if nxt == start:
            return seen == len(adj)
        prev, cur = cur, nxt
        seen += 1


def classify_piece(host: Graph, edges: Iterable[Edge]) -> PieceKind | None:
    """Recognise an edge set as ``cycle(k)``, ``sunlet(2k)`` or neither (None)."""
    es = {(u, v) if u < v else (v, u) for u, v in edges}
    if not es or not es <= host.edges:
        return None
    adj: dict[int, list[int]] = defaultdict(list)
    for u, v in es:
        adj[u].append(v)
        adj[v].append(u)
    deg = {v: len(a) for v, a in adj.items()}

    if all(d == 2 for d in deg.values()):
        if len(deg) >= 3 and _is_single_cycle(adj):
            return PieceKind.cycle(len(deg))
        return None

    hubs = [v for v, d in deg.items() if d == 3]
    leaves = [v for v, d in deg.items() if d == 1]
    if len(hubs) < 3 or len(hubs) != len(leaves) or len(hubs) + len(leaves) != len(deg):
        return None
    ring: dict[int, list[int]] = {}
    for h in hubs:
        ring[h] = [w for w in adj[h] if deg[w] == 3]
        if len(ring[h]) != 2:
            return None
    # every leaf hangs off a hub, and no hub carries two leaves (counts force it)
    if any(deg[adj[leaf][0]] != 3 for leaf in leaves):
        return None
    if not _is_single_cycle(ring):
        return None
    return PieceKind.sunlet(2 * len(hubs))
