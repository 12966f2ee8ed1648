"""Independent checks: edge partitions, impossibility arithmetic, and an
exhaustive exact-cover oracle for small hosts.

Nothing here calls into the constructive modules.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import product as cartesian

from .graphcore import (
    CyclePiece,
    Decomposition,
    Edge,
    Graph,
    PieceKind,
    SunletPiece,
    build_graph,
    classify_piece,
)

SUNLET16 = PieceKind.sunlet(16)
ORACLE_MAX_EDGES = 256


@dataclass(frozen=True)
class Failure:
    kind: str  # missing_edge | duplicated_edge | foreign_edge | bad_piece
    edge: Edge | None = None
    piece: int | None = None
    reason: str = ""

    def __str__(self) -> str:
        if self.kind == "bad_piece":
            return f"bad_piece({self.piece}): {self.reason}"
        where = f" in piece {self.piece}" if self.piece is not None else ""
        return f"{self.kind} {self.edge}{where}"


@dataclass(frozen=True)
class VerificationReport:
    failures: tuple[Failure, ...]
    piece_count: int

    @property
    def valid(self) -> bool:
        return not self.failures

    def kinds(self) -> set[str]:
        return {f.kind for f in self.failures}

    def summary(self, limit: int = 5) -> str:
        if self.valid:
            return f"valid ({self.piece_count} pieces)"
        shown = "; ".join(map(str, self.failures[:limit]))
        more = len(self.failures) - limit
        return f"invalid, {len(self.failures)} failure(s): {shown}" + (f"; +{more} more" if more > 0 else "")


def _piece_shape_problem(piece, kind: PieceKind, es: list[Edge]) -> str | None:
    """Problems with the declared structure that the edge set alone may hide."""
    if kind.shape == "cycle":
        if not isinstance(piece, CyclePiece):
            return "sunlet piece in a cycle decomposition"
        vs = piece.vertices
    else:
        if not isinstance(piece, SunletPiece):
            return "cycle piece in a sunlet decomposition"
        vs = piece.cycle + piece.pendants
        if len(piece.pendants) != len(piece.cycle):
            return "pendant count differs from cycle length"
    if len(set(vs)) != len(vs):
        return "repeated vertex"
    if len(es) != kind.edge_count:
        return f"expected {kind.edge_count} edges, got {len(es)}"
    return None


def verify_decomposition(host: Graph | None, d: Decomposition) -> VerificationReport:
    """Check that ``d.pieces`` partition ``E(host)`` into copies of ``d.kind``.

    ``host`` defaults to the graph built from ``d.graph``.
    """
    if host is None:
        host = build_graph(d.graph)
    host_edges = host.edges
    failures: list[Failure] = []
    seen: Counter[Edge] = Counter()
    for i, piece in enumerate(d.pieces):
        es = piece.edges()
        failures.extend(Failure("foreign_edge", e, i) for e in es if e not in host_edges)
        seen.update(es)
        problem = _piece_shape_problem(piece, d.kind, es)
        if problem is None:
            got = classify_piece(host, es)
            if got != d.kind:
                problem = f"classified as {got or 'other'}, declared {d.kind}"
        if problem:
            failures.append(Failure("bad_piece", piece=i, reason=problem))
    repeated = {e: c for e, c in seen.items() if c > 1}
    if repeated:
        first_piece: dict[Edge, int] = {}
        for i, piece in enumerate(d.pieces):
            for e in piece.edges():
                if e in repeated:
                    first_piece.setdefault(e, i)
        for e, c in repeated.items():
            failures.append(Failure("duplicated_edge", e, first_piece[e], f"covered {c} times"))
    failures.extend(Failure("missing_edge", e) for e in sorted(host_edges - seen.keys()))
    return VerificationReport(tuple(failures), len(d.pieces))


# -- impossibility arithmetic ------------------------------------------------


@dataclass(frozen=True)
class ImpossibilityCertificate:
    """Arithmetic witness that Q_n has no L_16-decomposition.

    ``divisibility``: detail is ``(16, n * 2^(n-1))`` with 16 not dividing the
    edge count.  ``degree_counting``: detail is ``(pieces, forced_vertices,
    available_vertices)``; no vertex of Q_n can be a degree-3 vertex of two
    sunlets when n < 6, so the 8 per piece must be distinct.
    """

    dimension: int
    reason: str
    detail: tuple[int, ...]

    def holds(self) -> bool:
        """Recompute from the dimension alone and compare with the stored fields."""
        if self.reason == "divisibility":
            return self == divisibility_check(self.dimension)
        if self.reason == "degree_counting":
            return divisibility_check(self.dimension) is None and self == counting_obstruction(self.dimension)
        return False

    def to_obj(self) -> dict:
        obj: dict = {"dimension": self.dimension, "reason": self.reason}
        if self.reason == "divisibility":
            obj["piece_edges"], obj["host_edges"] = self.detail
        else:
            obj["pieces"], obj["forced_vertices"], obj["available_vertices"] = self.detail
        return obj


def divisibility_check(n: int) -> ImpossibilityCertificate | None:
    """None when 16 divides |E(Q_n)|, else a divisibility certificate."""
    if n < 1:
        raise ValueError("dimension must be positive")
    m = n << (n - 1)
    if m % 16:
        return ImpossibilityCertificate(n, "divisibility", (16, m))
    return None


def counting_obstruction(n: int) -> ImpossibilityCertificate | None:
    """Degree-3 counting argument; only bites when the degree n is below 6."""
    m = n << (n - 1)
    if m % 16:
        raise ValueError(f"Q_{n} already fails divisibility")
    pieces = m // 16
    forced = 8 * pieces
    available = 1 << n
    # a vertex serving as hub (degree 3) in two sunlets needs degree >= 6
    if n < 6 and forced > available:
        return ImpossibilityCertificate(n, "degree_counting", (pieces, forced, available))
    return None


# -- exact-cover oracle ------------------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    status: str  # "found" | "exhausted" | "timeout"
    decomposition: Decomposition | None = None
    nodes: int = 0
    embeddings: int = field(default=0)


def _cycles(host: Graph, k: int) -> list[tuple[int, ...]]:
    """Every k-cycle once: starts at its minimum vertex, second < last."""
    adj = host.adjacency
    found = []
    for s in range(host.vertex_count):
        path = [s]
        on = {s}

        def grow(x):
            for y in adj[x]:
                if y <= s:
                    if y == s and len(path) == k and path[1] < path[-1]:
                        found.append(tuple(path))
                    continue
                if y in on or len(path) == k:
                    continue
                path.append(y)
                on.add(y)
                grow(y)
                on.discard(y)
                path.pop()

        grow(s)
    return found


def _embeddings(host: Graph, kind: PieceKind):
    k = kind.cycle_length
    adj = host.adjacency
    for cyc in _cycles(host, k):
        if kind.shape == "cycle":
            yield CyclePiece(cyc)
            continue
        on = set(cyc)
        options = [[w for w in adj[c] if w not in on] for c in cyc]
        for choice in cartesian(*options):
            if len(set(choice)) == k:
                yield SunletPiece(cyc, choice)


def brute_force_decompose(
    host: Graph, kind: PieceKind, seed: int = 0, timeout: float | None = 30.0
) -> OracleResult:
    """Exhaustive exact cover of ``E(host)`` by embeddings of ``kind``.

    All embeddings are enumerated up front as edge bitmasks; the search always
    branches on the lowest-indexed uncovered edge.  ``exhausted`` proves that
    no decomposition exists; ``timeout`` proves nothing.
    """
    if len(host.edges) > ORACLE_MAX_EDGES:
        raise ValueError(f"oracle is limited to {ORACLE_MAX_EDGES} edges")
    if len(host.edges) % kind.edge_count:
        return OracleResult("exhausted")
    index = {e: i for i, e in enumerate(sorted(host.edges))}
    full = (1 << len(index)) - 1
    by_edge: list[list[tuple[int, object]]] = [[] for _ in index]
    count = 0
    for piece in _embeddings(host, kind):
        mask = 0
        for e in piece.edges():
            mask |= 1 << index[e]
        by_edge[(mask & -mask).bit_length() - 1].append((mask, piece))
        count += 1
    rng = random.Random(seed)
    for bucket in by_edge:
        rng.shuffle(bucket)

    deadline = None if timeout is None else time.monotonic() + timeout
    chosen = []
    nodes = 0

    def solve(covered: int) -> bool | None:
        nonlocal nodes
        if covered == full:
            return True
        free = ~covered & full
        pivot = (free & -free).bit_length() - 1
        # embeddings are filed under their lowest edge, which must be the pivot
        for mask, piece in by_edge[pivot]:
            if mask & covered:
                continue
            nodes += 1
            if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
                return None
            chosen.append(piece)
            r = solve(covered | mask)
            if r is not False:
                return r
            chosen.pop()
        return False

    r = solve(0)
    if r is None:
        return OracleResult("timeout", nodes=nodes, embeddings=count)
    if not r:
        return OracleResult("exhausted", nodes=nodes, embeddings=count)
    d = Decomposition(host.descriptor, kind, tuple(chosen))
    return OracleResult("found", d, nodes, count)
