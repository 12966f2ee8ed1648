"""Sunlet decompositions of tori and hypercubes.

The workhorse is :func:`attach_pendants`.  Write the host as
``Q_inner x Q_outer`` and orient the outer cube.  A copy of ``Q_inner`` over
an outer vertex with out-degree 0 carries a ready-made sunlet decomposition.
A copy over an outer vertex with out-degree r carries a cycle decomposition
in which every vertex lies on exactly r cycles.  At every such vertex the r
cycles are paired with the r out-neighbours, and each cycle takes the cross
edge to its partner as a pendant.  Every cross edge is then used once, by
the copy at its tail.
"""

from __future__ import annotations

from collections import defaultdict
from functools import cache
from typing import Callable

from .compose import CopyEmbedding, UnverifiedInputError, compose_product
from .cycles import (
    GRAY2,
    Orientation,
    cycle_decomposition_pow2,
    eulerian_orientation,
    hamiltonian_decomposition,
    parity_orientation,
    two_sink_orientation_q3,
)
from .graphcore import (
    Cycle,
    CyclePiece,
    Decomposition,
    Hypercube,
    PieceKind,
    Product,
    SunletPiece,
    cycle_graph,
    cartesian_product,
    edge,
    hypercube,
)
from .verify import ImpossibilityCertificate, counting_obstruction, divisibility_check, verify_decomposition

__all__ = [
    "CopyEmbedding",
    "ImpossibilityCertificate",
    "attach_pendants",
    "compose_product",
    "spanning_sunlets_q4n",
    "sunlet16",
    "sunlet16_q6",
    "sunlet16_q7",
    "sunlet16_q9",
    "sunlet_double",
    "sunlet_multiple",
    "sunlet_triple",
    "torus_cycles",
    "torus_sunlet_pair",
]

SUNLET16 = PieceKind.sunlet(16)
MAX_SUNLET16_DIMENSION = 14
MAX_MULTIPLE_DIMENSION = 16


# -- tori -------------------------------------------------------------------


def torus_cycles(k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two vertex-disjoint k^2/2-cycles of ``C_k x C_k`` (labels ``i*k + j``).

    Row i of the first cycle covers the k/2 columns starting at
    ``i * (k/2 - 1)``, then steps down a row at its last column; the second
    cycle is the first shifted by k/2 columns.
    """
    if k % 2 or k < 4:
        raise ValueError(f"torus side must be even and at least 4, got {k}")
    half = k // 2
    z1 = []
    for i in range(k):
        start = i * (half - 1)
        z1.extend(i * k + (start + s) % k for s in range(half))
    z2 = [(v // k) * k + (v % k + half) % k for v in z1]
    return tuple(z1), tuple(z2)


def _leftover_cycles(adj: dict[int, list[int]]) -> list[list[int]]:
    """Split a 2-regular graph into cycles, each starting at its smallest edge."""
    done = set()
    cycles = []
    for e in sorted({edge(u, w) for u, ws in adj.items() for w in ws}):
        if e in done:
            continue
        prev, cur = e
        walk = [prev]
        while cur != e[0]:
            walk.append(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        done.update(edge(walk[i - 1], walk[i]) for i in range(len(walk)))
        cycles.append(walk)
    return cycles


@cache
def torus_sunlet_pair(k: int) -> Decomposition:
    """Two spanning ``L_{k^2}`` pieces partitioning ``C_k x C_k``.

    The edges off both cycles form a 2-regular graph alternating between the
    two vertex sets.  Colouring each of its cycles alternately, starting from
    its smallest edge, gives the first sunlet one pendant edge per vertex and
    the second sunlet the rest.
    """
    z1, z2 = torus_cycles(k)
    host = cartesian_product(cycle_graph(k), cycle_graph(k))
    used = set(CyclePiece(z1).edges()) | set(CyclePiece(z2).edges())
    adj: dict[int, list[int]] = defaultdict(list)
    for u, w in host.edges - used:
        adj[u].append(w)
        adj[w].append(u)
    in_z1 = set(z1)
    pend1: dict[int, int] = {}
    pend2: dict[int, int] = {}
    for walk in _leftover_cycles(adj):
        for i, a in enumerate(walk):
            b = walk[(i + 1) % len(walk)]
            x1, x2 = (a, b) if a in in_z1 else (b, a)
            if i % 2 == 0:
                pend1[x1] = x2
            else:
                pend2[x2] = x1
    pieces = (
        SunletPiece(z1, tuple(pend1[v] for v in z1)),
        SunletPiece(z2, tuple(pend2[v] for v in z2)),
    )
    return Decomposition(Product(Cycle(k), Cycle(k)), PieceKind.sunlet(k * k), pieces)


def _relabel(d: Decomposition, f: Callable[[int], int], graph) -> Decomposition:
    return Decomposition(graph, d.kind, tuple(p.relabel(f) for p in d.pieces))


@cache
def spanning_sunlets_q4n(n: int) -> Decomposition:
    """2n spanning sunlets of Q_{4n}, two on each torus ``Z_i x Z_i``."""
    if not 1 <= n <= 3:
        raise ValueError(f"n must be in 1..3, got {n}")
    h = 2 * n
    size = 1 << h
    pieces = []
    pair = torus_sunlet_pair(size)
    for piece in hamiltonian_decomposition(h).pieces:
        z = piece.vertices
        pieces.extend(p.relabel(lambda x, z=z: z[x // size] << h | z[x % size]) for p in pair.pieces)
    return Decomposition(Hypercube(4 * n), PieceKind.sunlet(1 << (4 * n)), tuple(pieces))


@cache
def _sunlet16_q4() -> Decomposition:
    # Q_4 = C_4 x C_4 through the Gray code on each factor
    return _relabel(torus_sunlet_pair(4), lambda x: GRAY2[x // 4] << 2 | GRAY2[x % 4], Hypercube(4))


# -- pendant attachment ------------------------------------------------------


def _cycle_key(c: CyclePiece):
    return min(c.edges())


def attach_pendants(
    inner: int,
    orientation: Orientation,
    source: Callable[[int], Decomposition],
    kind: PieceKind,
) -> Decomposition:
    """Sunlet decomposition of ``Q_inner x Q_outer`` from per-copy decompositions.

    ``source(w)`` returns the decomposition of ``Q_inner`` used over outer
    vertex ``w``: sunlets of ``kind`` when w is a sink, otherwise cycles of
    length ``kind.cycle_length`` with exactly ``out_degree(w)`` of them
    through every vertex.
    """
    outer = orientation.graph
    outer_n = outer.descriptor.n
    outer_size = outer.vertex_count
    pieces = []
    for w in range(outer_size):
        copy = CopyEmbedding(w, outer_size)
        heads = orientation.out_neighbors(w)
        d = source(w)
        if d.graph != Hypercube(inner):
            raise ValueError(f"copy over {w} is not a decomposition of Q_{inner}")
        if not heads:
            if d.kind != kind:
                raise ValueError(f"sink copy {w} needs {kind} pieces, got {d.kind}")
            pieces.extend(p.relabel(copy) for p in d.pieces)
            continue
        if d.kind != PieceKind.cycle(kind.cycle_length):
            raise ValueError(f"copy {w} needs cycle({kind.cycle_length}) pieces, got {d.kind}")
        order = sorted(range(len(d.pieces)), key=lambda i: _cycle_key(d.pieces[i]))
        through: dict[int, list[int]] = defaultdict(list)
        for i in order:
            for v in d.pieces[i].vertices:
                through[v].append(i)
        partner: dict[tuple[int, int], int] = {}
        for v, cyc_ids in through.items():
            if len(cyc_ids) != len(heads):
                raise ValueError(f"vertex {v} of copy {w} lies on {len(cyc_ids)} cycles, out-degree is {len(heads)}")
            for i, head in zip(cyc_ids, heads):
                partner[i, v] = head
        for i, c in enumerate(d.pieces):
            cyc = tuple(copy(v) for v in c.vertices)
            pend = tuple(CopyEmbedding(partner[i, v], outer_size)(v) for v in c.vertices)
            pieces.append(SunletPiece(cyc, pend))
    return Decomposition(Hypercube(inner + outer_n), kind, tuple(pieces))


@cache
def sunlet16_q6() -> Decomposition:
    """12 copies of L_16 in Q_6 = Q_4 x C_4.

    Copies 0 and 2 around the C_4 carry the two spanning L_16 of Q_4; copies
    1 and 3 carry 8-cycles, two per vertex, each hung on copy 0 or copy 2.
    """
    quotient = hypercube(2)
    # C_4 positions 1 and 3 point at positions 0 and 2
    tails = {GRAY2[1], GRAY2[3]}
    forward = {(u, v): u in tails for u, v in quotient.edges}
    orientation = Orientation(quotient, forward)
    c8 = cycle_decomposition_pow2(4, 3)
    q4 = _sunlet16_q4()
    return attach_pendants(4, orientation, lambda w: c8 if w in tails else q4, SUNLET16)


@cache
def sunlet16_q7() -> Decomposition:
    """28 copies of L_16 in Q_7 = Q_4 x Q_3 over the two-sink gadget."""
    orientation = two_sink_orientation_q3()
    c8 = cycle_decomposition_pow2(4, 3)
    q4 = _sunlet16_q4()
    return attach_pendants(4, orientation, lambda w: c8 if orientation.out_neighbors(w) else q4, SUNLET16)


@cache
def sunlet16_q9() -> Decomposition:
    """144 copies of L_16 in Q_9 = Q_6 x Q_3 over the parity orientation."""
    orientation = parity_orientation(3)
    c8 = cycle_decomposition_pow2(6, 3)
    q6 = sunlet16_q6()
    return attach_pendants(6, orientation, lambda w: c8 if orientation.out_neighbors(w) else q6, SUNLET16)


@cache
def sunlet16(n: int) -> Decomposition | ImpossibilityCertificate:
    """An L_16-decomposition of Q_n, or the certificate that none exists."""
    if not 1 <= n <= MAX_SUNLET16_DIMENSION:
        raise ValueError(f"dimension must be in 1..{MAX_SUNLET16_DIMENSION}, got {n}")
    cert = divisibility_check(n) or counting_obstruction(n)
    if cert is not None:
        return cert
    if n == 4:
        return _sunlet16_q4()
    if n == 6:
        return sunlet16_q6()
    if n == 7:
        return sunlet16_q7()
    if n == 9:
        return sunlet16_q9()
    q4 = _sunlet16_q4()
    if n == 8:
        return compose_product(q4, q4)
    return compose_product(sunlet16(n - 4), q4)


# -- from C_k to L_2k ---------------------------------------------------------


def _check_cycle_input(cd: Decomposition) -> tuple[int, int]:
    if not isinstance(cd.graph, Hypercube) or cd.kind.shape != "cycle":
        raise ValueError("expected a cycle decomposition of a hypercube")
    n = cd.graph.n
    if n % 2:
        raise ValueError(f"Q_{n} has odd degree, it has no cycle decomposition")
    report = verify_decomposition(None, cd)
    if not report.valid:
        raise UnverifiedInputError(f"cycle decomposition failed verification: {report.summary()}")
    return n, cd.kind.cycle_length


def sunlet_double(cd: Decomposition) -> Decomposition:
    """L_2k-decomposition of Q_2n from a C_k-decomposition of Q_n."""
    n, k = _check_cycle_input(cd)
    orientation = eulerian_orientation(hypercube(n))
    return attach_pendants(n, orientation, lambda w: cd, PieceKind.sunlet(2 * k))


def sunlet_triple(cd: Decomposition) -> Decomposition:
    """L_2k-decomposition of Q_3n = Q_2n x Q_n.

    Odd outer vertices carry :func:`sunlet_double`; even ones carry the
    product of ``cd`` with itself, n cycles through each vertex.
    """
    n, k = _check_cycle_input(cd)
    sinks = sunlet_double(cd)
    squared = compose_product(cd, cd, check=False)
    orientation = parity_orientation(n)
    return attach_pendants(
        2 * n, orientation, lambda w: squared if orientation.out_neighbors(w) else sinks, PieceKind.sunlet(2 * k)
    )


def split_multiple(m: int) -> tuple[int, int]:
    """``m = 2a + 3b`` with ``b = m mod 2``."""
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")
    b = m % 2
    return (m - 3 * b) // 2, b


def sunlet_multiple(m: int, cd: Decomposition) -> Decomposition:
    """L_2k-decomposition of Q_mn: a doubles and b triples, folded as a product."""
    a, b = split_multiple(m)
    n, _ = _check_cycle_input(cd)
    if m * n > MAX_MULTIPLE_DIMENSION:
        raise ValueError(f"Q_{m * n} exceeds the size cap Q_{MAX_MULTIPLE_DIMENSION}")
    factors = [sunlet_double(cd)] * a + [sunlet_triple(cd)] * b
    d = factors[0]
    for f in factors[1:]:
        d = compose_product(d, f)
    return d

