"""Cycle decompositions of even hypercubes and the orientation gadgets."""

from __future__ import annotations

import itertools
import logging
import os
import random
import time
from dataclasses import dataclass
from functools import cache, cached_property
from importlib import resources
from pathlib import Path

from . import fileformat, kernels
from .compose import compose_product
from .graphcore import (
    CyclePiece,
    Decomposition,
    Edge,
    Graph,
    Hypercube,
    PieceKind,
    edge,
    hypercube,
    parity,
)

log = logging.getLogger(__name__)

MAX_HAMILTONIAN_DIMENSION = 12
FIXTURE_ENV = "HDECOMP_FIXTURES"

GRAY2 = (0, 1, 3, 2)  # C_4 position -> Q_2 label


# -- orientations -----------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """A direction for every edge of ``graph``.

    ``forward[(u, v)]`` (with ``u < v``) is True when the edge points u -> v.
    """

    graph: Graph
    forward: dict[Edge, bool]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) if fwd else (v, u) for (u, v), fwd in sorted(self.forward.items())]

    @cached_property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.graph.vertex_count)]
        for t, h in self.arcs():
            out[t].append(h)
        return tuple(tuple(sorted(o, key=lambda h, t=t: (h ^ t, h))) for t, o in enumerate(out))

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        """Heads of arcs leaving v, ordered by flipped dimension."""
        return self._out[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return self.graph.degree(v) - len(self._out[v])

    def reversed(self) -> "Orientation":
        return Orientation(self.graph, {e: not f for e, f in self.forward.items()})


def eulerian_orientation(g: Graph) -> Orientation:
    """Orient ``g`` along an Eulerian circuit so that in(v) == out(v) everywhere.

    The circuit starts at vertex 0 and always leaves along the unused edge of
    lowest dimension (smallest label xor), so the result is deterministic.
    """
    odd = [v for v in range(g.vertex_count) if g.degree(v) % 2]
    if odd:
        raise ValueError(f"vertex {odd[0]} has odd degree {g.degree(odd[0])}")
    adj = [sorted(a, key=lambda w, v=v: (v ^ w, w)) for v, a in enumerate(g.adjacency)]
    ptr = [0] * g.vertex_count
    forward: dict[Edge, bool] = {}
    start = 0 if adj[0] else next((v for v in range(g.vertex_count) if adj[v]), None)
    stack = [start] if start is not None else []
    while stack:
        x = stack[-1]
        a = adj[x]
        while ptr[x] < len(a) and edge(x, a[ptr[x]]) in forward:
            ptr[x] += 1
        if ptr[x] == len(a):
            stack.pop()
            continue
        y = a[ptr[x]]
        forward[edge(x, y)] = x < y
        stack.append(y)
    if len(forward) != len(g.edges):
        raise ValueError("graph is disconnected")
    return Orientation(g, forward)


def parity_orientation(n: int) -> Orientation:
    """Every edge of Q_n directed from its even endpoint to its odd endpoint."""
    g = hypercube(n)
    return Orientation(g, {(u, v): parity(u) == 0 for u, v in g.edges})


@cache
def two_sink_orientation_q3() -> Orientation:
    """Q_3 with sinks 000 and 111, every other vertex having in 1 / out 2.

    Exhaustive over the 2^12 direction vectors (0 = low->high on the sorted
    edge list); the lexicographically smallest valid one is returned.
    """
    g = hypercube(3)
    edges = g.sorted_edges()
    sinks = {0, 7}
    for flags in itertools.product((0, 1), repeat=len(edges)):
        out = [0] * 8
        for (u, v), f in zip(edges, flags):
            out[v if f else u] += 1
        if all(out[v] == (0 if v in sinks else 2) for v in range(8)):
            return Orientation(g, {e: not f for e, f in zip(edges, flags)})
    raise AssertionError("no two-sink orientation of Q_3")  # pragma: no cover


# -- Hamiltonian decompositions --------------------------------------------


def torus_hamiltonian_pair(m: int, n: int) -> tuple[list[Edge], list[Edge]]:
    """Split ``C_m x C_n`` (labels ``i*n + j``) into two 2-factors.

    Row i keeps every horizontal edge except the one leaving column ``-i``,
    where it steps down instead.  Both factors are Hamiltonian cycles when
    m == n; for other shapes they are 2-factors that may need repair.
    """
    red: list[Edge] = []
    blue: list[Edge] = []
    for i in range(m):
        turn = (-i) % n
        for j in range(n):
            h = edge(i * n + j, i * n + (j + 1) % n)
            v = edge(i * n + j, ((i + 1) % m) * n + j)
            if j == turn:
                blue.append(h)
                red.append(v)
            else:
                red.append(h)
                blue.append(v)
    return red, blue


def _walk_two_factor(nbrs: list[list[int]], start: int = 0) -> list[int]:
    cyc = [start]
    prev, cur = start, min(nbrs[start])
    while cur != start:
        cyc.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    return cyc


def _count_cycles(nbrs: list[list[int]]) -> int:
    seen = bytearray(len(nbrs))
    count = 0
    for s in range(len(nbrs)):
        if seen[s]:
            continue
        count += 1
        seen[s] = 1
        prev, cur = s, nbrs[s][0]
        while cur != s:
            seen[cur] = 1
            a, b = nbrs[cur]
            prev, cur = cur, (b if a == prev else a)
    return count


def repair_two_factors(n: int, factors: list[list[Edge]], seed: int = 0, max_tries: int = 200_000) -> list[list[int]]:
    """Turn a 2-factorization of Q_n into a Hamiltonian one by 4-cycle switches.

    A hypercube square whose edges alternate between factors F and G can be
    switched (F takes G's two edges and vice versa) without changing any
    degree.  A switch is kept only when it lowers the total number of cycles
    in F and G.  Returns each factor as a vertex sequence.
    """
    nv = 1 << n
    rng = random.Random(seed)
    nbrs = []
    owner: dict[Edge, int] = {}
    for fi, es in enumerate(factors):
        nb: list[list[int]] = [[] for _ in range(nv)]
        for u, v in es:
            nb[u].append(v)
            nb[v].append(u)
            owner[edge(u, v)] = fi
        nbrs.append(nb)
    counts = [_count_cycles(nb) for nb in nbrs]

    def move(nb_from, nb_to, e):
        u, v = e
        nb_from[u].remove(v)
        nb_from[v].remove(u)
        nb_to[u].append(v)
        nb_to[v].append(u)

    tries = 0
    while max(counts) > 1:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"Hamiltonian repair of Q_{n} did not converge")
        u = rng.randrange(nv)
        d1, d2 = rng.sample(range(n), 2)
        a, b = u ^ (1 << d1), u ^ (1 << d1) ^ (1 << d2)
        c = u ^ (1 << d2)
        sq = [edge(u, a), edge(a, b), edge(b, c), edge(c, u)]
        f, g = owner[sq[0]], owner[sq[1]]
        if f == g or owner[sq[2]] != f or owner[sq[3]] != g:
            continue
        before = counts[f] + counts[g]
        for e in (sq[0], sq[2]):
            move(nbrs[f], nbrs[g], e)
        for e in (sq[1], sq[3]):
            move(nbrs[g], nbrs[f], e)
        cf, cg = _count_cycles(nbrs[f]), _count_cycles(nbrs[g])
        if cf + cg < before:
            counts[f], counts[g] = cf, cg
            owner[sq[0]] = owner[sq[2]] = g
            owner[sq[1]] = owner[sq[3]] = f
        else:
            for e in (sq[0], sq[2]):
                move(nbrs[g], nbrs[f], e)
            for e in (sq[1], sq[3]):
                move(nbrs[f], nbrs[g], e)
    return [_walk_two_factor(nb) for nb in nbrs]


@cache
def _hamiltonian_cycles(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 2:
        return (GRAY2,)
    if n % 4 == 0:
        # Q_n = Q_h x Q_h: each Z x Z is a square torus, split in two
        h = n // 2
        size = 1 << h
        cycles = []
        for z in _hamiltonian_cycles(h):
            for factor in torus_hamiltonian_pair(size, size):
                nb: list[list[int]] = [[] for _ in range(1 << n)]
                for x, y in factor:
                    hx = z[x // size] << h | z[x % size]
                    hy = z[y // size] << h | z[y % size]
                    nb[hx].append(hy)
                    nb[hy].append(hx)
                cycles.append(tuple(_walk_two_factor(nb)))
        return tuple(cycles)
    # Q_n = Q_{n-2} x C_4: torus on the first cycle, layers of the rest, then repair
    inner = _hamiltonian_cycles(n - 2)
    size = 1 << (n - 2)
    z = inner[0]
    factors = []
    for factor in torus_hamiltonian_pair(size, 4):
        factors.append([(z[x // 4] << 2 | GRAY2[x % 4], z[y // 4] << 2 | GRAY2[y % 4]) for x, y in factor])
    for y_cycle in inner[1:]:
        factors.append(
            [(a << 2 | w, b << 2 | w) for a, b in zip(y_cycle, y_cycle[1:] + y_cycle[:1]) for w in range(4)]
        )
    return tuple(tuple(c) for c in repair_two_factors(n, factors))


def hamiltonian_decomposition(n: int) -> Decomposition:
    """n/2 edge-disjoint Hamiltonian cycles of Q_n (n even)."""
    if n % 2 or not 2 <= n <= MAX_HAMILTONIAN_DIMENSION:
        raise ValueError(f"need an even dimension in 2..{MAX_HAMILTONIAN_DIMENSION}, got {n}")
    pieces = tuple(CyclePiece(c) for c in _hamiltonian_cycles(n))
    return Decomposition(Hypercube(n), PieceKind.cycle(1 << n), pieces)


# -- search -----------------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    status: str  # "found" | "exhausted" | "timeout"
    decomposition: Decomposition | None
    attempts: int
    steps: int


class SearchExhausted(RuntimeError):
    def __init__(self, message: str, status: str):
        super().__init__(message)
        self.status = status


def search_cycle_decomposition(
    g: Graph,
    k: int,
    seed: int = 0,
    timeout: float | None = 60.0,
    step_limit: int = 1_000_000,
) -> SearchResult:
    """Randomised restarts of the exact-cover kernel.

    Attempt i shuffles every adjacency list with ``Random(seed + i)`` and
    runs the kernel with a step budget that doubles every eight attempts (up
    to 64x).  An attempt that exhausts its whole tree proves nonexistence.
    """
    if len(g.edges) % k:
        return SearchResult("exhausted", None, 0, 0)
    edges = g.sorted_edges()
    eid = {e: i for i, e in enumerate(edges)}
    edge_u = [u for u, _ in edges]
    edge_v = [v for _, v in edges]
    deadline = None if timeout is None else time.monotonic() + timeout
    total = 0
    attempt = 0
    while True:
        rng = random.Random(seed + attempt)
        ptr, to, ids = [0], [], []
        for x, nb in enumerate(g.adjacency):
            nb = list(nb)
            rng.shuffle(nb)
            to.extend(nb)
            ids.extend(eid[edge(x, y)] for y in nb)
            ptr.append(len(to))
        limit = step_limit << min(attempt // 8, 6)
        status, flat, steps = kernels.cycle_cover(ptr, to, ids, edge_u, edge_v, k, limit)
        total += steps
        attempt += 1
        if status == kernels.FOUND:
            pieces = tuple(CyclePiece(tuple(flat[i:i + k])) for i in range(0, len(flat), k))
            d = Decomposition(g.descriptor, PieceKind.cycle(k), pieces)
            return SearchResult("found", d, attempt, total)
        if status == kernels.EXHAUSTED:
            return SearchResult("exhausted", None, attempt, total)
        if deadline is not None and time.monotonic() > deadline:
            return SearchResult("timeout", None, attempt, total)


def _fixture_name(n: int, t: int, seed: int) -> str:
    return f"cycles-q{n}-t{t}-s{seed}.json"


def _fixture_paths(name: str) -> list[Path]:
    paths = []
    override = os.environ.get(FIXTURE_ENV)
    if override:
        paths.append(Path(override) / name)
    paths.append(Path(str(resources.files("hdecomp") / "fixtures" / name)))
    return paths


def _load_fixture(n: int, t: int, seed: int) -> Decomposition | None:
    from .verify import verify_decomposition

    for path in _fixture_paths(_fixture_name(n, t, seed)):
        if not path.is_file():
            continue
        try:
            d, _ = fileformat.read(path)
        except fileformat.FormatError as exc:
            log.warning("ignoring unreadable fixture %s: %s", path, exc)
            continue
        if d.graph != Hypercube(n) or d.kind != PieceKind.cycle(1 << t):
            log.warning("ignoring fixture %s: wrong graph or kind", path)
            continue
        report = verify_decomposition(None, d)
        if not report.valid:
            log.warning("ignoring fixture %s: %s", path, report.summary())
            continue
        return d
    return None


def _store_fixture(d: Decomposition, n: int, t: int, seed: int) -> None:
    override = os.environ.get(FIXTURE_ENV)
    if not override:
        return
    path = Path(override) / _fixture_name(n, t, seed)
    path.parent.mkdir(parents=True, exist_ok=True)
    fileformat.write(path, d, generator=f"search cycles n={n} t={t}", seed=seed)


@cache
def cycle_decomposition_pow2(n: int, t: int, seed: int = 0, timeout: float | None = 60.0) -> Decomposition:
    """A decomposition of Q_n into cycles of length 2^t (n even, 2 <= t <= n).

    Tried in order: C_4 squares (t = 2), Hamiltonian cycles (t = n), a
    product split Q_a x Q_b with t <= a, b, and finally a fixture or a fresh
    exact-cover search.
    """
    if n % 2 or n < 2:
        raise ValueError(f"dimension must be even and at least 2, got {n}")
    if not 2 <= t <= n:
        raise ValueError(f"cycle exponent must be in 2..{n}, got {t}")
    if t == 2:
        square = hamiltonian_decomposition(2)
        d = square
        for _ in range(n // 2 - 1):
            d = compose_product(d, square)
        return d
    if t == n:
        return hamiltonian_decomposition(n)
    a = t + t % 2  # smallest even factor that can still host a 2^t-cycle
    if n - a >= t:
        return compose_product(
            cycle_decomposition_pow2(a, t, seed, timeout),
            cycle_decomposition_pow2(n - a, t, seed, timeout),
        )
    d = _load_fixture(n, t, seed)
    if d is not None:
        return d
    result = search_cycle_decomposition(hypercube(n), 1 << t, seed=seed, timeout=timeout)
    if result.decomposition is None:
        raise SearchExhausted(
            f"no C_{1 << t}-decomposition of Q_{n} found ({result.status} after {result.steps} steps)",
            result.status,
        )
    _store_fixture(result.decomposition, n, t, seed)
    return result.decomposition
