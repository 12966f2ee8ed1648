"""Acceptance criteria, one test each, at the stated tolerances.

Every test records a one-line PASS/FAIL verdict; the lines are printed in the
terminal summary of any pytest run and directly when this file is executed
as a script.
"""

from __future__ import annotations

import dataclasses
import os
import subprocess
import sys
import time
from collections import Counter
from functools import _lru_cache_wrapper
from importlib import resources

import pytest

from hdecomp import compose, cycles, fileformat, sunlet
from hdecomp.cycles import cycle_decomposition_pow2, hamiltonian_decomposition
from hdecomp.graphcore import (
    CyclePiece,
    Hypercube,
    PieceKind,
    SunletPiece,
    build_graph,
    cartesian_product,
    cycle_graph,
    hypercube,
)
from hdecomp.sunlet import (
    ImpossibilityCertificate,
    sunlet16,
    sunlet_double,
    sunlet_multiple,
    sunlet_triple,
    torus_sunlet_pair,
)
from hdecomp.verify import brute_force_decompose, verify_decomposition

VERDICTS: list[str] = []


def record(number: int, ok: bool, text: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
    VERDICTS.append(line)
    print(line)


def cold() -> None:
    """Drop every memoised construction so timings include all the work."""
    for module in (compose, cycles, sunlet):
        for obj in vars(module).values():
            if isinstance(obj, _lru_cache_wrapper):
                obj.cache_clear()


def valid(d) -> bool:
    return verify_decomposition(build_graph(d.graph), d).valid


def edge_total(n: int) -> int:
    return n * 2 ** (n - 1)


# -- 1 ----------------------------------------------------------------------------


def test_criterion_1_sunlet16_positive():
    rows, ok = [], True
    for n in (4, 6, 7, 8, 9, 10, 11, 12):
        cold()
        t0 = time.perf_counter()
        d = sunlet16(n)
        good = not isinstance(d, ImpossibilityCertificate) and valid(d)
        elapsed = time.perf_counter() - t0
        expected = edge_total(n) // 16
        good = good and len(d) == expected and d.kind == PieceKind.sunlet(16) and elapsed < 10.0
        ok &= good
        rows.append(f"n={n}:{len(d)}/{expected} {elapsed:.2f}s")
    record(1, ok, "sunlet16 valid, n*2^(n-1)/16 pieces, each < 10 s | " + ", ".join(rows))
    assert ok, rows


# -- 2 ----------------------------------------------------------------------------


def _cli(*argv: str) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "hdecomp", *argv], capture_output=True, text=True)


def test_criterion_2_sunlet16_negative():
    import json

    rows, ok = [], True
    for n in (1, 2, 3):
        cert = sunlet16(n)
        r = _cli("generate", "sunlet16", "--n", str(n))
        good = (
            isinstance(cert, ImpossibilityCertificate)
            and cert.reason == "divisibility"
            and cert.detail == (16, edge_total(n))
            and cert.holds()
            and r.returncode == 2
            and json.loads(r.stdout)["certificate"] == cert.to_obj()
        )
        ok &= good
        rows.append(f"n={n}:divisibility exit={r.returncode}")
    cert = sunlet16(5)
    r = _cli("generate", "sunlet16", "--n", "5")
    good = (
        isinstance(cert, ImpossibilityCertificate)
        and cert.reason == "degree_counting"
        and cert.detail == (5, 40, 32)
        and cert.holds()
        and r.returncode == 2
        and json.loads(r.stdout)["certificate"]["forced_vertices"] == 40
    )
    ok &= good
    rows.append(f"n=5:degree_counting forced=40>available=32 exit={r.returncode}")
    record(2, ok, "impossibility certificates | " + ", ".join(rows))
    assert ok, rows


# -- 3 ----------------------------------------------------------------------------


def test_criterion_3_torus():
    rows, ok = [], True
    for k in (4, 6, 8, 10, 12):
        d = torus_sunlet_pair(k)
        good = len(d) == 2 and valid(d)
        for p in d.pieces:
            good &= len(set(p.cycle)) == k * k // 2 and len(set(p.pendants)) == k * k // 2
            good &= set(p.cycle) | set(p.pendants) == set(range(k * k))
        if k == 8:
            good &= all(len(p.cycle) == 32 and len(p.pendants) == 32 for p in d.pieces)
        ok &= good
        rows.append(f"k={k}:{'ok' if good else 'bad'}")
    record(3, ok, "torus pair: 2 spanning pieces, k^2/2 hubs + k^2/2 leaves, k=8 is 32+32 | " + ", ".join(rows))
    assert ok, rows


# -- 4 ----------------------------------------------------------------------------


def _load(d):
    load = Counter(v for p in d.pieces for v in p.vertices)
    return set(load.values()) if len(load) == d.graph.vertex_count else {0}


def test_criterion_4_cycle_blocks():
    rows, ok = [], True
    for n in (2, 4, 6, 8):
        d = hamiltonian_decomposition(n)
        good = len(d) == n // 2 and valid(d)
        good &= all(len(set(p.vertices)) == 2**n for p in d.pieces)
        good &= _load(d) == {n // 2}
        ok &= good
        rows.append(f"ham n={n}:{len(d)}")
    for (n, t), expected in {(4, 2): 8, (4, 3): 4, (6, 3): 24}.items():
        d = cycle_decomposition_pow2(n, t)
        good = len(d) == expected and valid(d) and _load(d) == {n // 2}
        ok &= good
        rows.append(f"C{2**t} in Q{n}:{len(d)}/{expected}")
    record(4, ok, "cycle blocks valid, n/2 pieces per vertex | " + ", ".join(rows))
    assert ok, rows


# -- 5 ----------------------------------------------------------------------------


def test_criterion_5_sunlets_from_cycles():
    square = hamiltonian_decomposition(2)
    rows, ok = [], True
    d = sunlet_double(square)
    good = len(d) == 4 and d.graph == Hypercube(4) and d.kind == PieceKind.sunlet(8) and valid(d)
    ok &= good
    rows.append(f"double:{len(d)}")
    d = sunlet_triple(square)
    good = len(d) == 24 and d.graph == Hypercube(6) and d.kind == PieceKind.sunlet(8) and valid(d)
    ok &= good
    rows.append(f"triple:{len(d)}")
    for m in range(2, 8):
        cold()
        t0 = time.perf_counter()
        d = sunlet_multiple(m, hamiltonian_decomposition(2))
        good = valid(d)
        elapsed = time.perf_counter() - t0
        mn = 2 * m
        expected = mn * 2 ** (mn - 1) // 8
        good = good and len(d) == expected and d.graph == Hypercube(mn) and elapsed < 60.0
        ok &= good
        rows.append(f"m={m}:{len(d)}/{expected} {elapsed:.2f}s")
    record(5, ok, "L_8 from C_4 of Q_2, m*n*2^(mn-1)/8 pieces, each < 60 s | " + ", ".join(rows))
    assert ok, rows


# -- 6 ----------------------------------------------------------------------------


def _labels(p):
    return p.vertices if isinstance(p, CyclePiece) else p.cycle + p.pendants


def _with(p, labels):
    if isinstance(p, CyclePiece):
        return CyclePiece(tuple(labels))
    k = len(p.cycle)
    return SunletPiece(tuple(labels[:k]), tuple(labels[k:]))


def _corruptions(d):
    """Every single-label change to a neighbouring label, and every pendant swing."""
    host = build_graph(d.graph)
    for i, p in enumerate(d.pieces):
        labels = list(_labels(p))
        for j, x in enumerate(labels):
            for y in host.adjacency[x]:
                changed = labels.copy()
                changed[j] = y
                yield i, _with(p, changed)
        if isinstance(p, SunletPiece):
            for j, c in enumerate(p.cycle):
                for y in host.adjacency[c]:
                    if y != p.pendants[j]:
                        yield i, SunletPiece(p.cycle, p.pendants[:j] + (y,) + p.pendants[j + 1:])


def _fixtures():
    out = {
        "torus k=4": torus_sunlet_pair(4),
        "L16 of Q4": sunlet16(4),
        "L16 of Q6": sunlet16(6),
        "C8 of Q4": cycle_decomposition_pow2(4, 3),
        "C8 of Q6": cycle_decomposition_pow2(6, 3),
        "L8 of Q4": sunlet_double(hamiltonian_decomposition(2)),
    }
    folder = resources.files("hdecomp") / "fixtures"
    for entry in sorted(folder.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            out[entry.name] = fileformat.loads(entry.read_text())[0]
    return out


def test_criterion_6_oracle_and_mutation():
    rows, ok = [], True
    torus = cartesian_product(cycle_graph(4), cycle_graph(4))
    for host, kind, constructive in (
        (torus, PieceKind.sunlet(16), torus_sunlet_pair(4)),
        (hypercube(4), PieceKind.cycle(8), cycle_decomposition_pow2(4, 3)),
    ):
        r = brute_force_decompose(host, kind)
        good = r.status == "found" and valid(r.decomposition) and valid(constructive)
        good &= len(r.decomposition) == len(constructive)
        ok &= good
        rows.append(f"oracle {kind} in {host.descriptor}:{r.status}")
    for n in (1, 2, 3):
        r = brute_force_decompose(hypercube(n), PieceKind.sunlet(16))
        ok &= r.status == "exhausted" and isinstance(sunlet16(n), ImpossibilityCertificate)

    mutants = caught = 0
    for name, d in _fixtures().items():
        host = build_graph(d.graph)
        ok &= verify_decomposition(host, d).valid
        for i, piece in _corruptions(d):
            mutants += 1
            pieces = list(d.pieces)
            pieces[i] = piece
            if not verify_decomposition(host, dataclasses.replace(d, pieces=tuple(pieces))).valid:
                caught += 1
    ok &= mutants > 0 and caught == mutants
    rows.append(f"mutants caught {caught}/{mutants}")
    record(6, ok, "oracle agrees with constructions; every single-edge corruption rejected | " + ", ".join(rows))
    assert ok, rows


# -- 7 ----------------------------------------------------------------------------


COMMANDS = (
    [["sunlet16", "--n", str(n)] for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12)]
    + [["torus-sunlet", "--k", str(k)] for k in (4, 6, 8, 10, 12)]
    + [["ham", "--n", str(n)] for n in (2, 4, 6, 8)]
    + [["cycles", "--n", "4", "--t", "2"], ["cycles", "--n", "4", "--t", "3"], ["cycles", "--n", "6", "--t", "3"]]
    + [["sunlet-multi", "--m", str(m), "--n", "2", "--k", "4"] for m in range(2, 8)]
)


def test_criterion_7_determinism(tmp_path):
    mismatched = []
    for argv in COMMANDS:
        blobs = []
        for run, hash_seed in enumerate(("0", "12345")):
            out = tmp_path / f"run{run}.json"
            env = dict(os.environ, PYTHONHASHSEED=hash_seed)
            r = subprocess.run(
                [sys.executable, "-m", "hdecomp", "generate", *argv, "--seed", "0", "--out", str(out)],
                capture_output=True,
                env=env,
            )
            blobs.append((r.returncode, out.read_bytes() if out.exists() else b""))
            out.unlink(missing_ok=True)
        (code_a, a), (code_b, b) = blobs
        if code_a not in (0, 2) or code_a != code_b or a != b or not a:
            mismatched.append(" ".join(argv))
    ok = not mismatched
    record(7, ok, f"{len(COMMANDS)} acceptance commands byte-identical across two processes"
           + (f" | differ: {mismatched}" if mismatched else ""))
    assert ok, mismatched


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
