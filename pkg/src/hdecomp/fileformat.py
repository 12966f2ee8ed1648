"""The ``hdecomp/1`` decomposition file format.

A file is a JSON object with keys in this fixed order::

    format_tag  "hdecomp/1"
    graph       {"type": "hypercube", "n": 6} | {"type": "cycle", "k": 4}
                | {"type": "product", "left": ..., "right": ...}
    piece       {"kind": "cycle" | "sunlet", "cycle_length": k}
    pieces      [{"cycle": [...]} | {"cycle": [...], "pendants": [[c, p], ...]}]
    meta        {"generator": str, "seed": int, "tool_version": str}

Serialisation is canonical: one piece per line, no floats, no trailing
whitespace, so equal decompositions give byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .graphcore import (
    MAX_DIMENSION,
    Cycle,
    CyclePiece,
    Decomposition,
    GraphDescriptor,
    Hypercube,
    PieceKind,
    Product,
    SunletPiece,
)

FORMAT_TAG = "hdecomp/1"


class FormatError(ValueError):
    pass


def descriptor_to_obj(desc: GraphDescriptor) -> dict[str, Any]:
    if isinstance(desc, Hypercube):
        return {"type": "hypercube", "n": desc.n}
    if isinstance(desc, Cycle):
        return {"type": "cycle", "k": desc.k}
    return {"type": "product", "left": descriptor_to_obj(desc.left), "right": descriptor_to_obj(desc.right)}


def descriptor_from_obj(obj: Any) -> GraphDescriptor:
    if not isinstance(obj, dict):
        raise FormatError("graph must be an object")
    kind = obj.get("type")
    try:
        if kind == "hypercube":
            n = _nonneg_int(obj["n"], "n")
            if not 1 <= n <= MAX_DIMENSION:
                raise FormatError(f"hypercube dimension {n} outside 1..{MAX_DIMENSION}")
            return Hypercube(n)
        if kind == "cycle":
            k = _nonneg_int(obj["k"], "k")
            if k < 3:
                raise FormatError(f"cycle length {k} is below 3")
            return Cycle(k)
        if kind == "product":
            return Product(descriptor_from_obj(obj["left"]), descriptor_from_obj(obj["right"]))
    except KeyError as exc:
        raise FormatError(f"graph descriptor missing field {exc}") from None
    raise FormatError(f"unknown graph type {kind!r}")


def _nonneg_int(x: Any, what: str) -> int:
    if type(x) is not int or x < 0:
        raise FormatError(f"{what} must be a non-negative integer, got {x!r}")
    return x


def _piece_obj(p) -> dict[str, Any]:
    if isinstance(p, SunletPiece):
        return {"cycle": list(p.cycle), "pendants": [[c, q] for c, q in zip(p.cycle, p.pendants)]}
    return {"cycle": list(p.vertices)}


def _dump(obj: Any) -> str:
    return json.dumps(obj, separators=(", ", ": "), ensure_ascii=True)


def dumps(d: Decomposition, generator: str = "", seed: int = 0) -> str:
    from . import __version__

    meta = {"generator": generator, "seed": seed, "tool_version": __version__}
    piece = {"kind": d.kind.shape, "cycle_length": d.kind.cycle_length}
    lines = [
        "{",
        f'"format_tag": {_dump(FORMAT_TAG)},',
        f'"graph": {_dump(descriptor_to_obj(d.graph))},',
        f'"piece": {_dump(piece)},',
        '"pieces": [',
    ]
    body = [_dump(_piece_obj(p)) for p in d.pieces]
    lines.extend(s + "," for s in body[:-1])
    lines.extend(body[-1:])
    lines.append("],")
    lines.append(f'"meta": {_dump(meta)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps_edges(d: Decomposition) -> str:
    """Plain ``u v`` lines, one block per piece."""
    out = []
    for i, p in enumerate(d.pieces):
        out.append(f"# piece {i}")
        out.extend(f"{u} {v}" for u, v in p.edges())
    return "\n".join(out) + "\n"


def loads(text: str) -> tuple[Decomposition, dict[str, Any]]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict) or obj.get("format_tag") != FORMAT_TAG:
        raise FormatError(f"missing or unsupported format_tag (expected {FORMAT_TAG!r})")
    for key in ("graph", "piece", "pieces"):
        if key not in obj:
            raise FormatError(f"missing field {key!r}")
    graph = descriptor_from_obj(obj["graph"])
    spec = obj["piece"]
    if not isinstance(spec, dict):
        raise FormatError("piece must be an object")
    try:
        kind = PieceKind(spec.get("kind"), _nonneg_int(spec.get("cycle_length"), "cycle_length"))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    k = kind.cycle_length
    if not isinstance(obj["pieces"], list):
        raise FormatError("pieces must be a list")

    pieces = []
    for i, raw in enumerate(obj["pieces"]):
        if not isinstance(raw, dict) or not isinstance(raw.get("cycle"), list):
            raise FormatError(f"piece {i}: missing cycle list")
        cycle = tuple(_nonneg_int(x, f"piece {i} label") for x in raw["cycle"])
        if kind.shape == "cycle":
            if "pendants" in raw:
                raise FormatError(f"piece {i}: pendants given for a cycle piece")
            pieces.append(CyclePiece(cycle))
            continue
        pend = raw.get("pendants")
        if not isinstance(pend, list) or len(pend) != k or len(cycle) != k:
            raise FormatError(f"piece {i}: sunlet needs {k} cycle vertices and {k} pendants")
        pmap = {}
        for pair in pend:
            if not isinstance(pair, list) or len(pair) != 2:
                raise FormatError(f"piece {i}: pendant entries are [cycle_vertex, pendant]")
            c, q = (_nonneg_int(x, f"piece {i} label") for x in pair)
            pmap[c] = q
        if set(pmap) != set(cycle):
            raise FormatError(f"piece {i}: pendant map does not match the cycle vertices")
        pieces.append(SunletPiece(cycle, tuple(pmap[c] for c in cycle)))

    meta = obj.get("meta", {})
    return Decomposition(graph, kind, tuple(pieces)), meta if isinstance(meta, dict) else {}


def read(path: str | Path) -> tuple[Decomposition, dict[str, Any]]:
    return loads(Path(path).read_text())


def write(path: str | Path, d: Decomposition, generator: str = "", seed: int = 0) -> None:
    Path(path).write_text(dumps(d, generator, seed))
