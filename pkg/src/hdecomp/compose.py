"""Product composition of decompositions, plus the copy/embedding helpers.

If ``G1`` and ``G2`` both split into copies of ``H`` then so does ``G1 x G2``:
each ``G1``-layer carries a relabelled copy of the first decomposition and
each ``G2``-fiber a copy of the second.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphcore import Decomposition, product_descriptor


class UnverifiedInputError(ValueError):
    pass


@dataclass(frozen=True)
class CopyEmbedding:
    """The copy of an inner factor sitting over one vertex of the outer factor.

    With host labels ``inner * outer_size + outer`` the copy over
    ``quotient_vertex`` maps inner label ``u`` to ``u * outer_size + quotient_vertex``.
    """

    quotient_vertex: int
    outer_size: int

    def __call__(self, u: int) -> int:
        return u * self.outer_size + self.quotient_vertex

    def image(self, inner_size: int) -> range:
        return range(self.quotient_vertex, inner_size * self.outer_size, self.outer_size)


def _require_valid(d: Decomposition, name: str) -> None:
    from .verify import verify_decomposition

    report = verify_decomposition(None, d)
    if not report.valid:
        raise UnverifiedInputError(f"{name} failed verification: {report.summary()}")


def compose_product(d1: Decomposition, d2: Decomposition, check: bool = True) -> Decomposition:
    """Decomposition of ``d1.graph x d2.graph`` built from two same-kind inputs.

    Piece count is ``len(d1) * |V(G2)| + len(d2) * |V(G1)|``.  With
    ``check`` (the default) both inputs are verified first.
    """
    if d1.kind != d2.kind:
        raise ValueError(f"kind mismatch: {d1.kind} vs {d2.kind}")
    if check:
        _require_valid(d1, "left factor")
        _require_valid(d2, "right factor")
    n1 = d1.graph.vertex_count
    n2 = d2.graph.vertex_count
    pieces = []
    for v in range(n2):
        layer = CopyEmbedding(v, n2)
        pieces.extend(p.relabel(layer) for p in d1.pieces)
    for u in range(n1):
        base = u * n2
        pieces.extend(p.relabel(base.__add__) for p in d2.pieces)
    return Decomposition(product_descriptor(d1.graph, d2.graph), d1.kind, tuple(pieces))
