import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdecomp.graphcore import (
    Cycle,
    CyclePiece,
    Hypercube,
    PieceKind,
    Product,
    SunletPiece,
    build_graph,
    cartesian_product,
    classify_piece,
    cycle_graph,
    edge,
    hypercube,
    parse_descriptor,
    parity,
    product_descriptor,
)


@pytest.mark.parametrize("n, vertices, edges", [(1, 2, 1), (3, 8, 12), (5, 32, 80)])
def test_hypercube_counts(n, vertices, edges):
    g = hypercube(n)
    assert g.vertex_count == vertices
    assert len(g.edges) == edges


@pytest.mark.parametrize("n", [0, -1, 25])
def test_hypercube_out_of_range(n):
    with pytest.raises(ValueError):
        hypercube(n)


@given(st.integers(1, 14))
@settings(max_examples=14, deadline=None)
def test_hypercube_regular_and_bipartite(n):
    g = hypercube(n)
    assert len(g.edges) == n << (n - 1)
    assert all(g.degree(v) == n for v in range(g.vertex_count))
    for u, v in g.edges:
        assert u < v
        assert parity(u) != parity(v)
        x = u ^ v
        assert x & (x - 1) == 0


@pytest.mark.parametrize("k", [3, 4, 8])
def test_cycle_graph(k):
    g = cycle_graph(k)
    assert g.vertex_count == k
    assert len(g.edges) == k
    assert all(g.degree(v) == 2 for v in range(k))


def test_cycle_graph_too_short():
    with pytest.raises(ValueError):
        cycle_graph(2)


def test_torus_counts():
    g = cartesian_product(cycle_graph(4), cycle_graph(4))
    assert (g.vertex_count, len(g.edges)) == (16, 32)
    assert all(g.degree(v) == 4 for v in range(16))
    assert g.descriptor == Product(Cycle(4), Cycle(4))


def test_product_of_squares_is_q4():
    g = cartesian_product(hypercube(2), hypercube(2))
    assert g.edges == hypercube(4).edges
    assert g.descriptor == Hypercube(4)


def test_k2_square_is_c4():
    g = cartesian_product(hypercube(1), hypercube(1))
    assert classify_piece(g, g.edges) == PieceKind.cycle(4)


@given(st.integers(3, 5), st.integers(3, 5), st.integers(3, 5))
@settings(max_examples=20, deadline=None)
def test_product_associative(a, b, c):
    A, B, C = cycle_graph(a), cycle_graph(b), cycle_graph(c)
    left = cartesian_product(cartesian_product(A, B), C)
    right = cartesian_product(A, cartesian_product(B, C))
    # (x*b + y)*c + z == x*(b*c) + (y*c + z): the flattening agrees literally
    assert left.edges == right.edges


@given(st.integers(1, 6), st.integers(1, 6))
@settings(max_examples=20, deadline=None)
def test_product_edge_formula(a, b):
    g1, g2 = hypercube(a), cycle_graph(b + 2)
    g = cartesian_product(g1, g2)
    assert len(g.edges) == len(g1.edges) * g2.vertex_count + len(g2.edges) * g1.vertex_count


@pytest.mark.parametrize("v, p", [(0, 0), (7, 1), (5, 0)])
def test_parity(v, p):
    assert parity(v) == p


@pytest.mark.parametrize(
    "text, desc",
    [
        ("Q6", Hypercube(6)),
        ("C4", Cycle(4)),
        ("C4xC4", Product(Cycle(4), Cycle(4))),
        ("Q2xQ3", Hypercube(5)),
        ("C3xC4xC5", Product(Product(Cycle(3), Cycle(4)), Cycle(5))),
    ],
)
def test_parse_descriptor(text, desc):
    assert parse_descriptor(text) == desc
    assert build_graph(desc).vertex_count == desc.vertex_count


@pytest.mark.parametrize("text", ["", "Q", "K4", "C2", "Q4x", "Q0"])
def test_parse_descriptor_rejects(text):
    with pytest.raises(ValueError):
        parse_descriptor(text)


def test_parse_descriptor_case_insensitive():
    assert parse_descriptor("q4") == Hypercube(4)


def test_descriptor_strings():
    assert str(product_descriptor(Cycle(4), Cycle(4))) == "C4xC4"
    assert str(product_descriptor(Hypercube(2), Hypercube(4))) == "Q6"


def test_piece_kind():
    assert PieceKind.sunlet(16).cycle_length == 8
    assert PieceKind.sunlet(16).edge_count == 16
    assert str(PieceKind.sunlet(16)) == "sunlet(16)"
    assert str(PieceKind.cycle(8)) == "cycle(8)"
    with pytest.raises(ValueError):
        PieceKind.sunlet(7)
    with pytest.raises(ValueError):
        PieceKind("star", 4)


# -- recogniser -------------------------------------------------------------


def test_classify_sunlet16():
    # an 8-cycle of Q_4 with one spoke per cycle vertex
    ring = (0, 1, 3, 7, 15, 14, 12, 8)
    spokes = (2, 5, 11, 6, 13, 10, 4, 9)
    piece = SunletPiece(ring, spokes)
    assert classify_piece(hypercube(4), piece.edges()) == PieceKind.sunlet(16)


def test_classify_cycle_and_path():
    q2 = hypercube(2)
    assert classify_piece(q2, q2.edges) == PieceKind.cycle(4)
    q3 = hypercube(3)
    assert classify_piece(q3, [(0, 1), (1, 3), (3, 7)]) is None


def test_classify_rejects_foreign_and_empty():
    q3 = hypercube(3)
    assert classify_piece(q3, []) is None
    assert classify_piece(q3, [(0, 3), (3, 7), (7, 4), (4, 0)]) is None


def test_classify_two_disjoint_squares():
    q3 = hypercube(3)
    squares = CyclePiece((0, 1, 3, 2)).edges() + CyclePiece((4, 5, 7, 6)).edges()
    assert classify_piece(q3, squares) is None


def test_classify_two_sunlets_is_not_one():
    # two disjoint L_8 in a big torus look locally right but are disconnected
    g = cartesian_product(cycle_graph(8), cycle_graph(8))
    a = SunletPiece((0, 1, 9, 8), (7, 2, 10, 16))
    b = SunletPiece((36, 37, 45, 44), (35, 38, 46, 52))
    assert classify_piece(g, a.edges()) == PieceKind.sunlet(8)
    assert classify_piece(g, a.edges() + b.edges()) is None


def test_classify_cycle_with_chord_tail():
    # degree-3 vertex without the matching pendant structure
    g = cartesian_product(cycle_graph(6), cycle_graph(6))
    ring = CyclePiece((0, 1, 2, 8, 7, 6)).edges()
    assert classify_piece(g, ring + [edge(1, 7)]) is None


@st.composite
def sunlets_on_ladder(draw):
    """A random L_2k embedded in C_k x P: cycle on row 0, pendants up or down."""
    k = draw(st.integers(3, 64))
    ups = draw(st.lists(st.booleans(), min_size=k, max_size=k))
    host = cartesian_product(cycle_graph(3), cycle_graph(k))
    cycle = tuple(k + j for j in range(k))
    pendants = tuple((2 * k if up else 0) + j for j, up in zip(range(k), ups))
    return host, SunletPiece(cycle, pendants)


@given(sunlets_on_ladder())
@settings(max_examples=60, deadline=None)
def test_classify_random_sunlet(case):
    host, piece = case
    k = len(piece.cycle)
    assert classify_piece(host, piece.edges()) == PieceKind.sunlet(2 * k)
    # drop one pendant: no longer a sunlet
    assert classify_piece(host, piece.edges()[:-1]) is None
    # the bare ring is a k-cycle
    assert classify_piece(host, piece.edges()[:k]) == PieceKind.cycle(k)
