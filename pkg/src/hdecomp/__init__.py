"""Sunlet and cycle decompositions of hypercubes, with an independent verifier."""

__version__ = "0.1.0"

from .compose import compose_product
from .cycles import (
    cycle_decomposition_pow2,
    eulerian_orientation,
    hamiltonian_decomposition,
    parity_orientation,
    two_sink_orientation_q3,
)
from .graphcore import (
    Decomposition,
    PieceKind,
    cartesian_product,
    classify_piece,
    cycle_graph,
    hypercube,
    parity,
)
from .sunlet import (
    spanning_sunlets_q4n,
    sunlet16,
    sunlet_double,
    sunlet_multiple,
    sunlet_triple,
    torus_sunlet_pair,
)
from .verify import ImpossibilityCertificate, brute_force_decompose, verify_decomposition

__all__ = [
    "Decomposition",
    "ImpossibilityCertificate",
    "PieceKind",
    "brute_force_decompose",
    "cartesian_product",
    "classify_piece",
    "compose_product",
    "cycle_decomposition_pow2",
    "cycle_graph",
    "eulerian_orientation",
    "hamiltonian_decomposition",
    "hypercube",
    "parity",
    "parity_orientation",
    "spanning_sunlets_q4n",
    "sunlet16",
    "sunlet_double",
    "sunlet_multiple",
    "sunlet_triple",
    "torus_sunlet_pair",
    "two_sink_orientation_q3",
    "verify_decomposition",
]
