"""Positive definite lattices: Gram data, reduction and short vectors"""

from .enumeration import (
    BlockConsumer,
    CollectingConsumer,
    CountingConsumer,
    ShortVectorBlock,
    ShortVectorStream,
    enumerate_short,
    lattice_minimum,
)
from .gram_lattice import (
    GramLattice,
    LatticeVector,
    dual_lattice,
    inner,
    norm,
    pairing_matrix,
    read_lattice,
    sublattice,
    write_lattice,
)
from .reduction import is_lll_reduced, lll_reduce

__all__ = [
    "GramLattice",
    "LatticeVector",
    "inner",
    "norm",
    "dual_lattice",
    "sublattice",
    "pairing_matrix",
    "read_lattice",
    "write_lattice",
    "lll_reduce",
    "is_lll_reduced",
    "ShortVectorBlock",
    "ShortVectorStream",
    "BlockConsumer",
    "CountingConsumer",
    "CollectingConsumer",
    "enumerate_short",
    "lattice_minimum",
]


def __dir__():
    return __all__
