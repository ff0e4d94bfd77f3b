"""Test lattices, reduction and the short vector search"""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from twodist.exactla import IntMatrix, RatMatrix
from twodist.lattice import (
    CountingConsumer,
    GramLattice,
    dual_lattice,
    enumerate_short,
    is_lll_reduced,
    lattice_minimum,
    lll_reduce,
    norm,
    pairing_matrix,
    read_lattice,
    sublattice,
    write_lattice,
)
from twodist.system.exceptions import NotPositiveDefinite, RankMismatch

A2 = GramLattice(IntMatrix([[2, 1], [1, 2]]))


def _random_lattices(count: int, seed: int):
    """Random integral lattices of rank at most 4 whose coordinate box stays small"""
    rng = np.random.default_rng(seed)
    found = 0
    while found < count:
        rank = int(rng.integers(1, 5))
        basis = rng.integers(-3, 4, size=(rank, rank))
        if round(abs(np.linalg.det(basis.astype(float)))) == 0:
            continue
        gram = basis @ basis.T
        upper = Fraction(int(gram.diagonal().max()) + int(rng.integers(0, 4)))
        lower = Fraction(int(rng.integers(1, int(upper) + 1)))
        radii = np.sqrt(float(upper) * np.diag(np.linalg.inv(gram.astype(float))))
        box = [int(np.floor(r + 1e-6)) for r in radii]
        if np.prod([2 * b + 1 for b in box]) > 20_000:
            continue
        found += 1
        yield GramLattice(IntMatrix(gram)), lower, upper, box


def _box_count(lattice: GramLattice, lower: Fraction, upper: Fraction, box) -> int:
    gram = lattice.gram.to_int().to_int64()
    coords = np.array(list(itertools.product(*(range(-b, b + 1) for b in box))), dtype=np.int64)
    values = np.einsum("ij,jk,ik->i", coords, gram, coords)
    return int(np.count_nonzero((values >= int(lower)) & (values <= int(upper))))


def test_a2_short_vectors():
    """tester for the six roots of A2"""

    stream = enumerate_short(A2, Fraction(2), Fraction(2))
    found = stream.collect()
    assert len(found) == 3, "A2 has three pairs of roots."
    assert all(value == 2 for _, value in found), "Norms are wrong."
    assert all(next(x for x in vector if x) > 0 for vector, _ in found), "Vectors are not canonical."
    assert lattice_minimum(A2) == 2, "Minimum of A2 is 2."


def test_enumeration_against_box():
    """tester for the search against brute force over a coordinate box"""

    for lattice, lower, upper, box in _random_lattices(100, seed=11):
        expected = _box_count(lattice, lower, upper, box)
        assert expected % 2 == 0, "Box count has to be symmetric."
        stream = enumerate_short(lattice, lower, upper)
        assert stream.count() == expected // 2, f"Float guided search misses vectors of {lattice}."


def test_exact_and_float_guides_agree():
    """tester for exact rational search windows"""

    for lattice, lower, upper, _ in _random_lattices(20, seed=5):
        floating = enumerate_short(lattice, lower, upper).collect()
        exact = enumerate_short(lattice, lower, upper, exact=True).collect()
        assert floating == exact, "Exact and float guided searches differ."


def test_parallel_determinism():
    """tester for equal results with one and two workers"""

    gram = IntMatrix([[4, 1, 0, 1], [1, 5, 2, 0], [0, 2, 6, 1], [1, 0, 1, 7]])
    lattice = GramLattice(gram)
    serial = enumerate_short(lattice, Fraction(4), Fraction(30)).reduce(CountingConsumer())
    parallel = enumerate_short(lattice, Fraction(4), Fraction(30)).reduce(CountingConsumer(), workers=2)
    assert serial.histogram == parallel.histogram, "Worker count changes the result."
    assert serial.minimum == 4, "Smallest norm is wrong."


def test_block_size_does_not_matter():
    """tester for the block splitting of the stream"""

    lattice = GramLattice(IntMatrix([[3, 1, 1], [1, 3, 1], [1, 1, 3]]))
    big = enumerate_short(lattice, Fraction(1), Fraction(12)).collect()
    small = enumerate_short(lattice, Fraction(1), Fraction(12), block_size=2).collect()
    assert big == small, "Block size changes the result."


def test_invalid_window():
    """tester for the norm window check"""

    with pytest.raises(ValueError):
        enumerate_short(A2, Fraction(0), Fraction(2))
    with pytest.raises(ValueError):
        enumerate_short(A2, Fraction(3), Fraction(2))


def test_not_positive_definite():
    """tester for the positive definiteness check"""

    with pytest.raises(NotPositiveDefinite):
        GramLattice(IntMatrix([[1, 2], [2, 1]]))


def test_lll_reduce_keeps_points():
    """tester for LLL reduction with named points"""

    gram = IntMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    unimodular = IntMatrix([[1, 5, 7], [0, 1, 3], [0, 0, 1]])
    lattice = GramLattice(gram, {"a": (1, 2, 3)}).transformed(unimodular)
    reduced = lll_reduce(lattice)
    assert is_lll_reduced(reduced), "Result is not LLL reduced."
    assert not is_lll_reduced(lattice), "Skewed basis cannot be reduced."
    assert reduced.determinant == 1, "Determinant has to be kept."
    assert norm(reduced, reduced.point("a")) == 14, "Named point changed its norm."


def test_dual_lattice():
    """tester for the dual lattice and its pairings"""

    lattice = GramLattice(IntMatrix([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]), {"p": (1, 1, 0)})
    dual = dual_lattice(lattice)
    assert dual.determinant == Fraction(1, 4), "A3 has determinant 4."
    assert dual_lattice(dual).gram == lattice.gram, "Dual of the dual is the lattice."
    assert lattice_minimum(dual) == Fraction(3, 4), "Minimum of the dual of A3 is 3/4."
    assert lattice_minimum(dual, exact=True) == Fraction(3, 4), "Exact search disagrees."

    pairings = pairing_matrix(dual)
    assert isinstance(pairings, IntMatrix), "Pairings of primal points are integral."
    assert pairings.row(0) == (1, 1, 0), "Dual basis pairs with primal coordinates."
    assert norm(dual, dual.point("p")) == norm(lattice, lattice.point("p")), "Point changed its norm."
    for vector, _ in enumerate_short(dual, Fraction(1, 2), Fraction(2)):
        value = sum(a * b for a, b in zip(pairings.row(0), vector))
        assert value == sum(vector[:2]), "Pairing with p is the sum of two coordinates."


def test_sublattice_and_file(tmp_path):
    """tester for sublattices in Hermite basis and the lattice file"""

    ambient = GramLattice(IntMatrix([[2, 1, 0], [1, 2, 0], [0, 0, 4]]))
    generators = {"a": (2, 0, 0), "b": (0, 2, 0), "c": (1, 1, 0)}
    sub = sublattice(ambient, generators, expected_rank=2)
    assert sub.rank == 2, "Generators span rank two."
    assert sub.ambient_basis is not None, "Sublattice has to keep its ambient basis."
    for label, vector in generators.items():
        assert norm(sub, sub.point(label)) == norm(ambient, vector), f"{label} changed its norm."
    with pytest.raises(RankMismatch):
        sublattice(ambient, generators, expected_rank=3)

    dual = dual_lattice(sub)
    path = tmp_path / "dual.lat"
    write_lattice(dual, path)
    loaded = read_lattice(path)
    assert loaded.gram == dual.gram, "Gram matrix changed on the way through the file."
    assert loaded.named_points == dual.named_points, "Points changed on the way through the file."
    assert loaded.ambient_basis == dual.ambient_basis, "Ambient basis got lost."
    located = loaded.locate((1, 1, 0), ambient.gram)
    assert located == dual.locate((1, 1, 0), ambient.gram), "Located coordinates differ."
    assert isinstance(loaded.ambient_basis, RatMatrix), "Ambient basis has to be rational."
