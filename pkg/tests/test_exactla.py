"""Test exact integer and rational linear algebra"""

import warnings
from fractions import Fraction

import numpy as np
import pytest

from twodist.exactla import (
    IntMatrix,
    RatMatrix,
    certify_spectrum,
    determinant,
    hnf,
    hnf_solve,
    inverse,
    lattice_basis_from_gram,
    ldl,
    rank,
    read_matrix,
    solve_rational,
    write_matrix,
)
from twodist.exactla.elimination import fraction_free_echelon
from twodist.system.exceptions import (
    AnnihilationFails,
    DimensionMismatch,
    NotPositiveDefinite,
    NotPSD,
)


def test_determinant_and_rank():
    """tester for Bareiss elimination against floating point results"""

    rng = np.random.default_rng(2023)
    for _ in range(50):
        size = int(rng.integers(1, 7))
        matrix = rng.integers(-6, 7, size=(size, size))
        expected = int(round(np.linalg.det(matrix.astype(float))))
        assert determinant(IntMatrix(matrix)) == expected, "Determinant is wrong."
        assert rank(IntMatrix(matrix)) == np.linalg.matrix_rank(matrix), "Rank is wrong."


def test_determinant_large_entries():
    """tester for entries far beyond the floating point range"""

    big = 10**40
    matrix = IntMatrix([[big, 1], [1, big]])
    assert determinant(matrix) == big * big - 1, "Determinant lost precision."

    _, pivots, sign = fraction_free_echelon(IntMatrix([[0, 1], [1, 0]]))
    assert pivots == [0, 1] and sign == -1, "Row swap has to flip the sign."


def test_inverse_and_solve():
    """tester for the rational inverse"""

    matrix = IntMatrix([[2, 1, 0], [1, 2, 1], [0, 1, 2]])
    inv = inverse(matrix)
    assert isinstance(inv, RatMatrix), "Inverse has to be rational."
    assert inv[0, 0] == Fraction(3, 4), "Inverse entry is wrong."
    assert matrix @ inv == IntMatrix.identity(3), "M M^{-1} has to be the identity."
    assert solve_rational(matrix, [1, 0, 0]) == tuple(inv[:, 0]), "Solution is wrong."
    assert solve_rational(IntMatrix([[1, 1], [1, 1]]), [1, 2]) is None, "System is inconsistent."

    with pytest.raises(DimensionMismatch):
        inverse(IntMatrix([[1, 2], [2, 4]]))


def test_ldl():
    """tester for the exact LDL factorisation"""

    gram = IntMatrix([[4, 2, 2], [2, 5, 3], [2, 3, 6]])
    lower, diag = ldl(gram)
    assert diag == (Fraction(4), Fraction(4), Fraction(4)), "Pivots are wrong."
    assert lower[2, 1] == Fraction(1, 2), "Multiplier is wrong."
    rebuilt = lower @ RatMatrix(np.diag(np.array(diag, dtype=object))) @ lower.T
    assert rebuilt == gram, "L D L^T has to give back the matrix."

    with pytest.raises(NotPositiveDefinite):
        ldl(IntMatrix([[1, 2], [2, 1]]))


def _is_hermite(herm: IntMatrix) -> bool:
    pivots = [next(j for j, x in enumerate(row) if x != 0) for row in herm.entries]
    if pivots != sorted(set(pivots)):
        return False
    for i, col in enumerate(pivots):
        if herm[i, col] <= 0:
            return False
        if any(not 0 <= herm[k, col] < herm[i, col] for k in range(i)):
            return False
    return True


def test_hnf_span_preservation():
    """tester for Hermite normal forms of random integer matrices"""

    rng = np.random.default_rng(7)
    for _ in range(100):
        rows, cols = int(rng.integers(1, 7)), int(rng.integers(1, 6))
        matrix = rng.integers(-5, 6, size=(rows, cols))
        if not matrix.any():
            matrix[0, 0] = 1
        herm = hnf(matrix)

        assert herm.rows == np.linalg.matrix_rank(matrix), "HNF has to have full row rank."
        assert _is_hermite(herm), "Result is not in Hermite normal form."
        for row in matrix:
            solution = hnf_solve(herm, row)
            assert solution is not None, "Generator is not in the span of its HNF."
            assert tuple(np.array(solution, dtype=object) @ herm.entries) == tuple(row), (
                "Coordinates do not reproduce the generator."
            )
        # equal spans have the same normal form
        assert hnf(np.vstack([matrix, herm.to_int64()])) == herm, "HNF rows leave the span."


def test_hnf_solve_outside():
    """tester for vectors outside of the row lattice"""

    herm = hnf([[2, 0], [0, 3]])
    assert hnf_solve(herm, [4, 3]) == (2, 1), "Coordinates are wrong."
    assert hnf_solve(herm, [1, 0]) is None, "(1, 0) is not in 2Z x 3Z."


def test_lattice_basis_from_gram():
    """tester for bases of lattices given by generator Gram matrices"""

    # A2 generated by three vectors summing to zero
    gram = IntMatrix([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    basis, coords = lattice_basis_from_gram(gram)
    assert basis.rows == 2, "A2 has rank two."
    assert isinstance(basis, IntMatrix), "A2 is integral."
    assert determinant(basis) == 3, "A2 has determinant 3."
    assert coords @ basis @ coords.T == gram, "Coordinates do not reproduce the Gram matrix."

    with pytest.raises(NotPSD):
        lattice_basis_from_gram(IntMatrix([[1, 2], [2, 1]]))


def test_certify_spectrum_small():
    """tester for spectrum certificates of small graphs"""

    complete = IntMatrix(np.ones((4, 4), dtype=np.int64) - np.identity(4, dtype=np.int64))
    certificate = certify_spectrum(complete, [3, -1], matrix_id="K4")
    assert certificate.eigenvalues == [(3, 1), (-1, 3)], "Spectrum of K4 is wrong."

    with pytest.raises(AnnihilationFails):
        certify_spectrum(complete, [3, 1])

    cycle = IntMatrix(
        [[1 if abs(i - j) in (1, 4) else 0 for j in range(5)] for i in range(5)]
    )
    certificate = certify_spectrum(cycle, [2], quadratic=(-1, -1), matrix_id="C5")
    assert certificate.multiplicity(2) == 1, "2 is simple for C5."
    assert certificate.multiplicity("(-1+sqrt(5))/2") == 2, "Golden ratio eigenvalue is wrong."
    assert certificate.to_dict()["eigenvalues"][0] == [2, 1], "Serialised spectrum is wrong."


def test_matrix_file(tmp_path):
    """tester for the text matrix format"""

    matrix = RatMatrix([[Fraction(1, 2), 0], [3, Fraction(-7, 3)]])
    write_matrix(matrix, tmp_path / "m.txt")
    assert read_matrix(tmp_path / "m.txt") == matrix, "Matrix changed on the way through the file."


def test_matmul_overflow_fallback():
    """tester for the exact fallback of the int64 product"""

    left = IntMatrix([[2**31, 2**31]])
    right = IntMatrix([[2**31], [2**31 - 1]])
    with pytest.warns(RuntimeWarning):
        product = left @ right
    assert product[0, 0] == 2**62 + 2**62 - 2**31, "Product has to be exact beyond int64."

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        small = IntMatrix([[1, 2], [3, 4]]) @ IntMatrix([[5], [6]])
    assert small == IntMatrix([[17], [39]]), "Fast path product is wrong."


def test_zero_matrix():
    """tester for the rank and determinant of zero matrices"""

    assert rank(IntMatrix.zeros(3, 4)) == 0, "Zero matrix has rank 0."
    assert determinant(IntMatrix.zeros(3, 3)) == 0, "Zero matrix has determinant 0."


def test_lattice_basis_of_small_grams():
    """tester for bases of 2I and of a rank deficient Gram matrix"""

    gram = IntMatrix.identity(2) * 2
    basis, coords = lattice_basis_from_gram(gram)
    assert basis.rows == 2 and determinant(basis) == 4, "2I spans a rank 2 lattice of determinant 4."
    assert coords @ basis @ coords.T == gram, "Coordinates do not reproduce 2I."

    gram = IntMatrix([[2, 2], [2, 2]])
    basis, coords = lattice_basis_from_gram(gram)
    assert basis == IntMatrix([[2]]), "Two equal vectors of norm 2 span one vector of norm 2."
    assert coords.shape == (2, 1) and abs(coords[0, 0]) == 1, "Coordinates are wrong."
    assert coords @ basis @ coords.T == gram, "Coordinates do not reproduce the Gram matrix."
