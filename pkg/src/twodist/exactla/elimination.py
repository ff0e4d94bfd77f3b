"""
Exact elimination: fraction-free (Bareiss) echelon forms for ranks and
rational Gauss-Jordan elimination for inverses, solves and
:math:`LDL^\\top` factorisations.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from twodist.system.exceptions import (
    DimensionMismatch,
    InexactDivision,
    NotPositiveDefinite,
)

from .matrices import IntMatrix, RatMatrix, as_object_array

__all__ = ["fraction_free_echelon", "rank", "inverse", "solve_rational", "ldl", "determinant"]


def __dir__():
    return __all__


def fraction_free_echelon(
    matrix: Union[IntMatrix, np.ndarray]
) -> Tuple[np.ndarray, List[int], int]:
    r"""
    Row echelon form by Bareiss' fraction-free elimination. Every update

    .. math::

        m_{ij} \leftarrow \frac{m_{ij}\,p - m_{ik}\,m_{kj}}{p_{\rm prev}}

    is an exact integer division; this is verified for each step. Columns
    without a pivot are skipped, the previous pivot is kept as divisor.

    Args:
        matrix (~twodist.exactla.matrices.IntMatrix): integer matrix.

    Raises:
        :obj:`~twodist.system.exceptions.InexactDivision`: if a division
          leaves a remainder, which can only come from corrupted input.

    Returns:
        ``Tuple[np.ndarray, List[int], int]``:
        echelon form (object array), pivot columns and the sign of the
        accumulated row permutation.
    """
    mat = as_object_array(matrix)
    nrows, ncols = mat.shape
    previous, row, sign = 1, 0, 1
    pivots = []
    for col in range(ncols):
        if row == nrows:
            break
        candidates = np.flatnonzero(mat[row:, col] != 0)
        if candidates.size == 0:
            continue
        pivot_row = row + int(candidates[0])
        if pivot_row != row:
            mat[[row, pivot_row]] = mat[[pivot_row, row]]
            sign = -sign
        pivot = mat[row, col]
        if row + 1 < nrows and col + 1 < ncols:
            numerator = (
                mat[row + 1 :, col + 1 :] * pivot
                - mat[row + 1 :, col : col + 1] * mat[row : row + 1, col + 1 :]
            )
            quotient = numerator // previous
            if np.any(numerator - quotient * previous != 0):
                raise InexactDivision(
                    f"Elimination step at column {col} is not divisible by {previous}."
                )
            mat[row + 1 :, col + 1 :] = quotient
        mat[row + 1 :, col] = 0
        previous = pivot
        pivots.append(col)
        row += 1
    return mat, pivots, sign


def rank(matrix: Union[IntMatrix, np.ndarray]) -> int:
    """Exact rank of an integer matrix"""
    return len(fraction_free_echelon(matrix)[1])


def determinant(matrix: Union[IntMatrix, np.ndarray]) -> int:
    """Exact determinant; the last Bareiss pivot of a square matrix"""
    mat, pivots, sign = fraction_free_echelon(matrix)
    if mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch("Determinant of a non-square matrix.")
    if len(pivots) < mat.shape[0]:
        return 0
    return sign * int(mat[-1, -1])


def _gauss_jordan(left: np.ndarray, right: np.ndarray) -> Tuple[np.ndarray, np.ndarray, List[int]]:
    """Reduce ``[left | right]`` over the rationals; returns both halves and pivots"""
    aug = np.hstack([left, right]).astype(object)
    aug = np.vectorize(Fraction, otypes=[object])(aug) if aug.size else aug
    nrows, ncols = left.shape
    pivots, row = [], 0
    for col in range(ncols):
        if row == nrows:
            break
        candidates = np.flatnonzero(aug[row:, col] != 0)
        if candidates.size == 0:
            continue
        pivot_row = row + int(candidates[0])
        aug[[row, pivot_row]] = aug[[pivot_row, row]]
        aug[row] = aug[row] / aug[row, col]
        factors = aug[:, col].copy()
        factors[row] = 0
        aug -= factors[:, None] * aug[row][None, :]
        pivots.append(col)
        row += 1
    return aug[:, :ncols], aug[:, ncols:], pivots


def inverse(matrix: Union[IntMatrix, RatMatrix]) -> RatMatrix:
    """
    Exact inverse over :math:`\\mathbb{Q}`.

    Raises:
        :obj:`~twodist.system.exceptions.DimensionMismatch`: if the matrix is
          not square or singular.
    """
    mat = as_object_array(matrix)
    if mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch("Only square matrices can be inverted.")
    _, inv, pivots = _gauss_jordan(mat, np.identity(mat.shape[0], dtype=np.int64).astype(object))
    if len(pivots) != mat.shape[0]:
        raise DimensionMismatch("Matrix is singular.")
    return RatMatrix(inv)


def solve_rational(
    matrix: Union[IntMatrix, RatMatrix], rhs: Sequence
) -> Optional[Tuple[Fraction, ...]]:
    """
    One rational solution :math:`x` of :math:`Mx = b` (free variables set to
    zero), or ``None`` if the system is inconsistent.
    """
    mat = as_object_array(matrix)
    b = np.array([Fraction(x) for x in rhs], dtype=object).reshape(-1, 1)
    if b.shape[0] != mat.shape[0]:
        raise DimensionMismatch("Right hand side does not match the matrix.")
    reduced, right, pivots = _gauss_jordan(mat, b)
    if any(right[i, 0] != 0 for i in range(len(pivots), mat.shape[0])):
        return None
    solution = [Fraction(0)] * mat.shape[1]
    for i, col in enumerate(pivots):
        solution[col] = right[i, 0]
    return tuple(solution)


def ldl(
    matrix: Union[IntMatrix, RatMatrix], strict: bool = True
) -> Tuple[RatMatrix, Tuple[Fraction, ...]]:
    r"""
    Exact :math:`G = LDL^\top` with :math:`L` unit lower triangular.

    Args:
        matrix: symmetric rational matrix.
        strict (``bool``, default ``True``): require every pivot to be positive.

    Raises:
        :obj:`~twodist.system.exceptions.NotPositiveDefinite`: if a pivot is not
          positive (``strict``) or vanishes.

    Returns:
        ``Tuple[RatMatrix, Tuple[Fraction, ...]]``:
        :math:`L` and the diagonal of :math:`D`.
    """
    gram = as_object_array(matrix)
    size = gram.shape[0]
    if gram.shape != (size, size) or np.any(gram != gram.T):
        raise DimensionMismatch("LDL factorisation needs a symmetric matrix.")
    lower = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    diag: List[Fraction] = []
    for j in range(size):
        dj = Fraction(gram[j, j]) - sum(
            (lower[j][k] * lower[j][k] * diag[k] for k in range(j)), Fraction(0)
        )
        if dj == 0 or (strict and dj < 0):
            raise NotPositiveDefinite(f"Pivot {j} of the LDL factorisation is {dj}.")
        diag.append(dj)
        for i in range(j + 1, size):
            lower[i][j] = (
                Fraction(gram[i, j])
                - sum((lower[i][k] * lower[j][k] * diag[k] for k in range(j)), Fraction(0))
            ) / dj
    return RatMatrix(lower), tuple(diag)
