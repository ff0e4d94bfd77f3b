"""Hermite normal form of integer row lattices"""

from bisect import bisect_left
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .matrices import IntMatrix, as_object_array

__all__ = ["HermiteBasis", "hnf", "hnf_solve", "xgcd"]


def __dir__():
    return __all__


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``x, y, g`` with ``x*a + y*b == g == gcd(a, b)`` up to sign"""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


class HermiteBasis:
    """
    Echelon basis of the :math:`\\mathbb{Z}`-span of integer row vectors,
    built incrementally. Each new vector is cleared against the existing
    pivots. When neither leading entry divides the other the two rows are
    combined via the extended Euclidean algorithm so the pivot becomes their gcd.

    Args:
        ambient_dimension (``int``): length of the vectors.
    """

    __slots__ = ["dimension", "rows", "pivot_columns"]

    def __init__(self, ambient_dimension: int):
        self.dimension = ambient_dimension
        self.rows: List[List[int]] = []
        self.pivot_columns: List[int] = []

    def __len__(self):
        return len(self.rows)

    def __repr__(self):
        return f"HermiteBasis(dimension={self.dimension}, rank={len(self)})"

    def _pivot_row(self, column: int) -> Optional[int]:
        where = bisect_left(self.pivot_columns, column)
        if where < len(self.pivot_columns) and self.pivot_columns[where] == column:
            return where
        return None

    def add(self, vector: Sequence[int]) -> None:
        """Extend the span by ``vector``"""
        assert len(vector) == self.dimension, "Vector has the wrong length."
        vec = [int(x) for x in vector]
        size = self.dimension
        for j in range(size):
            if vec[j] == 0:
                continue
            p = self._pivot_row(j)
            if p is None:
                where = bisect_left(self.pivot_columns, j)
                self.rows.insert(where, vec)
                self.pivot_columns.insert(where, j)
                return
            row = self.rows[p]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for jj in range(j, size):
                    vec[jj] -= q * row[jj]
            elif a % b == 0:
                row[j:], vec[j:] = vec[j:], row[j:]
                q = a // b
                for jj in range(j, size):
                    vec[jj] -= q * row[jj]
            else:
                x, y, g = xgcd(a, b)
                ag, mbg = a // g, -b // g
                for jj in range(j, size):
                    aa, bb = row[jj], vec[jj]
                    row[jj] = x * aa + y * bb
                    vec[jj] = mbg * aa + ag * bb

    def normalise(self) -> "HermiteBasis":
        """Make pivots positive and reduce the entries above each pivot into ``[0, pivot)``"""
        for i, col in enumerate(self.pivot_columns):
            row = self.rows[i]
            if row[col] < 0:
                self.rows[i] = row = [-x for x in row]
            for k in range(i):
                q = self.rows[k][col] // row[col]
                if q:
                    self.rows[k] = [x - q * y for x, y in zip(self.rows[k], row)]
        return self

    def coordinates(self, vector: Sequence[int]) -> Optional[Tuple[int, ...]]:
        """Integer coefficients of ``vector`` in this basis, ``None`` if outside the span"""
        vec = [int(x) for x in vector]
        coeffs = [0] * len(self.rows)
        for j in range(self.dimension):
            if vec[j] == 0:
                continue
            p = self._pivot_row(j)
            if p is None:
                return None
            row = self.rows[p]
            q, rem = divmod(vec[j], row[j])
            if rem:
                return None
            coeffs[p] = q
            for jj in range(j, self.dimension):
                vec[jj] -= q * row[jj]
        return tuple(coeffs)

    def matrix(self) -> IntMatrix:
        if not self.rows:
            return IntMatrix(np.zeros((0, self.dimension), dtype=np.int64))
        return IntMatrix(self.rows)


def hnf(matrix: Union[IntMatrix, np.ndarray, Iterable[Sequence[int]]]) -> IntMatrix:
    """
    Row Hermite normal form: the non-zero rows of an echelon basis of the
    row lattice with positive pivots and reduced entries above the pivots.

    Args:
        matrix: integer matrix whose rows generate the lattice.

    Returns:
        ~twodist.exactla.matrices.IntMatrix:
        :math:`\\mathrm{rank}\\times n` basis matrix.
    """
    rows = as_object_array(matrix)
    basis = HermiteBasis(rows.shape[1])
    for row in rows:
        basis.add(row)
    return basis.normalise().matrix()


def hnf_solve(basis: IntMatrix, vector: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """
    Integer solution :math:`t` of :math:`tH = v` for a matrix :math:`H` in
    Hermite normal form, ``None`` if :math:`v` is not in the row lattice.
    """
    herm = HermiteBasis(basis.cols)
    herm.rows = [list(row) for row in basis.entries]
    herm.pivot_columns = [next(j for j, x in enumerate(row) if x != 0) for row in herm.rows]
    return herm.coordinates(vector)
