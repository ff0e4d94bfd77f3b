"""Dense exact matrices over the integers and the rationals"""

import warnings
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Iterable, List, Sequence, Text, Tuple, Union

import numpy as np

from twodist.system.exceptions import DimensionMismatch

__all__ = ["IntMatrix", "RatMatrix", "write_matrix", "read_matrix", "as_object_array"]


def __dir__():
    return __all__


_INT64_SAFE = 2**62
"""Magnitude below which int64 products and sums cannot overflow"""


def as_object_array(data) -> np.ndarray:
    """Convert nested sequences or arrays into a 2D object array of python numbers"""
    if isinstance(data, _ExactMatrix):
        return data.entries.copy()
    arr = np.array(data, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    assert arr.ndim == 2, "Matrix entries must be two dimensional."
    return arr


def _max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return int(max(abs(x) for x in arr.flat))


class _ExactMatrix:
    """Shared behaviour of integer and rational matrices"""

    __slots__ = ["entries"]

    def __init__(self, entries):
        self.entries: np.ndarray = self._normalise(as_object_array(entries))

    @staticmethod
    def _normalise(arr: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}(rows={self.rows}, cols={self.cols})"

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __getitem__(self, item):
        return self.entries[item]

    def __len__(self):
        return self.rows

    def __eq__(self, other):
        if isinstance(other, _ExactMatrix):
            other = other.entries
        other = np.asarray(other, dtype=object)
        return self.shape == other.shape and bool(np.all(self.entries == other))

    def __hash__(self):
        return hash((self.shape, tuple(self.entries.flat)))

    def __neg__(self):
        return type(self)(-self.entries)

    def __add__(self, other):
        other = _entries_of(other)
        if other.shape != self.shape:
            raise DimensionMismatch(f"Cannot add {self.shape} and {other.shape}.")
        return _promote(self, other)(self.entries + other)

    def __sub__(self, other):
        return self + (-_promote_value(other))

    def __mul__(self, scalar):
        if isinstance(scalar, _ExactMatrix):
            raise TypeError("Use `@` for matrix products.")
        cls = RatMatrix if isinstance(scalar, Fraction) and scalar.denominator != 1 else type(self)
        return cls(self.entries * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return matmul(self, other)

    @property
    def T(self):
        return type(self)(self.entries.T)

    def trace(self):
        if self.rows != self.cols:
            raise DimensionMismatch("Trace of a non-square matrix.")
        return sum(self.entries[i, i] for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(x != 0 for x in self.entries.flat)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and bool(np.all(self.entries == self.entries.T))

    def row(self, index: int) -> Tuple:
        return tuple(self.entries[index])

    def tolist(self) -> List[List]:
        return [list(row) for row in self.entries]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        return type(self)(self.entries[np.ix_(list(rows), list(cols))])


class IntMatrix(_ExactMatrix):
    """
    Dense matrix with arbitrary-precision integer entries, stored as a numpy
    object array of python ``int``.

    Args:
        entries: nested sequence or array of integers.
    """

    __slots__ = []

    @staticmethod
    def _normalise(arr: np.ndarray) -> np.ndarray:
        out = np.empty(arr.shape, dtype=object)
        for idx, value in np.ndenumerate(arr):
            if isinstance(value, Fraction):
                assert value.denominator == 1, f"Non-integral entry {value}."
                value = value.numerator
            out[idx] = int(value)
        return out

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls(np.identity(size, dtype=np.int64))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def ones(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(np.ones((rows, cols), dtype=np.int64))

    def fits_int64(self) -> bool:
        return _max_abs(self.entries) < _INT64_SAFE

    def to_int64(self) -> np.ndarray:
        assert self.fits_int64(), "Entries exceed the int64 range."
        return self.entries.astype(np.int64)


class RatMatrix(_ExactMatrix):
    """
    Dense matrix with rational entries in lowest terms
    (:obj:`fractions.Fraction`).

    Args:
        entries: nested sequence or array of rationals.
    """

    __slots__ = []

    @staticmethod
    def _normalise(arr: np.ndarray) -> np.ndarray:
        out = np.empty(arr.shape, dtype=object)
        for idx, value in np.ndenumerate(arr):
            out[idx] = Fraction(value)
        return out

    @classmethod
    def identity(cls, size: int) -> "RatMatrix":
        return cls(np.identity(size, dtype=np.int64))

    def denominator(self) -> int:
        """Least common multiple of the entry denominators"""
        return lcm(1, *(x.denominator for x in self.entries.flat))

    def is_integral(self) -> bool:
        return self.denominator() == 1

    def to_int(self) -> IntMatrix:
        return IntMatrix(self.entries)

    def scaled(self) -> Tuple[IntMatrix, int]:
        """Integer matrix :math:`dM` together with the common denominator :math:`d`"""
        den = self.denominator()
        return IntMatrix(self.entries * den), den


def _entries_of(value) -> np.ndarray:
    if isinstance(value, _ExactMatrix):
        return value.entries
    return as_object_array(value)


def _promote_value(value):
    if isinstance(value, _ExactMatrix):
        return value
    arr = as_object_array(value)
    if any(isinstance(x, Fraction) and x.denominator != 1 for x in arr.flat):
        return RatMatrix(arr)
    return IntMatrix(arr)


def _promote(left: _ExactMatrix, right) -> type:
    """Result type of combining two matrices"""
    if isinstance(left, RatMatrix) or isinstance(right, RatMatrix):
        return RatMatrix
    entries = _entries_of(right)
    if any(isinstance(x, Fraction) and x.denominator != 1 for x in entries.flat):
        return RatMatrix
    return IntMatrix


def matmul(left: Union[_ExactMatrix, np.ndarray], right: Union[_ExactMatrix, np.ndarray]):
    """
    Exact matrix product. Integer products whose result provably fits into
    64 bits (``max|a| * max|b| * inner < 2**62``) are computed with numpy's
    int64 kernels, everything else with python integers or fractions. Integer
    operands within the int64 range that miss the bound emit a ``RuntimeWarning``.

    Args:
        left, right: integer or rational matrices.

    Raises:
        :obj:`~twodist.system.exceptions.DimensionMismatch`: if inner dimensions differ.
    """
    cls = _promote(left if isinstance(left, _ExactMatrix) else _promote_value(left), right)
    a, b = _entries_of(left), _entries_of(right)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"Cannot multiply {a.shape} by {b.shape}.")
    if cls is IntMatrix:
        bound_a, bound_b = _max_abs(a), _max_abs(b)
        if bound_a * bound_b * max(a.shape[1], 1) < _INT64_SAFE:
            product = a.astype(np.int64) @ b.astype(np.int64)
            return IntMatrix(product)
        if bound_a < 2**63 and bound_b < 2**63:
            warnings.warn(
                f"Product of {a.shape} and {b.shape} int64 matrices can overflow, "
                "using exact integers.",
                category=RuntimeWarning,
            )
    return cls(np.dot(a, b))


def write_matrix(matrix: _ExactMatrix, path: Union[Text, Path]) -> None:
    """
    Write a matrix in the text format: first line ``rows cols``, then one
    whitespace separated row per line; rationals are written as ``p/q``.
    """
    lines = [f"{matrix.rows} {matrix.cols}"]
    for row in matrix.entries:
        lines.append(" ".join(str(x) for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_matrix(path: Union[Text, Path]) -> _ExactMatrix:
    """Read a matrix written by :func:`write_matrix`"""
    return parse_matrix(Path(path).read_text(encoding="utf-8").splitlines())


def parse_matrix(lines: Iterable[Text]) -> _ExactMatrix:
    """Parse the text matrix format from an iterable of lines"""
    lines = [line for line in lines if line.strip()]
    rows, cols = (int(x) for x in lines[0].split())
    body = [[Fraction(x) for x in line.split()] for line in lines[1 : rows + 1]]
    if len(body) != rows or any(len(row) != cols for row in body):
        raise DimensionMismatch(f"Matrix body does not have shape ({rows}, {cols}).")
    entries = np.empty((rows, cols), dtype=object)
    for i, row in enumerate(body):
        for j, value in enumerate(row):
            entries[i, j] = value
    if all(x.denominator == 1 for x in entries.flat):
        return IntMatrix(entries)
    return RatMatrix(entries)
