"""Lattices given by a Gram matrix, with labelled points"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Text, Tuple, Union

import numpy as np

from twodist.exactla.elimination import inverse, ldl
from twodist.exactla.hermite import hnf, hnf_solve
from twodist.exactla.matrices import IntMatrix, RatMatrix, as_object_array, matmul
from twodist.system.exceptions import DimensionMismatch, RankMismatch

__all__ = [
    "LatticeVector",
    "GramLattice",
    "inner",
    "norm",
    "dual_lattice",
    "sublattice",
    "pairing_matrix",
    "write_lattice",
    "read_lattice",
]


def __dir__():
    return __all__


@dataclass(frozen=True)
class LatticeVector:
    """
    Integer coordinate vector with respect to a lattice basis.

    Args:
        coords (``Tuple[int, ...]``): coordinates.
    """

    coords: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(Fraction(x) for x in self.coords)
        if any(x.denominator != 1 for x in coords):
            raise DimensionMismatch(f"Lattice vector with non-integral coordinates {coords}.")
        object.__setattr__(self, "coords", tuple(int(x) for x in coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __getitem__(self, item):
        return self.coords[item]

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self))

    def __mul__(self, scalar: int) -> "LatticeVector":
        return LatticeVector(tuple(scalar * a for a in self))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)


Vector = Union[LatticeVector, Sequence]
"""Coordinates of a lattice vector, integral or rational"""


@dataclass
class GramLattice:
    """
    Positive definite lattice :math:`\\mathbb{Z}^r` with inner product
    :math:`\\langle x, y\\rangle = xGy^\\top`.

    Args:
        gram (``IntMatrix`` or ``RatMatrix``): symmetric positive definite
          Gram matrix of the basis.
        named_points (``Dict[Text, LatticeVector]``): labelled lattice points
          in basis coordinates, kept in insertion order.
        ambient_basis (``RatMatrix``, default ``None``): basis rows expressed in
          coordinates of an ambient lattice, for sublattices and duals.

    Raises:
        :obj:`~twodist.system.exceptions.NotPositiveDefinite`: if the Gram
          matrix is not positive definite.
    """

    gram: RatMatrix
    named_points: Dict[Text, LatticeVector] = field(default_factory=dict)
    ambient_basis: Optional[RatMatrix] = field(default=None, repr=False)

    def __post_init__(self):
        self.gram = RatMatrix(self.gram)
        if not self.gram.is_symmetric():
            raise DimensionMismatch("Gram matrix has to be symmetric.")
        self.named_points = {
            label: point if isinstance(point, LatticeVector) else LatticeVector(point)
            for label, point in self.named_points.items()
        }
        for label, point in self.named_points.items():
            if len(point) != self.rank:
                raise DimensionMismatch(f"Point {label} has {len(point)} coordinates.")
        if self.ambient_basis is not None:
            self.ambient_basis = RatMatrix(self.ambient_basis)
            if self.ambient_basis.rows != self.rank:
                raise DimensionMismatch("Ambient basis does not match the rank.")
        # raises NotPositiveDefinite
        _ = self.ldl

    def __repr__(self):
        return (
            f"GramLattice(rank={self.rank}, determinant={self.determinant}, "
            f"points={len(self.named_points)})"
        )

    @property
    def rank(self) -> int:
        return self.gram.rows

    @property
    def scale_denominator(self) -> int:
        """Smallest :math:`d` with :math:`dG` integral"""
        return self.gram.denominator()

    def is_integral(self) -> bool:
        return self.scale_denominator == 1

    @cached_property
    def ldl(self) -> Tuple[RatMatrix, Tuple[Fraction, ...]]:
        """Exact :math:`G = LDL^\\top`"""
        return ldl(self.gram, strict=True)

    @property
    def determinant(self) -> Fraction:
        result = Fraction(1)
        for d in self.ldl[1]:
            result *= d
        return result

    @cached_property
    def scaled_gram(self) -> np.ndarray:
        """Integer matrix :math:`dG` as int64 if it fits, otherwise as object array"""
        scaled, _ = self.gram.scaled()
        return scaled.to_int64() if scaled.fits_int64() else scaled.entries

    def point(self, label: Text) -> LatticeVector:
        return self.named_points[label]

    def labels(self) -> List[Text]:
        return list(self.named_points)

    def points_matrix(self, labels: Optional[Sequence[Text]] = None) -> IntMatrix:
        labels = self.labels() if labels is None else labels
        return IntMatrix([self.named_points[label].coords for label in labels])

    def point_gram(self, labels: Optional[Sequence[Text]] = None) -> Union[IntMatrix, RatMatrix]:
        """Exact Gram matrix of the named points"""
        coords = self.points_matrix(labels)
        scaled, den = self.gram.scaled()
        product = coords @ scaled @ coords.T
        if den == 1:
            return product
        result = product * Fraction(1, den)
        return result.to_int() if result.is_integral() else result

    def with_points(self, points: Dict[Text, Vector]) -> "GramLattice":
        """Copy with additional named points"""
        merged = dict(self.named_points)
        merged.update({k: LatticeVector(v) for k, v in points.items()})
        return GramLattice(self.gram, merged, self.ambient_basis)

    def transformed(self, unimodular: IntMatrix) -> "GramLattice":
        """
        Same lattice in the basis :math:`UB`. Points transform as
        :math:`y\\mapsto yU^{-1}`.
        """
        inv = inverse(unimodular)
        if not inv.is_integral():
            raise DimensionMismatch("Basis change is not unimodular.")
        inv = inv.to_int()
        points = {
            label: LatticeVector((IntMatrix([point.coords]) @ inv).row(0))
            for label, point in self.named_points.items()
        }
        ambient = None if self.ambient_basis is None else unimodular @ self.ambient_basis
        return GramLattice(unimodular @ self.gram @ unimodular.T, points, ambient)

    def locate(self, ambient_vector: Sequence, ambient_gram: RatMatrix) -> Tuple[Fraction, ...]:
        """
        Rational coordinates of a vector given in ambient coordinates, using
        :math:`c = (A G_{\\rm amb} v^\\top)^\\top G^{-1}`.

        Raises:
            :obj:`~twodist.system.exceptions.DimensionMismatch`: without an
              ambient basis or if the vector is outside the span.
        """
        if self.ambient_basis is None:
            raise DimensionMismatch("Lattice has no ambient basis.")
        v = RatMatrix([list(ambient_vector)])
        pairings = v @ RatMatrix(ambient_gram) @ self.ambient_basis.T
        coords = pairings @ inverse(self.gram)
        if not (coords @ self.ambient_basis) == v:
            raise DimensionMismatch("Vector is not in the span of the lattice.")
        return coords.row(0)


def _coords(vector: Vector) -> List:
    return list(vector.coords) if isinstance(vector, LatticeVector) else list(vector)


def inner(lattice: GramLattice, left: Vector, right: Vector) -> Fraction:
    """Exact :math:`\\langle x, y\\rangle = xGy^\\top`"""
    x, y = _coords(left), _coords(right)
    if len(x) != lattice.rank or len(y) != lattice.rank:
        raise DimensionMismatch("Vector length does not match the lattice rank.")
    gram = lattice.gram.entries
    total = Fraction(0)
    for i, xi in enumerate(x):
        if xi:
            total += xi * sum((gram[i, j] * yj for j, yj in enumerate(y) if yj), Fraction(0))
    return total


def norm(lattice: GramLattice, vector: Vector) -> Fraction:
    """Squared length :math:`\\langle x, x\\rangle`"""
    return inner(lattice, vector, vector)


def dual_lattice(lattice: GramLattice) -> GramLattice:
    r"""
    Dual lattice in the dual basis, Gram matrix :math:`G^{-1}`. The coordinate
    pairing between the lattice and its dual is the plain dot product.

    For an integral lattice every named point :math:`y` is carried over as
    :math:`yG`, its coordinates in the dual basis.
    """
    dual_gram = inverse(lattice.gram)
    points = {}
    if lattice.is_integral():
        gram = lattice.gram.to_int()
        points = {
            label: LatticeVector((IntMatrix([p.coords]) @ gram).row(0))
            for label, p in lattice.named_points.items()
        }
    ambient = None
    if lattice.ambient_basis is not None:
        ambient = dual_gram @ lattice.ambient_basis
    return GramLattice(dual_gram, points, ambient)


def sublattice(
    lattice: GramLattice,
    generators: Dict[Text, Vector],
    expected_rank: Optional[int] = None,
) -> GramLattice:
    """
    Sublattice generated by labelled vectors, in Hermite normal form basis.

    Args:
        lattice (~twodist.lattice.gram_lattice.GramLattice): ambient lattice.
        generators (``Dict[Text, Vector]``): labelled generators in ambient
          coordinates; they become the named points of the result.
        expected_rank (``int``, default ``None``): required rank.

    Raises:
        :obj:`~twodist.system.exceptions.RankMismatch`: if the rank differs
          from ``expected_rank``.
    """
    rows = IntMatrix([_coords(v) for v in generators.values()])
    basis = hnf(rows)
    if expected_rank is not None and basis.rows != expected_rank:
        raise RankMismatch(f"Generators span rank {basis.rows}, expected {expected_rank}.")
    points = {}
    for label, vector in generators.items():
        solution = hnf_solve(basis, _coords(vector))
        assert solution is not None, f"{label} is not in its own span."
        points[label] = LatticeVector(solution)
    gram = basis @ lattice.gram @ basis.T
    ambient = basis if lattice.ambient_basis is None else basis @ lattice.ambient_basis
    return GramLattice(gram, points, RatMatrix(ambient))


def pairing_matrix(lattice: GramLattice, labels: Optional[Sequence[Text]] = None) -> IntMatrix:
    r"""
    Pairing vectors :math:`P = Z G` of named points, such that
    :math:`\langle z, v\rangle = P_z\cdot v` for every lattice vector :math:`v`.
    Applied to a dual lattice whose named points come from the primal one,
    the pairings have to be integral.

    Raises:
        :obj:`~twodist.system.exceptions.DimensionMismatch`: if a pairing is
          not integral, which means the points are not in the primal lattice.
    """
    product = matmul(lattice.points_matrix(labels), lattice.gram)
    if isinstance(product, RatMatrix):
        if not product.is_integral():
            raise DimensionMismatch("Pairing vectors are not integral.")
        product = product.to_int()
    return product


def write_lattice(lattice: GramLattice, path: Union[Text, Path]) -> None:
    """
    Text format: ``rank denominator``, the rows of the scaled Gram matrix
    :math:`dG`, ``points k`` and one ``label c_1 ... c_r`` line per point.
    An ambient basis follows as ``ambient n`` and :math:`r` rows of ``p/q``
    entries.
    """
    scaled, den = lattice.gram.scaled()
    lines = [f"{lattice.rank} {den}"]
    lines += [" ".join(str(x) for x in row) for row in scaled.entries]
    lines.append(f"points {len(lattice.named_points)}")
    lines += [
        f"{label} " + " ".join(str(x) for x in point)
        for label, point in lattice.named_points.items()
    ]
    if lattice.ambient_basis is not None:
        lines.append(f"ambient {lattice.ambient_basis.cols}")
        lines += [" ".join(str(x) for x in row) for row in lattice.ambient_basis.entries]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_lattice(path: Union[Text, Path]) -> GramLattice:
    """Read a lattice written by :func:`write_lattice`"""
    lines = [line for line in Path(path).read_text(encoding="utf-8").splitlines() if line.strip()]
    rank, den = (int(x) for x in lines[0].split())
    gram = np.array(
        [[Fraction(int(x), den) for x in line.split()] for line in lines[1 : rank + 1]],
        dtype=object,
    )
    header = lines[rank + 1].split()
    if header[0] != "points":
        raise ValueError(f"Malformed lattice file {path}: expected the points header.")
    points = {}
    end = rank + 2 + int(header[1])
    for line in lines[rank + 2 : end]:
        label, *coords = line.split()
        points[label] = LatticeVector(tuple(int(x) for x in coords))
    ambient = None
    if len(lines) > end:
        if lines[end].split()[0] != "ambient":
            raise ValueError(f"Malformed lattice file {path}: expected the ambient header.")
        ambient = RatMatrix(
            as_object_array([[Fraction(x) for x in line.split()] for line in lines[end + 1 : end + 1 + rank]])
        )
    return GramLattice(RatMatrix(as_object_array(gram)), points, ambient)
