r"""
Assembly of the 277-point two-distance set :math:`Z=\{u\}\cup X\cup Y`.

The 276 vertices of :math:`\Gamma` are realised as lattice points with Gram
matrix :math:`A(\Gamma)+3I`, the switching root :math:`r` is the unique pair
of norm 2 vectors of that lattice and :math:`u = x_1+x_2+x_3-r` for the three
points of any multipartite part.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Text, Union

import numpy as np

from twodist.exactla.basis import lattice_basis_from_gram
from twodist.exactla.matrices import IntMatrix, as_object_array
from twodist.lattice.enumeration import enumerate_short
from twodist.lattice.gram_lattice import (
    GramLattice,
    LatticeVector,
    inner,
    norm,
    read_lattice,
    write_lattice,
)
from twodist.lattice.reduction import lll_reduce
from twodist.system.exceptions import (
    ConstructionFailed,
    DimensionMismatch,
    NotPSD,
    NotTwoDistance,
    PartNotOrthogonal,
    RootNotFound,
)
from twodist.twograph import PARTS, Graph276

__all__ = [
    "PointSet277",
    "TwoDistanceReport",
    "vertex_labels",
    "part_labels",
    "embed_points",
    "find_switching_root",
    "verify_root_formula",
    "build_u",
    "assemble_point_set",
    "distance_report",
    "verify_two_distance",
    "lemma_gram",
    "verify_lemma_sum",
    "verify_parts_lemma",
    "affine_hyperplane_check",
    "write_point_set",
    "read_point_set",
]


def __dir__():
    return __all__


EMBEDDING_RANK = 24
ROOT_LABEL = "r"


def vertex_labels(graph: Graph276) -> List[Text]:
    """``x1 ... x33`` followed by ``y1 ... y243`` in vertex order"""
    return [f"x{k}" for k in range(1, len(graph.x_vertices) + 1)] + [
        f"y{k}" for k in range(1, len(graph.y_vertices) + 1)
    ]


def part_labels(part: int) -> List[Text]:
    """Labels of the three points :math:`(0,i), (1,i), (2,i)` of part ``i``"""
    if not 1 <= part <= PARTS:
        raise ValueError(f"Part has to be between 1 and {PARTS}, got {part}.")
    return [f"x{3 * (part - 1) + k}" for k in (1, 2, 3)]


@dataclass
class PointSet277:
    """
    The point set :math:`Z` inside the embedding lattice.

    Args:
        lattice (~twodist.lattice.gram_lattice.GramLattice): rank 24 lattice
          whose named points are ``u``, ``x1..x33`` and ``y1..y243``.
        root (~twodist.lattice.gram_lattice.LatticeVector): switching root.
    """

    lattice: GramLattice
    root: LatticeVector

    def __post_init__(self):
        assert self.labels[0] == "u", "The first point has to be u."

    def __len__(self):
        return len(self.lattice.named_points)

    @property
    def labels(self) -> List[Text]:
        return self.lattice.labels()

    @property
    def u(self) -> LatticeVector:
        return self.lattice.point("u")

    def points(self) -> List[LatticeVector]:
        return list(self.lattice.named_points.values())

    def point_gram(self) -> IntMatrix:
        return self.lattice.point_gram()

    def root_pairings(self) -> Dict[Text, Fraction]:
        """:math:`\\langle r, z\\rangle` for every point"""
        values = self.lattice.points_matrix() @ self.lattice.gram @ IntMatrix([self.root.coords]).T
        return {label: values[i, 0] for i, label in enumerate(self.labels)}


@dataclass(frozen=True)
class TwoDistanceReport:
    """Counts of the squared distances of all pairs of points"""

    pairs: int
    fours: int
    sixes: int

    def to_dict(self) -> Dict[Text, int]:
        return {"pairs": self.pairs, "distance_4": self.fours, "distance_6": self.sixes}


def embed_points(graph: Graph276) -> GramLattice:
    r"""
    Lattice spanned by vectors :math:`v_u` with
    :math:`\langle v_u, v_{u'}\rangle = (A(\Gamma)+3I)_{uu'}`, LLL reduced.

    Args:
        graph (~twodist.twograph.Graph276): the graph :math:`\Gamma`.

    Raises:
        :obj:`~twodist.system.exceptions.ConstructionFailed`: if the Gram matrix
          is not positive semi-definite or does not have rank 24.

    Returns:
        ~twodist.lattice.gram_lattice.GramLattice:
        rank 24 lattice with the named points ``x1..x33``, ``y1..y243``.
    """
    gram = graph.adjacency_matrix() + IntMatrix.identity(len(graph)) * 3
    try:
        basis_gram, coords = lattice_basis_from_gram(gram)
    except NotPSD as err:
        raise ConstructionFailed(f"A + 3I does not define a lattice: {err}") from err
    if basis_gram.rows != EMBEDDING_RANK:
        raise ConstructionFailed(f"A + 3I has rank {basis_gram.rows}, expected {EMBEDDING_RANK}.")
    points = {label: coords.row(i) for i, label in enumerate(vertex_labels(graph))}
    return lll_reduce(GramLattice(basis_gram, points))


def find_switching_root(lattice: GramLattice) -> LatticeVector:
    r"""
    The switching root: the unique norm 2 vector :math:`r` with
    :math:`\langle r, x_1\rangle = 1`.

    Raises:
        :obj:`~twodist.system.exceptions.RootNotFound`: if the lattice does
          not have exactly one pair of norm 2 vectors, or if
          :math:`\langle r, v\rangle\neq 1` for some point.
    """
    found = enumerate_short(lattice, Fraction(2), Fraction(2)).collect()
    if len(found) != 1:
        raise RootNotFound(f"Found {len(found)} pairs of norm 2 vectors, expected one.")
    root = found[0][0]
    sign = inner(lattice, root, lattice.point("x1"))
    if sign == -1:
        root = -root
    elif sign != 1:
        raise RootNotFound(f"<r, x1> = {sign}.")
    pairings = lattice.points_matrix() @ lattice.gram @ IntMatrix([root.coords]).T
    labels = lattice.labels()
    for i in range(len(labels)):
        if pairings[i, 0] != 1:
            raise RootNotFound(f"<r, {labels[i]}> = {pairings[i, 0]}.")
    return root


def verify_root_formula(lattice: GramLattice, root: LatticeVector) -> bool:
    r"""
    Check :math:`r = x_1+x_2+x_3-\frac{4}{33}\sum_{x\in X}x+\frac{1}{81}\sum_{y\in Y}y`
    coordinate by coordinate.

    Raises:
        :obj:`~twodist.system.exceptions.ConstructionFailed`: if it fails.
    """
    labels = lattice.labels()
    coords = lattice.points_matrix().entries
    is_x = np.array([label.startswith("x") for label in labels])
    first_part = [labels.index(label) for label in part_labels(1)]
    sum_x = coords[is_x].sum(axis=0)
    sum_y = coords[~is_x].sum(axis=0)
    rhs = coords[first_part].sum(axis=0) - Fraction(4, 33) * sum_x + Fraction(1, 81) * sum_y
    if tuple(rhs) != root.coords:
        raise ConstructionFailed("The root differs from its closed formula.")
    return True


def build_u(lattice: GramLattice, root: LatticeVector, part: int = 1) -> LatticeVector:
    """
    :math:`u = x_1+x_2+x_3-r` for the three points of a part.

    Raises:
        :obj:`~twodist.system.exceptions.PartNotOrthogonal`: if the points of
          the part are not pairwise orthogonal of norm 3.
        :obj:`~twodist.system.exceptions.ConstructionFailed`: if
          :math:`\\|u\\|^2\\neq 5` or :math:`\\langle r, u\\rangle\\neq 1`.
    """
    points = [lattice.point(label) for label in part_labels(part)]
    for a, b in combinations(points, 2):
        if inner(lattice, a, b) != 0:
            raise PartNotOrthogonal(f"Points of part {part} are not orthogonal.")
    if any(norm(lattice, p) != 3 for p in points):
        raise PartNotOrthogonal(f"Points of part {part} do not have norm 3.")
    u = points[0] + points[1] + points[2] - root
    if norm(lattice, u) != 5 or inner(lattice, root, u) != 1:
        raise ConstructionFailed(
            f"u from part {part} has norm {norm(lattice, u)} and <r, u> = {inner(lattice, root, u)}."
        )
    return u


def assemble_point_set(lattice: GramLattice, root: LatticeVector) -> PointSet277:
    """
    Add :math:`u` to the 276 embedded points. :math:`u` is built from every
    one of the 11 parts and all of them have to coincide.

    Raises:
        :obj:`~twodist.system.exceptions.ConstructionFailed`: if two parts
          give different points.
    """
    candidates = [build_u(lattice, root, part) for part in range(1, PARTS + 1)]
    for part, candidate in enumerate(candidates[1:], start=2):
        if candidate != candidates[0]:
            raise ConstructionFailed(f"Part {part} gives a different u than part 1.")
    points = {"u": candidates[0]}
    points.update(lattice.named_points)
    return PointSet277(GramLattice(lattice.gram, points, lattice.ambient_basis), root)


def distance_report(lattice: GramLattice) -> TwoDistanceReport:
    """
    Squared distances :math:`\\|a\\|^2+\\|b\\|^2-2\\langle a, b\\rangle` of all
    pairs of named points, computed exactly.

    Raises:
        :obj:`~twodist.system.exceptions.NotTwoDistance`: for the first pair
          whose squared distance is neither 4 nor 6.
    """
    labels = lattice.labels()
    gram = lattice.point_gram().to_int64()
    norms = np.diag(gram)
    distances = norms[:, None] + norms[None, :] - 2 * gram
    rows, cols = np.triu_indices(len(norms), k=1)
    values = distances[rows, cols]
    bad = np.flatnonzero(~np.isin(values, (4, 6)))
    if bad.size:
        i, j = int(rows[bad[0]]), int(cols[bad[0]])
        raise NotTwoDistance(pair=(labels[i], labels[j]), value=int(values[bad[0]]))
    return TwoDistanceReport(
        pairs=int(values.size),
        fours=int(np.count_nonzero(values == 4)),
        sixes=int(np.count_nonzero(values == 6)),
    )


def verify_two_distance(points: PointSet277) -> TwoDistanceReport:
    """All :math:`\\binom{277}{2}` squared distances, see :func:`distance_report`"""
    return distance_report(points.lattice)


def lemma_gram(n: int) -> IntMatrix:
    """Block matrix :math:`[[nI, J], [J, nI]]` of size :math:`2n`"""
    ident = np.identity(n, dtype=np.int64) * n
    ones = np.ones((n, n), dtype=np.int64)
    return IntMatrix(np.block([[ident, ones], [ones, ident]]))


def verify_lemma_sum(n: int, gram_check: IntMatrix) -> bool:
    r"""
    For :math:`a_1..a_n, b_1..b_n` with Gram matrix ``gram_check``, decide
    :math:`\|\sum a_i-\sum b_i\|^2 = 0` from the Gram matrix alone. For
    :math:`[[nI, J], [J, nI]]` this is :math:`n^2+n^2-2n^2 = 0`.
    """
    gram = as_object_array(gram_check)
    if gram.shape != (2 * n, 2 * n):
        raise DimensionMismatch(f"Expected a {2 * n}x{2 * n} Gram matrix.")
    signs = np.array([1] * n + [-1] * n, dtype=object)
    return signs @ gram @ signs == 0


def verify_parts_lemma(points: PointSet277) -> bool:
    """
    Every two parts of :math:`X` span a configuration with Gram matrix
    :math:`[[3I, J], [J, 3I]]`; their point sums coincide.

    Raises:
        :obj:`~twodist.system.exceptions.ConstructionFailed`: otherwise.
    """
    lattice = points.lattice
    expected = lemma_gram(3)
    for first, second in combinations(range(1, PARTS + 1), 2):
        labels = part_labels(first) + part_labels(second)
        gram = lattice.point_gram(labels)
        if not (gram == expected and verify_lemma_sum(3, gram)):
            raise ConstructionFailed(f"Parts {first} and {second} violate the sum identity.")
        sums = [
            sum((lattice.point(label) for label in part_labels(part)[1:]), lattice.point(part_labels(part)[0]))
            for part in (first, second)
        ]
        if sums[0] != sums[1]:
            raise ConstructionFailed(f"Parts {first} and {second} have different sums.")
    return True


def affine_hyperplane_check(points: PointSet277) -> bool:
    """True if :math:`\\langle r, z\\rangle = 1` for all 277 points"""
    return all(value == 1 for value in points.root_pairings().values())


def write_point_set(points: PointSet277, path: Union[Text, Path]) -> None:
    """Lattice file whose named points are the 277 points followed by the root"""
    lattice = points.lattice.with_points({ROOT_LABEL: points.root})
    write_lattice(lattice, path)


def read_point_set(path: Union[Text, Path]) -> PointSet277:
    """Read a point set written by :func:`write_point_set`, ambient basis included"""
    lattice = read_lattice(path)
    named = dict(lattice.named_points)
    root = named.pop(ROOT_LABEL)
    return PointSet277(GramLattice(lattice.gram, named, lattice.ambient_basis), root)
