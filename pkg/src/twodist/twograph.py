r"""
The 276-vertex graph :math:`\Gamma` on :math:`X\cup Y` and its Seidel matrix.

:math:`X = \mathbb{F}_3\times\{1,\dots,11\}` carries a complete 11-partite
structure with parts :math:`\{(0,i),(1,i),(2,i)\}`, :math:`Y` is the dual of
the ternary Golay code. Vertex order is fixed: first
:math:`X` ordered by part and then by field element, then :math:`Y` in
lexicographic order.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence, Text, Tuple, Union

import numpy as np

from twodist.exactla.matrices import IntMatrix
from twodist.gf3codes import TernaryCode, TernaryWord
from twodist.system.exceptions import CodeSizeMismatch, NotEquitable

__all__ = [
    "Graph276",
    "QuotientMatrix",
    "build_gamma",
    "seidel_matrix",
    "quotient_matrix",
    "x_block_is_complete_multipartite",
    "degrees",
    "edge_count",
    "edge_list",
    "write_edge_list",
    "write_adjacency",
]


def __dir__():
    return __all__


PARTS = 11
Y_SIZE = 243

XVertex = Tuple[int, int]
"""Element :math:`(a, i)` of :math:`X` with :math:`a\\in\\mathbb{F}_3`, :math:`1\\leq i\\leq 11`"""


@dataclass(frozen=True)
class Graph276:
    """
    Simple graph on :math:`X\\cup Y` with a fixed vertex order.

    Args:
        x_vertices (``List[XVertex]``): the 33 vertices :math:`(a, i)`.
        y_vertices (``List[TernaryWord]``): the 243 words of the dual code.
        adjacency (``np.ndarray``): symmetric boolean matrix with zero diagonal.
    """

    x_vertices: List[XVertex]
    y_vertices: List[TernaryWord]
    adjacency: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        adj = np.asarray(self.adjacency, dtype=bool)
        size = len(self.x_vertices) + len(self.y_vertices)
        assert adj.shape == (size, size), "Adjacency does not match the vertex set."
        assert np.array_equal(adj, adj.T), "Adjacency has to be symmetric."
        assert not adj.diagonal().any(), "Graph has to be loop free."
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    def __len__(self):
        return len(self.x_vertices) + len(self.y_vertices)

    @property
    def vertices(self) -> List[Union[XVertex, TernaryWord]]:
        return list(self.x_vertices) + list(self.y_vertices)

    @property
    def x_size(self) -> int:
        return len(self.x_vertices)

    def part(self, index: int) -> List[int]:
        """Vertex indices of the multipartite part :math:`\\{(a, i)\\}` with ``i = index``"""
        return [k for k, (_, i) in enumerate(self.x_vertices) if i == index]

    def adjacency_matrix(self) -> IntMatrix:
        return IntMatrix(self.adjacency.astype(np.int64))


@dataclass(frozen=True)
class QuotientMatrix:
    """Quotient of an equitable two-cell partition; ``entries[i][j]`` neighbours in cell ``j``"""

    entries: Tuple[Tuple[int, int], Tuple[int, int]]

    def __getitem__(self, item):
        return self.entries[item]

    def tolist(self) -> List[List[int]]:
        return [list(row) for row in self.entries]


def build_gamma(y_code: TernaryCode) -> Graph276:
    r"""
    Construct :math:`\Gamma` with :math:`Y` the dual of the ternary Golay code.

    Adjacency:

        * :math:`(a,i)\sim(b,j)` iff :math:`i\neq j`,
        * :math:`(a,i)\sim y` iff :math:`y_i\neq a`,
        * :math:`y\sim y'` iff :math:`\mathrm{wt}(y-y')=6`.

    Args:
        y_code (~twodist.gf3codes.TernaryCode): dual of the ternary Golay code.

    Raises:
        :obj:`~twodist.system.exceptions.CodeSizeMismatch`: if the code does
          not have exactly 243 words.

    Returns:
        ~twodist.twograph.Graph276:
        the graph with the canonical vertex order.
    """
    y_vertices = list(y_code.codewords)
    if len(y_vertices) != Y_SIZE:
        raise CodeSizeMismatch(f"Code has {len(y_vertices)} words, expected {Y_SIZE}.")
    x_vertices = [(a, i) for i in range(1, PARTS + 1) for a in range(3)]

    x_part = np.array([i for _, i in x_vertices])
    x_elem = np.array([a for a, _ in x_vertices])
    words = np.array(y_vertices, dtype=np.int64)

    xx = x_part[:, None] != x_part[None, :]
    # y_i for every (a, i) against every word y
    xy = words[:, x_part - 1].T != x_elem[:, None]
    diff = (words[:, None, :] - words[None, :, :]) % 3
    yy = np.count_nonzero(diff, axis=2) == 6

    adjacency = np.block([[xx, xy], [xy.T, yy]])
    return Graph276(x_vertices=x_vertices, y_vertices=y_vertices, adjacency=adjacency)


def seidel_matrix(graph: Graph276) -> IntMatrix:
    """
    Seidel matrix :math:`S = 2A + I - J`: diagonal 0, adjacent pairs
    :math:`+1`, non-adjacent pairs :math:`-1`.
    """
    adj = graph.adjacency.astype(np.int64)
    size = len(graph)
    return IntMatrix(2 * adj + np.identity(size, dtype=np.int64) - np.ones((size, size), dtype=np.int64))


def quotient_matrix(graph: Graph276, cells: Sequence[Sequence[int]] = None) -> QuotientMatrix:
    """
    Quotient matrix of the partition :math:`\\{X, Y\\}`.

    Args:
        graph (~twodist.twograph.Graph276): the graph.
        cells (``Sequence[Sequence[int]]``, default ``None``): two cells of
          vertex indices; defaults to :math:`X` and :math:`Y`.

    Raises:
        :obj:`~twodist.system.exceptions.NotEquitable`: if the number of
          neighbours in a cell is not constant over the vertices of another cell.

    Returns:
        ~twodist.twograph.QuotientMatrix:
        ``[[30, 162], [22, 132]]`` for :math:`\\Gamma`.
    """
    if cells is None:
        cells = [range(graph.x_size), range(graph.x_size, len(graph))]
    cells = [np.asarray(list(cell), dtype=np.int64) for cell in cells]
    rows = []
    for source in cells:
        row = []
        for target in cells:
            counts = graph.adjacency[np.ix_(source, target)].sum(axis=1)
            if counts.min() != counts.max():
                raise NotEquitable(
                    f"Neighbour counts vary between {counts.min()} and {counts.max()}."
                )
            row.append(int(counts[0]))
        rows.append(tuple(row))
    return QuotientMatrix(entries=tuple(rows))


def x_block_is_complete_multipartite(graph: Graph276) -> bool:
    """True if the 33 :math:`X` vertices induce :math:`K_{3,3,\\dots,3}` on the 11 parts"""
    block = graph.adjacency[: graph.x_size, : graph.x_size]
    parts = np.array([i for _, i in graph.x_vertices])
    return bool(np.array_equal(block, parts[:, None] != parts[None, :]))


def degrees(graph: Graph276) -> Dict[Text, List[int]]:
    """Sorted distinct degrees on :math:`X` and on :math:`Y`"""
    deg = graph.adjacency.sum(axis=1)
    return {
        "X": sorted({int(d) for d in deg[: graph.x_size]}),
        "Y": sorted({int(d) for d in deg[graph.x_size :]}),
    }


def edge_count(graph: Graph276) -> int:
    return int(np.triu(graph.adjacency, k=1).sum())


def edge_list(graph: Graph276) -> List[Tuple[int, int]]:
    """Edges as pairs of 1-based vertex numbers ``i < j`` in lexicographic order"""
    rows, cols = np.nonzero(np.triu(graph.adjacency, k=1))
    return [(int(i) + 1, int(j) + 1) for i, j in zip(rows, cols)]


def write_edge_list(graph: Graph276, path: Union[Text, Path]) -> None:
    Path(path).write_text(
        "".join(f"{i} {j}\n" for i, j in edge_list(graph)), encoding="utf-8"
    )


def write_adjacency(graph: Graph276, path: Union[Text, Path]) -> None:
    """Adjacency matrix as whitespace separated rows of ``0``/``1``"""
    Path(path).write_text(
        "".join(" ".join("1" if x else "0" for x in row) + "\n" for row in graph.adjacency),
        encoding="utf-8",
    )
