"""Test the graph on X and Y"""

import numpy as np
import pytest

from twodist.exactla.spectrum import certify_spectrum_gamma, certify_spectrum_seidel
from twodist.gf3codes import TernaryCode
from twodist.system.exceptions import CodeSizeMismatch, NotEquitable
from twodist.twograph import (
    build_gamma,
    degrees,
    edge_count,
    edge_list,
    quotient_matrix,
    seidel_matrix,
    write_adjacency,
    write_edge_list,
    x_block_is_complete_multipartite,
)


def test_vertex_sets(gamma):
    """tester for the vertex sets"""

    assert len(gamma.x_vertices) == 33, "X has to have 33 vertices."
    assert len(gamma.y_vertices) == 243, "Y has to have 243 vertices."
    assert len(gamma) == 276, "Graph has to have 276 vertices."
    assert gamma.part(4) == [9, 10, 11], "Part 4 holds the vertices (0,4), (1,4), (2,4)."


def test_equitable_partition(gamma):
    """tester for the quotient matrix and the degrees"""

    assert quotient_matrix(gamma).tolist() == [[30, 162], [22, 132]], "Quotient matrix is wrong."
    assert x_block_is_complete_multipartite(gamma), "X has to induce K_{3,...,3}."
    assert degrees(gamma) == {"X": [192], "Y": [154]}, "Degrees are wrong."
    assert edge_count(gamma) == 21_879, "Edge count is wrong."
    assert edge_count(gamma) == (33 * 192 + 243 * 154) // 2, "Handshake lemma fails."


def test_adjacency_rules(gamma):
    """tester for the three adjacency rules on a few vertices"""

    x_index = {vertex: k for k, vertex in enumerate(gamma.x_vertices)}
    zero = gamma.x_size + gamma.y_vertices.index((0,) * 11)
    # the zero word is adjacent to (a, i) exactly for a != 0
    assert gamma.adjacency[x_index[(1, 3)], zero], "(1, 3) has to see the zero word."
    assert not gamma.adjacency[x_index[(0, 3)], zero], "(0, 3) must not see the zero word."
    assert not gamma.adjacency[x_index[(0, 3)], x_index[(2, 3)]], "Same part, no edge."
    assert gamma.adjacency[x_index[(0, 3)], x_index[(2, 5)]], "Different parts are adjacent."

    y_neighbours = np.flatnonzero(gamma.adjacency[zero, gamma.x_size :])
    weights = {sum(1 for c in gamma.y_vertices[k] if c) for k in y_neighbours}
    assert weights == {6}, "Y neighbours of the zero word have weight 6."


def test_non_equitable_cells(gamma):
    """tester for the equitability check"""

    with pytest.raises(NotEquitable):
        quotient_matrix(gamma, [range(0, 40), range(40, len(gamma))])


def test_wrong_code_size(golay):
    """tester for the size check of Y"""

    with pytest.raises(CodeSizeMismatch):
        build_gamma(golay)
    with pytest.raises(CodeSizeMismatch):
        build_gamma(TernaryCode(np.identity(11, dtype=np.int64)[:4]))


def test_seidel_matrix(gamma):
    """tester for the sign convention of S"""

    seidel = seidel_matrix(gamma)
    size = len(gamma)
    assert seidel.is_symmetric(), "S has to be symmetric."
    assert all(seidel[i, i] == 0 for i in range(size)), "Diagonal of S is 0."
    assert seidel[0, 3] == 1 and seidel[0, 1] == -1, "Adjacent +1, non-adjacent -1."

    # A + A' + I = J for the complement A'
    complement = ~gamma.adjacency & ~np.identity(size, dtype=bool)
    expected = (
        np.ones((size, size), dtype=np.int64)
        - np.identity(size, dtype=np.int64)
        - 2 * complement.astype(np.int64)
    )
    assert np.array_equal(seidel.to_int64(), expected), "S has to equal J - I - 2A of the complement."


def test_edge_list(gamma, tmp_path):
    """tester for the edge list"""

    edges = edge_list(gamma)
    assert len(edges) == 21_879, "Edge list has the wrong length."
    assert all(1 <= i < j <= 276 for i, j in edges), "Edges have to be ordered 1-based pairs."
    assert edges[0] == (1, 4), "(0,1) ~ (0,2) is the first edge."
    path = tmp_path / "edges.txt"
    write_edge_list(gamma, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 21_879, "Edge file has the wrong length."
    assert lines[0] == "1 4", "Vertices are numbered from 1."


def test_adjacency_file(gamma, tmp_path):
    """tester for the adjacency text file"""

    path = tmp_path / "adjacency.txt"
    write_adjacency(gamma, path)
    assert len(path.read_text().splitlines()[0].split()) == 276, "Entries have to be separated."
    loaded = np.loadtxt(path, dtype=np.int64)
    assert np.array_equal(loaded, gamma.adjacency.astype(np.int64)), "Adjacency changed in the file."


def test_spectrum_gamma(gamma):
    """tester for the exact spectrum of the graph"""

    certificate = certify_spectrum_gamma(gamma.adjacency_matrix())
    assert certificate.multiplicity(27) == 22, "27 has multiplicity 22."
    assert certificate.multiplicity(-3) == 252, "-3 has multiplicity 252."
    assert certificate.multiplicity("81+sqrt(6165)") == 1, "81+sqrt(6165) is simple."
    assert certificate.multiplicity("81-sqrt(6165)") == 1, "81-sqrt(6165) is simple."
    assert certificate.ranks == {"27": 254, "-3": 24}, "Ranks are wrong."


def test_spectrum_seidel(gamma):
    """tester for the exact spectrum of S"""

    certificate = certify_spectrum_seidel(seidel_matrix(gamma))
    assert certificate.eigenvalues == [(55, 23), (-5, 253)], "Spectrum of S is wrong."
    assert certificate.annihilating_polynomial == [1, -50, -275], "(x-55)(x+5) expected."
