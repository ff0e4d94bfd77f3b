"""Test the embedding, the switching root and the 277 points"""

from fractions import Fraction

import pytest

from twodist.construction import (
    PointSet277,
    QuadraticSurd,
    SQRT3,
    affine_hyperplane_check,
    build_u,
    distance_report,
    read_point_set,
    verify_parts_lemma,
    verify_root_formula,
    verify_two_distance,
    write_point_set,
)
from twodist.construction.point_set import lemma_gram, part_labels, verify_lemma_sum
from twodist.exactla import IntMatrix
from twodist.lattice import GramLattice, enumerate_short, inner, norm
from twodist.system.exceptions import NotTwoDistance


def test_embedding(gamma, embedding):
    """tester for the rank 24 lattice of the 276 points"""

    assert embedding.rank == 24, "A + 3I has rank 24."
    assert len(embedding.named_points) == 276, "Every vertex has to be a point."
    expected = gamma.adjacency_matrix() + IntMatrix.identity(276) * 3
    assert embedding.point_gram() == expected, "Gram matrix of the points differs from A + 3I."

    report = distance_report(embedding)
    assert report.to_dict() == {"pairs": 37_950, "distance_4": 21_879, "distance_6": 16_071}, (
        "Adjacent points are at squared distance 4, the others at 6."
    )


def test_switching_root(embedding, root):
    """tester for the unique norm 2 vector"""

    assert enumerate_short(embedding, Fraction(2), Fraction(2)).count() == 1, (
        "There has to be exactly one pair of norm 2 vectors."
    )
    assert norm(embedding, root) == 2, "Root has norm 2."
    assert all(inner(embedding, root, p) == 1 for p in embedding.named_points.values()), (
        "<r, v> = 1 for all 276 points."
    )
    assert verify_root_formula(embedding, root), "Closed formula of the root fails."


def test_point_u(embedding, root, points):
    """tester for the additional point u"""

    u = points.u
    assert norm(points.lattice, u) == 5, "u has norm 5."
    assert inner(points.lattice, root, u) == 1, "<r, u> = 1."
    assert all(build_u(embedding, root, part) == u for part in range(1, 12)), (
        "Every part has to give the same u."
    )
    assert points.labels[:2] == ["u", "x1"], "u comes first."


def test_two_distance(points):
    """tester for the 277-point two-distance set"""

    assert len(points) == 277, "There have to be 277 points."
    assert verify_two_distance(points).to_dict() == {
        "pairs": 38_226,
        "distance_4": 21_912,
        "distance_6": 16_314,
    }, "Distance counts are wrong."
    assert verify_parts_lemma(points), "Parts of X have to share their sums."
    assert affine_hyperplane_check(points), "All points lie on <r, z> = 1."


def test_not_two_distance(embedding):
    """tester for the distance check"""

    doubled = embedding.with_points({"bad": embedding.point("x1") * 2})
    with pytest.raises(NotTwoDistance) as err:
        distance_report(doubled)
    assert "bad" in err.value.pair, "Offending pair has to be named."


def test_lemma_sum():
    """tester for the two part sum identity"""

    assert verify_lemma_sum(3, lemma_gram(3)), "[[3I, J], [J, 3I]] has zero difference of sums."
    assert not verify_lemma_sum(2, IntMatrix.identity(4)), "Orthonormal vectors do not cancel."
    assert part_labels(2) == ["x4", "x5", "x6"], "Labels of part 2 are wrong."
    with pytest.raises(ValueError):
        part_labels(12)


def test_point_set_file(points, tmp_path):
    """tester for the point set file"""

    path = tmp_path / "points.lat"
    write_point_set(points, path)
    loaded = read_point_set(path)
    assert loaded.root == points.root, "Root changed on the way through the file."
    assert loaded.labels == points.labels, "Labels changed on the way through the file."
    assert loaded.point_gram() == points.point_gram(), "Points changed on the way through the file."
    assert loaded == points, "Loaded point set has to equal the computed one."

    lattice = points.lattice
    framed = PointSet277(
        GramLattice(lattice.gram, lattice.named_points, IntMatrix.identity(24) * 2), points.root
    )
    write_point_set(framed, path)
    assert read_point_set(path).lattice.ambient_basis == framed.lattice.ambient_basis, (
        "Ambient basis got lost."
    )


def test_quadratic_surds():
    """tester for exact arithmetic in Q(sqrt(3))"""

    half = (1 + SQRT3) * Fraction(1, 2)
    assert half * half == QuadraticSurd(1, Fraction(1, 2)), "((1+sqrt3)/2)^2 = 1 + sqrt3/2."
    assert (half * half * 2) - 2 == SQRT3, "2w^2 - 2 = sqrt3 for the root scale."
    assert (half * half.conjugate()).is_rational(), "Norm of a surd is rational."
    assert SQRT3 * SQRT3 == 3, "sqrt3 squared is 3."
    assert abs(float(half) - 1.3660254037844386) < 1e-12, "Float value is wrong."
    assert half != 1, "Irrational surds differ from integers."
