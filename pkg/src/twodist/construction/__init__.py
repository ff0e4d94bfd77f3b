"""Construction of the 277-point two-distance set"""

from .point_set import (
    PointSet277,
    TwoDistanceReport,
    affine_hyperplane_check,
    assemble_point_set,
    build_u,
    distance_report,
    embed_points,
    find_switching_root,
    read_point_set,
    verify_lemma_sum,
    verify_parts_lemma,
    verify_root_formula,
    verify_two_distance,
    write_point_set,
)
from .surds import SQRT3, QuadraticSurd

__all__ = [
    "PointSet277",
    "TwoDistanceReport",
    "embed_points",
    "find_switching_root",
    "verify_root_formula",
    "build_u",
    "assemble_point_set",
    "distance_report",
    "verify_two_distance",
    "verify_lemma_sum",
    "verify_parts_lemma",
    "affine_hyperplane_check",
    "write_point_set",
    "read_point_set",
    "QuadraticSurd",
    "SQRT3",
]


def __dir__():
    return __all__
