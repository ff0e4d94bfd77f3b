"""Exact integer and rational linear algebra"""

from .basis import lattice_basis_from_gram
from .elimination import determinant, inverse, ldl, rank, solve_rational
from .hermite import hnf, hnf_solve
from .matrices import IntMatrix, RatMatrix, read_matrix, write_matrix
from .spectrum import (
    SpectrumCertificate,
    certify_spectrum,
    certify_spectrum_gamma,
    certify_spectrum_seidel,
)

__all__ = [
    "IntMatrix",
    "RatMatrix",
    "read_matrix",
    "write_matrix",
    "rank",
    "determinant",
    "inverse",
    "solve_rational",
    "ldl",
    "hnf",
    "hnf_solve",
    "lattice_basis_from_gram",
    "SpectrumCertificate",
    "certify_spectrum",
    "certify_spectrum_gamma",
    "certify_spectrum_seidel",
]


def __dir__():
    return __all__
