"""Exact LLL reduction driven by the Gram matrix"""

from fractions import Fraction
from typing import List, Tuple

from twodist.exactla.matrices import IntMatrix

from .gram_lattice import GramLattice

__all__ = ["lll_unimodular", "lll_reduce", "is_lll_reduced"]


def __dir__():
    return __all__


def _gram_schmidt(gram) -> Tuple[List[List[Fraction]], List[Fraction]]:
    size = gram.shape[0]
    mu = [[Fraction(0)] * size for _ in range(size)]
    norms: List[Fraction] = []
    for i in range(size):
        for j in range(i):
            mu[i][j] = (
                Fraction(gram[i, j]) - sum((mu[j][k] * mu[i][k] * norms[k] for k in range(j)), Fraction(0))
            ) / norms[j]
        norms.append(
            Fraction(gram[i, i]) - sum((mu[i][k] * mu[i][k] * norms[k] for k in range(i)), Fraction(0))
        )
    return mu, norms


def lll_unimodular(gram, delta: Fraction = Fraction(3, 4)) -> IntMatrix:
    r"""
    Unimodular :math:`U` such that the basis :math:`UB` is LLL reduced.

    Works on Gram-Schmidt data only: size reduction
    :math:`|\mu_{kj}|\leq 1/2` and the Lovász condition
    :math:`B_k\geq(\delta-\mu_{k,k-1}^2)B_{k-1}`, all in exact rationals.

    Args:
        gram: positive definite Gram matrix (object array or exact matrix).
        delta (``Fraction``, default ``3/4``): Lovász parameter in :math:`(1/4, 1)`.

    Returns:
        ~twodist.exactla.matrices.IntMatrix:
        transformation whose rows express the reduced basis in the old one.
    """
    assert Fraction(1, 4) < delta < 1, "Lovász parameter has to be in (1/4, 1)."
    gram = getattr(gram, "entries", gram)
    size = gram.shape[0]
    mu, norms = _gram_schmidt(gram)
    basis = [[int(i == j) for j in range(size)] for i in range(size)]

    def size_reduce(k: int, l: int) -> None:
        if abs(mu[k][l]) <= Fraction(1, 2):
            return
        q = round(mu[k][l])
        basis[k] = [a - q * b for a, b in zip(basis[k], basis[l])]
        mu[k][l] -= q
        for i in range(l):
            mu[k][i] -= q * mu[l][i]

    def swap(k: int) -> None:
        basis[k], basis[k - 1] = basis[k - 1], basis[k]
        m = mu[k][k - 1]
        combined = norms[k] + m * m * norms[k - 1]
        mu[k][k - 1] = m * norms[k - 1] / combined
        norms[k] = norms[k - 1] * norms[k] / combined
        norms[k - 1] = combined
        for j in range(k - 1):
            mu[k - 1][j], mu[k][j] = mu[k][j], mu[k - 1][j]
        for i in range(k + 1, size):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    k = 1
    while k < size:
        size_reduce(k, k - 1)
        if norms[k] < (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
    return IntMatrix(basis)


def lll_reduce(lattice: GramLattice, delta: Fraction = Fraction(3, 4)) -> GramLattice:
    """
    LLL reduced basis of the same lattice. Named points and the ambient basis
    are transformed along, so every point keeps its meaning.
    """
    if lattice.rank < 2:
        return lattice
    return lattice.transformed(lll_unimodular(lattice.gram, delta))


def is_lll_reduced(lattice: GramLattice, delta: Fraction = Fraction(3, 4)) -> bool:
    mu, norms = _gram_schmidt(lattice.gram.entries)
    for k in range(1, lattice.rank):
        if any(abs(mu[k][j]) > Fraction(1, 2) for j in range(k)):
            return False
        if norms[k] < (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            return False
    return True
