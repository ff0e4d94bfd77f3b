"""Lattice bases from Gram matrices of generating sets"""

from fractions import Fraction
from math import lcm
from typing import List, Tuple, Union

import numpy as np

from twodist.system.exceptions import DimensionMismatch, NotPSD

from .hermite import hnf, hnf_solve
from .matrices import IntMatrix, RatMatrix, as_object_array

__all__ = ["select_generators", "lattice_basis_from_gram"]


def __dir__():
    return __all__


def select_generators(gram: Union[IntMatrix, RatMatrix]) -> Tuple[List[int], List[List[Fraction]]]:
    """
    Greedily choose a maximal linearly independent subset of the generators.

    A generator is kept when its Schur complement against the generators kept
    so far, :math:`g_{kk} - g_{kI}G_{II}^{-1}g_{Ik}`, is positive. For a
    positive semi-definite Gram matrix this is the squared distance to the
    span of the kept vectors, so a zero complement means dependence.

    Raises:
        :obj:`~twodist.system.exceptions.NotPSD`: if a complement is negative.

    Returns:
        ``Tuple[List[int], List[List[Fraction]]]``:
        indices of the kept generators and the exact inverse of their Gram matrix.
    """
    g = as_object_array(gram)
    chosen: List[int] = []
    inv: List[List[Fraction]] = []
    for k in range(g.shape[0]):
        b = [Fraction(g[c, k]) for c in chosen]
        w = [sum((row[j] * b[j] for j in range(len(b))), Fraction(0)) for row in inv]
        schur = Fraction(g[k, k]) - sum((bi * wi for bi, wi in zip(b, w)), Fraction(0))
        if schur < 0:
            raise NotPSD(f"Generator {k} has Schur complement {schur}.")
        if schur == 0:
            continue
        # block inverse of [[G, b], [b^T, g_kk]]
        inv = [
            [inv[i][j] + w[i] * w[j] / schur for j in range(len(w))] + [-w[i] / schur]
            for i in range(len(w))
        ] + [[-wj / schur for wj in w] + [1 / schur]]
        chosen.append(k)
    return chosen, inv


def lattice_basis_from_gram(
    gram: Union[IntMatrix, RatMatrix]
) -> Tuple[Union[IntMatrix, RatMatrix], IntMatrix]:
    r"""
    Basis Gram matrix :math:`B` and integer coordinates :math:`T` of the
    lattice generated by vectors with Gram matrix :math:`G`, such that
    :math:`TBT^\top = G`.

    The generators are written in the frame of an independent subset
    :math:`I`, :math:`c_k = G_{kI}G_{II}^{-1}`. After clearing the common
    denominator :math:`D` the Hermite normal form :math:`H` of the scaled
    coordinates is a basis of the generated lattice (in frame coordinates
    :math:`H/D`), hence :math:`B = HG_{II}H^\top/D^2` and every :math:`Dc_k`
    has integral coordinates with respect to :math:`H`.

    Args:
        gram: symmetric positive semi-definite Gram matrix.

    Raises:
        :obj:`~twodist.system.exceptions.NotPSD`: if the Gram matrix is not
          positive semi-definite or not realised by the computed basis.

    Returns:
        ``Tuple[IntMatrix or RatMatrix, IntMatrix]``:
        :math:`r\times r` basis Gram matrix and :math:`n\times r` coordinates.
    """
    g = as_object_array(gram)
    if g.shape[0] != g.shape[1] or np.any(g != g.T):
        raise DimensionMismatch("Gram matrix has to be square and symmetric.")
    chosen, inv = select_generators(g)
    size, dim = g.shape[0], len(chosen)

    frame = [
        [sum((Fraction(g[k, c]) * inv[i][j] for i, c in enumerate(chosen)), Fraction(0)) for j in range(dim)]
        for k in range(size)
    ]
    den = lcm(1, *(x.denominator for row in frame for x in row))
    scaled = [[int(x * den) for x in row] for row in frame]

    herm = hnf(scaled)
    if herm.rows != dim:
        raise NotPSD(f"Hermite basis has {herm.rows} rows for a span of dimension {dim}.")
    gram_frame = RatMatrix(g[np.ix_(chosen, chosen)])
    basis_gram = herm @ gram_frame @ herm.T * Fraction(1, den * den)

    coords = []
    for k, row in enumerate(scaled):
        solution = hnf_solve(herm, row)
        if solution is None:
            raise NotPSD(f"Generator {k} is not in the lattice spanned by the Hermite basis.")
        coords.append(solution)
    coords = IntMatrix(coords)

    if basis_gram.is_integral():
        basis_gram = basis_gram.to_int()
    if not (coords @ basis_gram @ coords.T) == g:
        raise NotPSD("The computed basis does not reproduce the Gram matrix.")
    return basis_gram, coords
