r"""
Admissibility of a candidate extension of the translated point set.

A point :math:`w` extends :math:`Z' = Z-u` to a two-distance set with
distances 4 and 6 only if its projection :math:`v` onto :math:`r^\perp`
satisfies, for every :math:`z'\in Z'`,

.. math::

    \langle z', v\rangle = \tfrac{1}{2}\left(\|z'\|^2+\|w\|^2-\|z'-w\|^2\right)
    \in \begin{cases}
        \{h, h-1\} & \|w\|^2 = 4 \\
        \{h, h+1\} & \|w\|^2 = 6
    \end{cases},
    \qquad h = \tfrac{1}{2}\|z'\|^2.

A candidate and its negation are tested separately.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Text, Tuple

import numpy as np

from twodist.lattice.enumeration import BlockConsumer, ShortVectorBlock
from twodist.lattice.gram_lattice import LatticeVector
from twodist.system.exceptions import VerificationError

__all__ = [
    "admissible_inner_set",
    "AdmissibilityVerdict",
    "AdmissibilityChecker",
    "AdmissibilityScreen",
    "discriminating_order",
]


def __dir__():
    return __all__


SPOT_CHECK_MODULUS = 100
_SPOT_CHECK_WEIGHTS = np.array([37 * k + 11 for k in range(64)], dtype=np.int64)
_CHUNK = 16

# offsets of <z', v> - h allowed by each test; -v is tested with the same offsets
_TESTS = {
    "adm4": (-1, 0),
    "adm6": (0, 1),
}


def admissible_inner_set(znorm: Fraction, wnorm: int) -> FrozenSet[Fraction]:
    """
    Allowed values of :math:`\\langle z', v\\rangle` for a point of squared
    norm ``znorm`` and an extension of squared norm ``wnorm``.

    .. code-block:: python3

        >>> sorted(admissible_inner_set(4, 4))
        [Fraction(1, 1), Fraction(2, 1)]
    """
    if wnorm not in (4, 6):
        raise ValueError(f"Extensions have squared norm 4 or 6, got {wnorm}.")
    half = Fraction(znorm) / 2
    return frozenset({half, half - 1} if wnorm == 4 else {half, half + 1})


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """
    Outcome of both tests for one oriented candidate.

    Args:
        candidate (~twodist.lattice.gram_lattice.LatticeVector): coordinates
          in the basis of the dual lattice.
        passes_adm4 (``bool``): every pairing lies in :math:`\\{h, h-1\\}`.
        passes_adm6 (``bool``): every pairing lies in :math:`\\{h, h+1\\}`.
    """

    candidate: LatticeVector
    passes_adm4: bool
    passes_adm6: bool

    @property
    def admissible(self) -> bool:
        return self.passes_adm4 or self.passes_adm6


def discriminating_order(pairings: np.ndarray, halves: np.ndarray, sample: np.ndarray) -> List[int]:
    """
    Greedy ordering of the points for early abort. The point rejecting most
    of the still unrejected (candidate, orientation, test) combinations of
    ``sample`` comes first; ties go to the smaller index.

    Args:
        pairings (``np.ndarray``): :math:`n\\times r` pairing vectors.
        halves (``np.ndarray``): :math:`h` for every point.
        sample (``np.ndarray``): :math:`k\\times r` candidate coordinates.
    """
    size = pairings.shape[0]
    if sample.size == 0:
        return list(range(size))
    products = sample @ pairings.T
    values = products - halves[None, :]
    negated = -products - halves[None, :]
    rejects = []
    for offsets in _TESTS.values():
        rejects.append(~np.isin(values, offsets))
        rejects.append(~np.isin(negated, offsets))
    # rows: combinations, columns: points
    rejects = np.vstack(rejects)
    alive = np.ones(rejects.shape[0], dtype=bool)
    order: List[int] = []
    remaining = np.ones(size, dtype=bool)
    while remaining.any():
        scores = np.where(remaining, rejects[alive].sum(axis=0), -1)
        best = int(np.argmax(scores))
        if scores[best] <= 0:
            break
        order.append(best)
        remaining[best] = False
        alive &= ~rejects[:, best]
    order.extend(int(i) for i in np.flatnonzero(remaining))
    return order


class AdmissibilityChecker:
    """
    Tests candidates of the dual lattice against a fixed set of points.

    Args:
        pairings (``np.ndarray``): integer :math:`n\\times r` matrix with
          :math:`\\langle z'_i, v\\rangle = P_i\\cdot c` for dual coordinates :math:`c`.
        norms (``Sequence[Fraction]``): squared norms of the points.
        labels (``Sequence[Text]``, default ``None``): names of the points.
        order (``Sequence[int]``, default ``None``): evaluation order for
          early abort, see :func:`discriminating_order`.
    """

    def __init__(
        self,
        pairings: np.ndarray,
        norms: Sequence[Fraction],
        labels: Optional[Sequence[Text]] = None,
        order: Optional[Sequence[int]] = None,
    ):
        self.pairings = np.asarray(pairings, dtype=np.int64)
        halves = [Fraction(n) / 2 for n in norms]
        if any(h.denominator != 1 for h in halves):
            raise ValueError("Squared norms of the points have to be even.")
        self.halves = np.array([int(h) for h in halves], dtype=np.int64)
        assert self.pairings.shape[0] == self.halves.shape[0], "One norm per point required."
        self.labels = list(labels) if labels is not None else [str(i) for i in range(len(halves))]
        self.order = list(order) if order is not None else list(range(len(halves)))
        assert sorted(self.order) == list(range(len(halves))), "Order is not a permutation."

    def __repr__(self):
        return f"AdmissibilityChecker(points={len(self.halves)}, rank={self.rank})"

    @property
    def rank(self) -> int:
        return self.pairings.shape[1]

    def reordered(self, sample: np.ndarray) -> "AdmissibilityChecker":
        """Copy evaluating points in the order that discriminates ``sample`` best"""
        return AdmissibilityChecker(
            self.pairings, [2 * int(h) for h in self.halves], self.labels,
            discriminating_order(self.pairings, self.halves, sample),
        )

    def inner_products(self, candidate: Sequence[int]) -> Dict[Text, int]:
        values = self.pairings @ np.asarray(candidate, dtype=np.int64)
        return {label: int(value) for label, value in zip(self.labels, values)}

    def _passes(self, candidate: Tuple[int, ...], allowed: Tuple[int, int], early_abort: bool) -> bool:
        result = True
        for index in self.order:
            value = sum(int(p) * c for p, c in zip(self.pairings[index], candidate))
            if value - int(self.halves[index]) not in allowed:
                result = False
                if early_abort:
                    break
        return result

    def verdict(self, candidate: Iterable[int], early_abort: bool = True) -> AdmissibilityVerdict:
        """
        Both tests for ``candidate`` as it is oriented, evaluated point by
        point in :attr:`order`.
        """
        candidate = LatticeVector(tuple(candidate))
        return AdmissibilityVerdict(
            candidate=candidate,
            passes_adm4=self._passes(candidate.coords, _TESTS["adm4"], early_abort),
            passes_adm6=self._passes(candidate.coords, _TESTS["adm6"], early_abort),
        )

    def screen(self, coords: np.ndarray) -> np.ndarray:
        """
        Vectorised tests for a block of canonical candidates.

        Returns:
            ``np.ndarray``:
            boolean :math:`k\\times 4` matrix, columns ``adm4(v)``,
            ``adm4(-v)``, ``adm6(v)``, ``adm6(-v)``.
        """
        coords = np.asarray(coords, dtype=np.int64)
        alive = np.ones((coords.shape[0], 4), dtype=bool)
        allowed = [_TESTS["adm4"], _TESTS["adm4"], _TESTS["adm6"], _TESTS["adm6"]]
        signs = [1, -1, 1, -1]
        for start in range(0, len(self.order), _CHUNK):
            rows = np.flatnonzero(alive.any(axis=1))
            if rows.size == 0:
                break
            index = self.order[start : start + _CHUNK]
            values = coords[rows] @ self.pairings[index].T
            for column, (sign, offsets) in enumerate(zip(signs, allowed)):
                ok = np.isin(sign * values - self.halves[index][None, :], offsets).all(axis=1)
                alive[rows, column] &= ok
        return alive


@dataclass
class AdmissibilityScreen(BlockConsumer):
    """
    Consumer of dual lattice blocks recording the norm histogram, the
    oriented survivors of both tests and an exact spot check of the pairings.

    Args:
        checker (~twodist.maximality.admissibility.AdmissibilityChecker): tests.
        exact_pairings (``np.ndarray``, default ``None``): integer matrix
          :math:`Q` and ``exact_denominator`` :math:`d` with
          :math:`dP = Q`, computed independently of :attr:`checker`. Roughly
          one candidate in a hundred, chosen from its coordinates, is checked
          against it.
        exact_denominator (``int``, default ``1``): :math:`d`.
    """

    checker: AdmissibilityChecker
    exact_pairings: Optional[np.ndarray] = field(default=None, repr=False)
    exact_denominator: int = 1
    histogram: Counter = field(default_factory=Counter)
    survivors_adm4: List[Tuple[int, ...]] = field(default_factory=list)
    survivors_adm6: List[Tuple[int, ...]] = field(default_factory=list)
    spot_checked: int = 0

    def fresh(self) -> "AdmissibilityScreen":
        return AdmissibilityScreen(self.checker, self.exact_pairings, self.exact_denominator)

    @property
    def count(self) -> int:
        return sum(self.histogram.values())

    def _spot_check(self, coords: np.ndarray) -> None:
        if self.exact_pairings is None:
            return
        weights = _SPOT_CHECK_WEIGHTS[: coords.shape[1]]
        sample = coords[(coords @ weights) % SPOT_CHECK_MODULUS == 0]
        if sample.shape[0] == 0:
            return
        obj = sample.astype(object)
        exact = obj @ self.exact_pairings.T.astype(object)
        fast = (sample @ self.checker.pairings.T).astype(object)
        if not (exact % self.exact_denominator == 0).all():
            raise VerificationError("A candidate has a non-integral inner product with a point.")
        if not (exact == fast * self.exact_denominator).all():
            raise VerificationError("Pairing vectors disagree with the exact inner products.")
        self.spot_checked += int(sample.shape[0])

    def consume(self, block: ShortVectorBlock) -> None:
        values, counts = np.unique(block.scaled_norms, return_counts=True)
        for value, count in zip(values, counts):
            self.histogram[Fraction(int(value), block.denominator)] += int(count)
        self._spot_check(block.coords)
        alive = self.checker.screen(block.coords)
        for row in np.flatnonzero(alive.any(axis=1)):
            vector = tuple(int(x) for x in block.coords[row])
            negated = tuple(-x for x in vector)
            if alive[row, 0]:
                self.survivors_adm4.append(vector)
            if alive[row, 1]:
                self.survivors_adm4.append(negated)
            if alive[row, 2]:
                self.survivors_adm6.append(vector)
            if alive[row, 3]:
                self.survivors_adm6.append(negated)

    def merge(self, other: "AdmissibilityScreen") -> None:
        self.histogram.update(other.histogram)
        self.survivors_adm4.extend(other.survivors_adm4)
        self.survivors_adm6.extend(other.survivors_adm6)
        self.spot_checked += other.spot_checked
