r"""
Short vector enumeration (Fincke-Pohst) with exact acceptance.

The search walks the coordinates from the top of an :math:`LDL^\top`
decomposition downwards, bounding each coordinate by the remaining radius.
Of every pair :math:`\pm v` only the vector whose first non-zero coordinate
is positive is produced, and the zero vector is never produced. Children are
visited by increasing absolute value, positive before negative.

Floating point only guides the search, with a relative margin on the radius;
every emitted vector has its norm recomputed exactly from the integer scaled
Gram matrix before it is accepted.
"""

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
from tqdm import tqdm

from twodist.exactla.elimination import ldl
from twodist.exactla.matrices import RatMatrix

from .gram_lattice import GramLattice, LatticeVector

__all__ = [
    "ShortVectorBlock",
    "BlockConsumer",
    "CountingConsumer",
    "CollectingConsumer",
    "SearchPlan",
    "ShortVectorStream",
    "enumerate_short",
    "lattice_minimum",
]


def __dir__():
    return __all__


DEFAULT_BLOCK_SIZE = 65536
FLOAT_MARGIN = 1e-9
_INT64_SAFE = 2**62

Number = Union[float, Fraction]


@dataclass
class ShortVectorBlock:
    """
    Batch of canonical short vectors.

    Args:
        coords (``np.ndarray``): :math:`k\\times r` coordinates, one vector per row.
        scaled_norms (``np.ndarray``): exact norms times ``denominator``.
        denominator (``int``): scale of the Gram matrix used for the norms.
    """

    coords: np.ndarray
    scaled_norms: np.ndarray
    denominator: int

    def __len__(self):
        return self.coords.shape[0]

    def norms(self) -> List[Fraction]:
        return [Fraction(int(n), self.denominator) for n in self.scaled_norms]

    def __iter__(self) -> Iterator[Tuple[LatticeVector, Fraction]]:
        for row, value in zip(self.coords, self.norms()):
            yield LatticeVector(tuple(int(x) for x in row)), value


class BlockConsumer:
    """
    Reduction over a stream of blocks. Results of independent partial streams
    are combined with :meth:`merge`; merging has to be associative and
    independent of the order of the blocks.
    """

    def fresh(self) -> "BlockConsumer":
        """Empty consumer with the same parameters"""
        raise NotImplementedError

    def consume(self, block: ShortVectorBlock) -> None:
        raise NotImplementedError

    def merge(self, other: "BlockConsumer") -> None:
        raise NotImplementedError


@dataclass
class CountingConsumer(BlockConsumer):
    """Number of canonical vectors per norm"""

    histogram: Counter = field(default_factory=Counter)

    def fresh(self) -> "CountingConsumer":
        return CountingConsumer()

    def consume(self, block: ShortVectorBlock) -> None:
        values, counts = np.unique(block.scaled_norms, return_counts=True)
        for value, count in zip(values, counts):
            self.histogram[Fraction(int(value), block.denominator)] += int(count)

    def merge(self, other: "CountingConsumer") -> None:
        self.histogram.update(other.histogram)

    @property
    def count(self) -> int:
        return sum(self.histogram.values())

    @property
    def minimum(self) -> Optional[Fraction]:
        return min(self.histogram) if self.histogram else None


@dataclass
class CollectingConsumer(BlockConsumer):
    """All canonical vectors with their norms"""

    vectors: Dict[Tuple[int, ...], Fraction] = field(default_factory=dict)

    def fresh(self) -> "CollectingConsumer":
        return CollectingConsumer()

    def consume(self, block: ShortVectorBlock) -> None:
        for vector, value in block:
            self.vectors[vector.coords] = value

    def merge(self, other: "CollectingConsumer") -> None:
        self.vectors.update(other.vectors)

    def sorted(self) -> List[Tuple[LatticeVector, Fraction]]:
        """Vectors sorted by norm, then lexicographically"""
        return [
            (LatticeVector(coords), value)
            for coords, value in sorted(self.vectors.items(), key=lambda item: (item[1], item[0]))
        ]


@dataclass
class SearchPlan:
    r"""
    Everything a search needs, in a picklable form. Internally the basis is
    reversed, so the top level of the search is the first original coordinate.

    Args:
        rank (``int``): lattice rank :math:`r`.
        lower, upper (``Fraction``): exact norm window.
        exact (``bool``): exact rational search windows instead of floating point.
        columns (``List[List[Tuple[int, Number]]]``): for level :math:`k` the
          non-zero entries :math:`(i, L_{ik})`, :math:`i>k`, of the unit lower
          factor.
        diag (``List[Number]``): diagonal :math:`D_k`.
        bound (``Number``): search radius, widened by a margin in float mode.
        scaled_gram (``np.ndarray``): :math:`dG` in original order.
        denominator (``int``): :math:`d`.
        block_size (``int``): number of candidates per emitted block.
    """

    rank: int
    lower: Fraction
    upper: Fraction
    exact: bool
    columns: List[List[Tuple[int, Number]]]
    diag: List[Number]
    bound: Number
    scaled_gram: np.ndarray
    denominator: int
    block_size: int = DEFAULT_BLOCK_SIZE

    @classmethod
    def from_lattice(
        cls,
        lattice: GramLattice,
        lower: Fraction,
        upper: Fraction,
        exact: bool = False,
        block_size: int = DEFAULT_BLOCK_SIZE,
    ) -> "SearchPlan":
        rank = lattice.rank
        reversed_gram = lattice.gram.entries[::-1, ::-1]
        if exact:
            lower_factor, diag = ldl(RatMatrix(reversed_gram))
            factor = lower_factor.entries
            diag = list(diag)
            bound: Number = Fraction(upper)
        else:
            chol = scipy.linalg.cholesky(
                np.array(reversed_gram, dtype=float), lower=True, check_finite=True
            )
            pivots = np.diag(chol)
            factor = chol / pivots[None, :]
            diag = [float(x) for x in pivots**2]
            bound = float(upper) * (1.0 + FLOAT_MARGIN) + FLOAT_MARGIN
        columns = [
            [(i, factor[i, k] if exact else float(factor[i, k])) for i in range(k + 1, rank) if factor[i, k] != 0]
            for k in range(rank)
        ]
        return cls(
            rank=rank,
            lower=Fraction(lower),
            upper=Fraction(upper),
            exact=exact,
            columns=columns,
            diag=diag,
            bound=bound,
            scaled_gram=lattice.scaled_gram,
            denominator=lattice.scale_denominator,
            block_size=block_size,
        )

    def shrink(self, upper: Fraction) -> None:
        """Lower the radius of a running search"""
        self.upper = Fraction(upper)
        if self.exact:
            self.bound = self.upper
        else:
            self.bound = float(upper) * (1.0 + FLOAT_MARGIN) + FLOAT_MARGIN


def _ordered(lo: int, hi: int) -> List[int]:
    """Integers of ``[lo, hi]`` by absolute value, positive first"""
    values = [0] if lo <= 0 <= hi else []
    for m in range(1, max(abs(lo), abs(hi)) + 1):
        if m <= hi and m >= lo:
            values.append(m)
        if -m >= lo and -m <= hi:
            values.append(-m)
    return values


def _window(center: Number, room: Number, exact: bool) -> Tuple[int, int]:
    """Integers :math:`a` with :math:`(a-c)^2\\leq` ``room``"""
    width = math.sqrt(max(float(room), 0.0))
    if not exact:
        return math.ceil(center - width), math.floor(center + width)
    approx = float(center)
    lo, limit = math.floor(approx - width) - 1, approx + width + 1
    while lo <= limit and (lo - center) ** 2 > room:
        lo += 1
    hi = math.ceil(approx + width) + 1
    while hi >= lo and (hi - center) ** 2 > room:
        hi -= 1
    return lo, hi


def _center(plan: SearchPlan, level: int, coords: List[int]) -> Number:
    return -sum((value * coords[i] for i, value in plan.columns[level] if coords[i]), 0)


def _level_values(
    plan: SearchPlan, level: int, center: Number, above: Number, nonzero_above: bool
) -> List[int]:
    room = plan.bound - above
    if room < 0:
        return []
    lo, hi = _window(center, room / plan.diag[level], plan.exact)
    if not nonzero_above:
        lo = max(lo, 1 if level == 0 else 0)
    if lo > hi:
        return []
    return _ordered(lo, hi)


def _leaf_rows(plan: SearchPlan, coords: List[int], above: Number, nonzero_above: bool):
    values = _level_values(plan, 0, _center(plan, 0, coords), above, nonzero_above)
    if not values:
        return None
    rows = np.empty((len(values), plan.rank), dtype=np.int64)
    rows[:] = coords
    rows[:, 0] = values
    return rows


def _accept(plan: SearchPlan, buffer: List[np.ndarray]) -> Optional[ShortVectorBlock]:
    """Exact norm filter; turns internal rows back into original coordinates"""
    coords = np.ascontiguousarray(np.vstack(buffer)[:, ::-1])
    gram = plan.scaled_gram
    largest = int(np.abs(coords).max()) if coords.size else 0
    if gram.dtype == np.int64 and largest**2 * int(np.abs(gram).max()) * plan.rank**2 < _INT64_SAFE:
        scaled = np.einsum("ij,jk,ik->i", coords, gram, coords)
    else:
        obj = coords.astype(object)
        scaled = ((obj @ gram.astype(object)) * obj).sum(axis=1)
    den = plan.denominator
    lower = [n * plan.lower.denominator >= plan.lower.numerator * den for n in scaled]
    upper = [n * plan.upper.denominator <= plan.upper.numerator * den for n in scaled]
    mask = np.logical_and(lower, upper)
    if not mask.any():
        return None
    return ShortVectorBlock(coords=coords[mask], scaled_norms=np.asarray(scaled)[mask], denominator=den)


def search_blocks(plan: SearchPlan, prefix: Sequence[int] = ()) -> Iterator[ShortVectorBlock]:
    """
    Depth first search below a fixed prefix of the top levels, with explicit
    stacks. The last level is expanded as a whole into rows of a buffer.

    Args:
        plan (~twodist.lattice.enumeration.SearchPlan): search data.
        prefix (``Sequence[int]``): values of the internal levels
          :math:`r-1, r-2, \\dots`; at most :math:`r-1` of them.
    """
    rank = plan.rank
    assert len(prefix) < rank, "Prefix has to leave at least one free level."
    coords = [0] * rank
    partial: List[Number] = [0] * (rank + 1)
    nonzero = [False] * (rank + 1)
    level = rank - 1
    for value in prefix:
        center = _center(plan, level, coords)
        coords[level] = value
        partial[level] = partial[level + 1] + plan.diag[level] * (value - center) ** 2
        nonzero[level] = nonzero[level + 1] or value != 0
        level -= 1
    if partial[level + 1] > plan.bound:
        return

    buffer: List[np.ndarray] = []
    buffered = 0
    if level == 0:
        rows = _leaf_rows(plan, coords, partial[1], nonzero[1])
        if rows is not None:
            block = _accept(plan, [rows])
            if block is not None:
                yield block
        return

    top = level
    centers: List[Number] = [0] * rank
    candidates: List[List[int]] = [[] for _ in range(rank)]
    position = [0] * rank
    centers[level] = _center(plan, level, coords)
    candidates[level] = _level_values(plan, level, centers[level], partial[level + 1], nonzero[level + 1])
    while True:
        if position[level] < len(candidates[level]):
            value = candidates[level][position[level]]
            position[level] += 1
            coords[level] = value
            diff = value - centers[level]
            partial[level] = partial[level + 1] + plan.diag[level] * diff * diff
            nonzero[level] = nonzero[level + 1] or value != 0
            if level == 1:
                rows = _leaf_rows(plan, coords, partial[1], nonzero[1])
                if rows is not None:
                    buffer.append(rows)
                    buffered += len(rows)
                    if buffered >= plan.block_size:
                        block = _accept(plan, buffer)
                        buffer, buffered = [], 0
                        if block is not None:
                            yield block
            else:
                level -= 1
                centers[level] = _center(plan, level, coords)
                candidates[level] = _level_values(
                    plan, level, centers[level], partial[level + 1], nonzero[level + 1]
                )
                position[level] = 0
        else:
            coords[level] = 0
            level += 1
            if level > top:
                break
    if buffer:
        block = _accept(plan, buffer)
        if block is not None:
            yield block


def search_prefixes(plan: SearchPlan, depth: int) -> List[Tuple[int, ...]]:
    """All feasible values of the top ``depth`` internal levels, in search order"""
    rank = plan.rank
    depth = min(depth, rank - 1)
    prefixes: List[Tuple[int, ...]] = []
    coords = [0] * rank

    def walk(level: int, above: Number, nonzero_above: bool, values: Tuple[int, ...]):
        if len(values) == depth:
            prefixes.append(values)
            return
        center = _center(plan, level, coords)
        for value in _level_values(plan, level, center, above, nonzero_above):
            coords[level] = value
            walk(
                level - 1,
                above + plan.diag[level] * (value - center) ** 2,
                nonzero_above or value != 0,
                values + (value,),
            )
        coords[level] = 0

    walk(rank - 1, 0, False, ())
    return prefixes


class ShortVectorStream:
    """
    Canonical vectors :math:`v` of a lattice with
    ``lower <= <v, v> <= upper``, one of every pair :math:`\\pm v`.

    Args:
        lattice (~twodist.lattice.gram_lattice.GramLattice): positive definite lattice.
        lower, upper (``Fraction``): norm window, ``0 < lower <= upper``.
        exact (``bool``, default ``False``): use exact rational search windows.
          Floating point guidance is much faster, acceptance is exact either way.
        block_size (``int``, default ``65536``): rows per block.

    .. code-block:: python3

        >>> stream = enumerate_short(lattice, Fraction(2), Fraction(2))
        >>> stream.count()
        1
    """

    def __init__(
        self,
        lattice: GramLattice,
        lower: Fraction,
        upper: Fraction,
        exact: bool = False,
        block_size: int = DEFAULT_BLOCK_SIZE,
    ):
        lower, upper = Fraction(lower), Fraction(upper)
        if not 0 < lower <= upper:
            raise ValueError(f"Invalid norm window [{lower}, {upper}].")
        self.lattice = lattice
        self.plan = SearchPlan.from_lattice(lattice, lower, upper, exact, block_size)

    def __repr__(self):
        return (
            f"ShortVectorStream(rank={self.plan.rank}, window=[{self.plan.lower}, "
            f"{self.plan.upper}], exact={self.plan.exact})"
        )

    def blocks(self) -> Iterator[ShortVectorBlock]:
        return search_blocks(self.plan)

    def __iter__(self) -> Iterator[Tuple[LatticeVector, Fraction]]:
        for block in self.blocks():
            yield from block

    def reduce(
        self, consumer: BlockConsumer, workers: int = 1, progress: bool = False
    ) -> BlockConsumer:
        """
        Feed every block to ``consumer``. With more than one worker the search
        tree is split below its top two levels and the subtrees are processed
        in separate processes; partial results are merged in search order.

        Returns:
            :obj:`BlockConsumer`:
            the consumer holding the merged result.
        """
        if workers > 1:
            from .workers import parallel_reduce

            return parallel_reduce(self.plan, consumer, workers=workers, progress=progress)
        for block in tqdm(
            self.blocks(),
            disable=not progress,
            unit="block",
            bar_format="{l_bar}{bar:20}{r_bar}{bar:-20b}",
        ):
            consumer.consume(block)
        return consumer

    def count(self, workers: int = 1) -> int:
        """Number of canonical vectors, half the number of vectors in the window"""
        return self.reduce(CountingConsumer(), workers=workers).count

    def collect(self) -> List[Tuple[LatticeVector, Fraction]]:
        return self.reduce(CollectingConsumer()).sorted()


def enumerate_short(
    lattice: GramLattice,
    lower: Fraction,
    upper: Fraction,
    exact: bool = False,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> ShortVectorStream:
    """
    Stream of canonical lattice vectors with norm in ``[lower, upper]``.

    Args:
        lattice (~twodist.lattice.gram_lattice.GramLattice): lattice to search.
        lower, upper (``Fraction``): norm window.
        exact (``bool``, default ``False``): exact rational search windows.
        block_size (``int``, default ``65536``): rows per block.

    Returns:
        ~twodist.lattice.enumeration.ShortVectorStream:
        lazy stream; nothing is searched until it is iterated or reduced.
    """
    return ShortVectorStream(lattice, lower, upper, exact=exact, block_size=block_size)


def lattice_minimum(lattice: GramLattice, exact: bool = False) -> Fraction:
    """
    Exact minimum :math:`\\min_{v\\neq 0}\\langle v, v\\rangle`. The search
    starts at the smallest diagonal entry of the Gram matrix and shrinks its
    radius whenever a shorter vector shows up. Norms are always compared
    exactly, ``exact`` only selects rational search windows.
    """
    start = min(lattice.gram.entries[i, i] for i in range(lattice.rank))
    plan = SearchPlan.from_lattice(lattice, Fraction(0), start, exact=exact, block_size=1)
    best = Fraction(start)
    for block in search_blocks(plan):
        shortest = min(block.norms())
        if shortest < best:
            best = shortest
            plan.shrink(best)
    return best
