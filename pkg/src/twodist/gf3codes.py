"""
Linear codes over :math:`\\mathbb{F}_3` of length 11: the ternary Golay code,
duals and weight statistics. Field elements are the integers ``0, 1, 2`` with
arithmetic modulo 3.
"""

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from twodist.system.exceptions import CodeSizeMismatch

__all__ = [
    "TernaryWord",
    "TernaryCode",
    "ternary_golay",
    "dual",
    "weight",
    "weight_enumerator",
    "minimum_distance",
    "is_perfect",
    "write_codewords",
    "read_codewords",
    "code_from_words",
]


def __dir__():
    return __all__


LENGTH = 11
"""Length of every word handled by this module"""

TernaryWord = Tuple[int, ...]
"""A word of length 11 with entries in ``{0, 1, 2}``"""


def _row_reduce_mod3(matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form over GF(3).

    Args:
        matrix (``np.ndarray``): integer matrix, entries are taken modulo 3.

    Returns:
        ``Tuple[np.ndarray, List[int]]``:
        non-zero rows of the reduced form and the pivot columns.
    """
    mat = np.array(matrix, dtype=np.int64) % 3
    nrows, ncols = mat.shape
    pivots, row = [], 0
    for col in range(ncols):
        if row == nrows:
            break
        nonzero = np.nonzero(mat[row:, col])[0]
        if len(nonzero) == 0:
            continue
        pivot = row + nonzero[0]
        mat[[row, pivot]] = mat[[pivot, row]]
        # 1 and 2 are their own inverses modulo 3
        mat[row] = (mat[row] * mat[row, col]) % 3
        for other in range(nrows):
            if other != row and mat[other, col]:
                mat[other] = (mat[other] - mat[other, col] * mat[row]) % 3
        pivots.append(col)
        row += 1
    return mat[:row], pivots


@dataclass(frozen=True)
class TernaryCode:
    """
    Linear code over :math:`\\mathbb{F}_3` given by a generator matrix. The
    generator is stored in reduced row echelon form so two codes with the same
    row space compare equal.

    Args:
        generator (``np.ndarray``): :math:`k\\times 11` matrix over GF(3). Rows
          may be linearly dependent, they are reduced on construction.
    """

    generator: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        gen = np.atleast_2d(np.asarray(self.generator, dtype=np.int64))
        if gen.size == 0:
            gen = np.zeros((0, LENGTH), dtype=np.int64)
        assert gen.shape[1] == LENGTH, f"Words must have length {LENGTH}."
        reduced, _ = _row_reduce_mod3(gen)
        reduced.setflags(write=False)
        object.__setattr__(self, "generator", reduced)

    def __repr__(self):
        return f"TernaryCode(n={LENGTH}, k={self.dimension})"

    def __eq__(self, other):
        if not isinstance(other, TernaryCode):
            return NotImplemented
        return np.array_equal(self.generator, other.generator)

    def __hash__(self):
        return hash(self.generator.tobytes())

    def __len__(self):
        return 3**self.dimension

    def __iter__(self):
        yield from self.codewords

    def __contains__(self, word: Sequence[int]) -> bool:
        stacked = np.vstack([self.generator, np.asarray(word, dtype=np.int64) % 3])
        return len(_row_reduce_mod3(stacked)[0]) == self.dimension

    @property
    def length(self) -> int:
        return LENGTH

    @property
    def dimension(self) -> int:
        """Dimension :math:`k` of the code"""
        return self.generator.shape[0]

    @cached_property
    def codewords(self) -> List[TernaryWord]:
        """All :math:`3^k` codewords in lexicographic order"""
        if self.dimension == 0:
            return [(0,) * LENGTH]
        messages = np.array(
            list(itertools.product(range(3), repeat=self.dimension)), dtype=np.int64
        )
        words = (messages @ self.generator) % 3
        return sorted(tuple(int(x) for x in word) for word in words)

    def as_array(self) -> np.ndarray:
        """Codewords as a :math:`3^k\\times 11` integer array"""
        return np.array(self.codewords, dtype=np.int64)


def weight(word: Sequence[int]) -> int:
    """
    Hamming weight of a ternary word.

    Args:
        word (``Sequence[int]``): word over GF(3).

    Returns:
        ``int``:
        number of non-zero coordinates.
    """
    return sum(1 for x in word if x % 3)


def weight_enumerator(code: TernaryCode) -> Dict[int, int]:
    """
    Weight distribution of a code.

    Args:
        code (~twodist.gf3codes.TernaryCode): code to be enumerated.

    Returns:
        ``Dict[int, int]``:
        map from weight to the number of codewords of that weight, sorted by
        weight. Counts sum to :math:`3^k`.
    """
    weights = np.count_nonzero(code.as_array(), axis=1)
    counts = Counter(int(w) for w in weights)
    return dict(sorted(counts.items()))


def minimum_distance(code: TernaryCode) -> int:
    """Smallest weight of a non-zero codeword (0 for the zero code)"""
    nonzero = [w for w in weight_enumerator(code) if w > 0]
    return min(nonzero) if nonzero else 0


def is_perfect(code: TernaryCode, radius: int) -> bool:
    r"""
    Sphere packing equality :math:`|C|\sum_{i\leq t}\binom{n}{i}2^i = 3^n`.

    Args:
        code (~twodist.gf3codes.TernaryCode): code
        radius (``int``): packing radius :math:`t`.
    """
    ball = sum(comb(LENGTH, i) * 2**i for i in range(radius + 1))
    return len(code) * ball == 3**LENGTH


def dual(code: TernaryCode) -> TernaryCode:
    """
    Dual code with respect to the standard inner product modulo 3.

    Args:
        code (~twodist.gf3codes.TernaryCode): input code.

    Returns:
        ~twodist.gf3codes.TernaryCode:
        :math:`\\{y : \\langle y, c\\rangle \\equiv 0\\ \\forall c\\in C\\}` of
        dimension :math:`11 - k`.
    """
    reduced, pivots = _row_reduce_mod3(code.generator)
    free = [col for col in range(LENGTH) if col not in pivots]
    basis = []
    for col in free:
        vec = np.zeros(LENGTH, dtype=np.int64)
        vec[col] = 1
        for row, pivot in enumerate(pivots):
            vec[pivot] = (-reduced[row, col]) % 3
        basis.append(vec)
    if not basis:
        return TernaryCode(np.zeros((0, LENGTH), dtype=np.int64))
    return TernaryCode(np.array(basis))


def _poly_mod3_divmod(num: List[int], den: List[int]) -> Tuple[List[int], List[int]]:
    """Polynomial division over GF(3); coefficient lists start with the constant term"""
    num = [c % 3 for c in num]
    quotient = [0] * max(len(num) - len(den) + 1, 1)
    lead_inv = den[-1] % 3  # 1 and 2 are self-inverse
    for shift in range(len(num) - len(den), -1, -1):
        coef = (num[shift + len(den) - 1] * lead_inv) % 3
        quotient[shift] = coef
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - coef * d) % 3
    return quotient, num[: len(den) - 1]


def _quadratic_residue_generator() -> List[int]:
    """
    Generator polynomial of the ternary quadratic residue code of length 11.

    Over GF(3), :math:`x^{11}-1 = (x-1)g_1(x)g_2(x)` with :math:`g_1, g_2`
    irreducible of degree 5 whose roots are the primitive 11th roots of unity
    indexed by the quadratic residues and the non-residues modulo 11
    respectively. Both generate a ternary Golay code. The first monic divisor
    of degree 5 in lexicographic coefficient order is used.
    """
    modulus = [-1] + [0] * (LENGTH - 1) + [1]
    for tail in itertools.product(range(3), repeat=5):
        candidate = list(tail) + [1]
        if tail[0] == 0:
            continue
        _, remainder = _poly_mod3_divmod(modulus, candidate)
        if not any(remainder):
            return candidate
    raise AssertionError("x^11 - 1 has no monic divisor of degree 5 over GF(3).")


def ternary_golay() -> TernaryCode:
    """
    The perfect :math:`[11, 6, 5]` ternary Golay code, built as the cyclic
    quadratic residue code of length 11: its generator matrix consists of the
    six cyclic shifts :math:`x^i g(x)`, :math:`0\\leq i\\leq 5`.

    Raises:
        :obj:`~twodist.system.exceptions.CodeSizeMismatch`: if the construction
          does not give a code of dimension 6 and minimum distance 5.

    Returns:
        ~twodist.gf3codes.TernaryCode:
        the ternary Golay code.
    """
    poly = _quadratic_residue_generator()
    rows = []
    for shift in range(LENGTH - len(poly) + 1):
        row = [0] * LENGTH
        for i, c in enumerate(poly):
            row[shift + i] = c
        rows.append(row)
    code = TernaryCode(np.array(rows))
    if code.dimension != 6 or minimum_distance(code) != 5:
        raise CodeSizeMismatch(
            f"Quadratic residue construction gave {code!r} with minimum distance "
            f"{minimum_distance(code)}."
        )
    return code


def write_codewords(code: TernaryCode, path: Union[str, Path]) -> None:
    """Write codewords as lines of 11 digits in lexicographic order"""
    Path(path).write_text(
        "".join("".join(str(x) for x in word) + "\n" for word in code.codewords),
        encoding="utf-8",
    )


def read_codewords(path: Union[str, Path]) -> List[TernaryWord]:
    """Read codewords written by :func:`write_codewords`"""
    words = []
    for line in Path(path).read_text(encoding="utf-8").split():
        assert len(line) == LENGTH and set(line) <= set("012"), f"Invalid word {line}"
        words.append(tuple(int(x) for x in line))
    return words


def code_from_words(words: Iterable[Sequence[int]], dimension: Optional[int] = None) -> TernaryCode:
    """Code spanned by the given words, optionally checking its dimension"""
    code = TernaryCode(np.array([list(w) for w in words]))
    if dimension is not None and code.dimension != dimension:
        raise CodeSizeMismatch(f"Words span dimension {code.dimension}, expected {dimension}.")
    return code
