r"""
Maximality of the 277-point set.

:math:`Z' = Z-u` spans an integral lattice :math:`M\subset r^\perp` of rank
23. The projection onto :math:`r^\perp` of any point extending :math:`Z` to
a two-distance set pairs integrally with :math:`Z'`, so it lies in the dual
lattice :math:`M^*`, and its squared norm is at most 6. Running the
admissibility tests over all vectors of :math:`M^*` with norm in
:math:`[5/2, 6]` leaves :math:`\tfrac12 r-u` as the only candidate, which
lifts to :math:`w=\tfrac{1+\sqrt3}{2}r`.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Text, Tuple

import numpy as np

from twodist.construction.point_set import PointSet277
from twodist.construction.surds import SQRT3, QuadraticSurd
from twodist.exactla.matrices import IntMatrix, RatMatrix
from twodist.lattice.enumeration import DEFAULT_BLOCK_SIZE, enumerate_short, lattice_minimum
from twodist.lattice.gram_lattice import (
    GramLattice,
    LatticeVector,
    dual_lattice,
    inner,
    norm,
    pairing_matrix,
    sublattice,
)
from twodist.lattice.reduction import lll_reduce
from twodist.system.exceptions import (
    ConstructionFailed,
    CountMismatch,
    DimensionMismatch,
    IdentityFails,
    MissingExpectedSurvivor,
    NotTwoDistance,
    RankMismatch,
    UnexpectedSurvivor,
)

from .admissibility import AdmissibilityChecker, AdmissibilityScreen
from .certificate import ExtensionCertificate

__all__ = [
    "TranslatedSet",
    "translated_set",
    "build_m",
    "prepare_dual",
    "admissibility_checker",
    "warmup_sample",
    "expected_survivor",
    "bounded_checks",
    "certify_unique_extension",
    "verify_w_extension",
    "hyperplane_maximality",
]


def __dir__():
    return __all__


M_RANK = 23
MINIMUM = Fraction(5, 2)
UPPER = Fraction(6)
EXPECTED_PAIRS = 8_344_585
SURVIVOR_NORM = Fraction(9, 2)
HALF_ONE_PLUS_SQRT3 = (1 + SQRT3) * Fraction(1, 2)


@dataclass
class TranslatedSet:
    """
    The translated points :math:`z' = z-u`.

    Args:
        lattice (~twodist.lattice.gram_lattice.GramLattice): embedding lattice.
        zprime (``Dict[Text, LatticeVector]``): :math:`z-u` in coordinates of
          ``lattice``, keyed by the label of :math:`z`; ``u`` maps to zero.
        norms (``Dict[Text, Fraction]``): :math:`\\|z'\\|^2`.
        root (~twodist.lattice.gram_lattice.LatticeVector): switching root.
        u (~twodist.lattice.gram_lattice.LatticeVector): the translation.
    """

    lattice: GramLattice
    zprime: Dict[Text, LatticeVector]
    norms: Dict[Text, Fraction]
    root: LatticeVector
    u: LatticeVector

    def __len__(self):
        return len(self.zprime)

    @property
    def labels(self) -> List[Text]:
        return list(self.zprime)


def translated_set(points: PointSet277) -> TranslatedSet:
    """
    Translate the point set by :math:`-u`.

    Raises:
        :obj:`~twodist.system.exceptions.NotTwoDistance`: if a squared norm
          is not in :math:`\\{0, 4, 6\\}`.
        :obj:`~twodist.system.exceptions.ConstructionFailed`: if some inner
          product is not integral or some :math:`z'` is not orthogonal to
          the root.
    """
    lattice, u = points.lattice, points.u
    zprime = {label: point - u for label, point in lattice.named_points.items()}
    translated = GramLattice(lattice.gram, zprime)
    gram = translated.point_gram()
    if not isinstance(gram, IntMatrix):
        raise ConstructionFailed("Translated points have non-integral inner products.")
    labels = translated.labels()
    norms = {label: Fraction(gram[i, i]) for i, label in enumerate(labels)}
    for label, value in norms.items():
        if value not in (0, 4, 6):
            raise NotTwoDistance(pair=("u", label), value=value)
    if not any(vector.is_zero() for vector in zprime.values()):
        raise ConstructionFailed("The translated set does not contain the origin.")
    pairings = translated.points_matrix() @ lattice.gram @ IntMatrix([points.root.coords]).T
    if not pairings.is_zero():
        raise ConstructionFailed("Translated points are not orthogonal to the root.")
    return TranslatedSet(lattice, zprime, norms, points.root, u)


def build_m(translated: TranslatedSet) -> GramLattice:
    """
    The lattice :math:`M` spanned by :math:`Z'`, LLL reduced, with every
    :math:`z'` as named point in :math:`M`-coordinates.

    Raises:
        :obj:`~twodist.system.exceptions.RankMismatch`: if the rank is not 23.
        :obj:`~twodist.system.exceptions.ConstructionFailed`: if :math:`M` is
          not integral.
    """
    generators = {label: v for label, v in translated.zprime.items() if not v.is_zero()}
    spanned = sublattice(translated.lattice, generators, expected_rank=M_RANK)
    if not spanned.is_integral():
        raise ConstructionFailed("The span of the translated points is not integral.")
    zero = LatticeVector((0,) * spanned.rank)
    named = {
        label: spanned.named_points.get(label, zero) for label in translated.zprime
    }
    return lll_reduce(GramLattice(spanned.gram, named, spanned.ambient_basis))


def prepare_dual(m: GramLattice) -> GramLattice:
    """
    LLL reduced dual :math:`M^*`. Its ambient basis is expressed in the
    embedding lattice and its named points are the :math:`z'`.
    """
    return lll_reduce(dual_lattice(m))


def admissibility_checker(dual: GramLattice, translated: TranslatedSet) -> AdmissibilityChecker:
    """Checker whose pairing vectors act on coordinates of ``dual``"""
    labels = dual.labels()
    pairings = pairing_matrix(dual, labels)
    assert pairings.fits_int64(), "Pairing vectors exceed int64."
    return AdmissibilityChecker(
        pairings.to_int64(), [translated.norms[label] for label in labels], labels
    )


def _exact_pairings(dual: GramLattice, translated: TranslatedSet) -> Tuple[np.ndarray, int]:
    """
    :math:`Z' G A^{*\\top}` through the ambient basis of the dual, scaled to
    integers.
    """
    points = IntMatrix([translated.zprime[label].coords for label in dual.labels()])
    product = points @ translated.lattice.gram @ dual.ambient_basis.T
    scaled, den = RatMatrix(product).scaled()
    return scaled.entries, den


def warmup_sample(
    dual: GramLattice, size: int, lower: Fraction = MINIMUM, upper: Fraction = UPPER
) -> np.ndarray:
    """The first ``size`` canonical candidates of the search, in search order"""
    if size <= 0:
        return np.zeros((0, dual.rank), dtype=np.int64)
    rows, collected = [], 0
    for block in enumerate_short(dual, lower, upper, block_size=min(size, 4096)).blocks():
        rows.append(block.coords)
        collected += len(block)
        if collected >= size:
            break
    if not rows:
        return np.zeros((0, dual.rank), dtype=np.int64)
    return np.vstack(rows)[:size]


def _survivor_ambient(translated: TranslatedSet) -> Tuple[Fraction, ...]:
    return tuple(Fraction(a, 2) - b for a, b in zip(translated.root, translated.u))


def expected_survivor(dual: GramLattice, translated: TranslatedSet) -> LatticeVector:
    """
    :math:`\\tfrac12 r-u` in coordinates of ``dual``. Membership is decided
    directly: all pairings with :math:`Z'` have to be integral.

    Raises:
        :obj:`~twodist.system.exceptions.MissingExpectedSurvivor`: if the
          vector is not in the dual lattice.
    """
    ambient = _survivor_ambient(translated)
    for label, point in translated.zprime.items():
        if inner(translated.lattice, point, ambient).denominator != 1:
            raise MissingExpectedSurvivor(f"<{label}', r/2 - u> is not integral.")
    try:
        coords = dual.locate(ambient, translated.lattice.gram)
    except DimensionMismatch as err:
        raise MissingExpectedSurvivor(f"r/2 - u is not in the span: {err}") from err
    if any(c.denominator != 1 for c in coords):
        raise MissingExpectedSurvivor("r/2 - u has non-integral dual coordinates.")
    return LatticeVector(coords)


def bounded_checks(
    m: GramLattice, translated: TranslatedSet, dual: Optional[GramLattice] = None
) -> Dict[Text, object]:
    """
    The part of the maximality proof that needs no full enumeration: the
    rank of :math:`M`, :math:`\\min M^* = 5/2`, and the tests on
    :math:`\\tfrac12 r-u`.

    Raises:
        :obj:`~twodist.system.exceptions.RankMismatch`,
        :obj:`~twodist.system.exceptions.CountMismatch`: if the rank or the
          minimum differ.
        :obj:`~twodist.system.exceptions.MissingExpectedSurvivor`: if the
          survivor is not in the dual or fails the norm 6 test.
        :obj:`~twodist.system.exceptions.UnexpectedSurvivor`: if it passes
          the norm 4 test.
    """
    if m.rank != M_RANK:
        raise RankMismatch(f"M has rank {m.rank}, expected {M_RANK}.")
    dual = prepare_dual(m) if dual is None else dual
    minimum = lattice_minimum(dual)
    if minimum != MINIMUM:
        raise CountMismatch(f"Minimum of the dual lattice is {minimum}, expected {MINIMUM}.")
    survivor = expected_survivor(dual, translated)
    survivor_norm = norm(dual, survivor)
    if survivor_norm != SURVIVOR_NORM:
        raise MissingExpectedSurvivor(f"r/2 - u has norm {survivor_norm}.")
    verdict = admissibility_checker(dual, translated).verdict(survivor, early_abort=False)
    if not verdict.passes_adm6:
        raise MissingExpectedSurvivor("r/2 - u fails the norm 6 test.")
    if verdict.passes_adm4:
        raise UnexpectedSurvivor(vector=survivor.coords, message="r/2 - u passes the norm 4 test.")
    return {
        "rank": m.rank,
        "determinant": m.determinant,
        "dual_minimum": minimum,
        "survivor": survivor.coords,
        "survivor_ambient": _survivor_ambient(translated),
        "survivor_norm": survivor_norm,
        "survivor_passes_adm4": verdict.passes_adm4,
        "survivor_passes_adm6": verdict.passes_adm6,
    }


def certify_unique_extension(
    m: GramLattice,
    translated: TranslatedSet,
    r: LatticeVector,
    u: LatticeVector,
    workers: int = 1,
    progress: bool = False,
    warmup_size: int = 10_000,
    block_size: int = DEFAULT_BLOCK_SIZE,
    expected_pairs: Optional[int] = EXPECTED_PAIRS,
    dual: Optional[GramLattice] = None,
) -> ExtensionCertificate:
    """
    Run both admissibility tests on every vector of :math:`M^*` with squared
    norm in :math:`[5/2, 6]` and on its negation.

    Args:
        m (~twodist.lattice.gram_lattice.GramLattice): the lattice :math:`M`.
        translated (~twodist.maximality.extension.TranslatedSet): :math:`Z'`.
        r, u (~twodist.lattice.gram_lattice.LatticeVector): root and translation
          in coordinates of the embedding lattice.
        workers (``int``, default ``1``): processes for the enumeration.
        progress (``bool``, default ``False``): show progress.
        warmup_size (``int``, default ``10000``): candidates used to order the
          points for early abort.
        block_size (``int``): rows per enumeration block.
        expected_pairs (``int``, default ``8344585``): required number of
          :math:`\\pm` pairs, ``None`` to skip the count.
        dual (~twodist.lattice.gram_lattice.GramLattice, default ``None``):
          reduced dual, computed from ``m`` if not given.

    Raises:
        :obj:`~twodist.system.exceptions.CountMismatch`: wrong number of pairs.
        :obj:`~twodist.system.exceptions.UnexpectedSurvivor`: a vector passes
          the norm 4 test, or a vector other than :math:`\\tfrac12 r-u`
          passes the norm 6 test.
        :obj:`~twodist.system.exceptions.MissingExpectedSurvivor`:
          :math:`\\tfrac12 r-u` does not pass.

    Returns:
        ~twodist.maximality.certificate.ExtensionCertificate:
        certificate with a ``maximality`` section.
    """
    if r != translated.root or u != translated.u:
        raise ConstructionFailed("Root and translation do not belong to the translated set.")
    dual = prepare_dual(m) if dual is None else dual
    survivor = expected_survivor(dual, translated)
    checker = admissibility_checker(dual, translated)
    checker = checker.reordered(warmup_sample(dual, warmup_size))
    exact, den = _exact_pairings(dual, translated)
    screen = AdmissibilityScreen(checker, exact, den)
    screen = enumerate_short(dual, MINIMUM, UPPER, block_size=block_size).reduce(
        screen, workers=workers, progress=progress
    )

    if expected_pairs is not None and screen.count != expected_pairs:
        raise CountMismatch(f"Found {screen.count} pairs, expected {expected_pairs}.")
    if screen.survivors_adm4:
        raise UnexpectedSurvivor(vector=screen.survivors_adm4[0])
    survivors = sorted(set(screen.survivors_adm6))
    if survivor.coords not in survivors:
        raise MissingExpectedSurvivor("r/2 - u did not pass the norm 6 test.")
    for vector in survivors:
        if vector != survivor.coords:
            raise UnexpectedSurvivor(vector=vector)

    certificate = ExtensionCertificate(workers=workers)
    certificate.record(
        "maximality",
        {
            "lower": MINIMUM,
            "upper": UPPER,
            "pairs": screen.count,
            "signed_vectors": 2 * screen.count,
            "norm_histogram": dict(sorted(screen.histogram.items())),
            "smallest_norm": min(screen.histogram) if screen.histogram else None,
            "survivors_adm4": sorted(set(screen.survivors_adm4)),
            "survivors_adm6": survivors,
            "survivor_ambient": _survivor_ambient(translated),
            "spot_checked": screen.spot_checked,
        },
    )
    return certificate


def _coefficient(value) -> QuadraticSurd:
    return value if isinstance(value, QuadraticSurd) else QuadraticSurd(value)


def verify_w_extension(points: PointSet277, r: LatticeVector) -> bool:
    """
    Check exactly in :math:`\\mathbb{Q}[\\sqrt3]` that
    :math:`\\|z-w\\|^2 = \\|z\\|^2+2+\\sqrt3-(1+\\sqrt3)\\langle z,r\\rangle`
    is 6 for :math:`z=u` and 4 for every other point, where
    :math:`w=\\tfrac{1+\\sqrt3}{2}r`.

    Raises:
        :obj:`~twodist.system.exceptions.IdentityFails`: for the first point
          where it does not hold.
    """
    lattice = points.lattice
    scale = HALF_ONE_PLUS_SQRT3
    root_norm = norm(lattice, r)
    for label, z in lattice.named_points.items():
        distance = norm(lattice, z) - 2 * scale * inner(lattice, z, r) + scale * scale * root_norm
        expected = 6 if label == "u" else 4
        if distance != expected:
            raise IdentityFails(
                point=label, message=f"|{label} - w|^2 = {distance}, expected {expected}."
            )
    return True


def hyperplane_maximality(points: PointSet277, r: LatticeVector, survivor: Tuple) -> bool:
    """
    The only extension lies outside the hyperplane :math:`\\langle\\cdot,r\\rangle=1`.

    ``survivor`` is :math:`v=\\tfrac12 r-u` in coordinates of the embedding
    lattice. It lifts to :math:`w = u+v+\\tfrac{\\sqrt3}{2}r`, which has to be
    :math:`\\tfrac{1+\\sqrt3}{2}r` with :math:`\\|w-u\\|^2=6` and
    :math:`\\langle w,r\\rangle = 1+\\sqrt3\\neq 1`.

    Raises:
        :obj:`~twodist.system.exceptions.IdentityFails`: if any of this fails.

    Returns:
        ``bool``:
        ``True``, no point of the hyperplane extends the set.
    """
    lattice = points.lattice
    lift = SQRT3 * Fraction(1, 2)
    lifted = [_coefficient(a + b) + lift * c for a, b, c in zip(points.u, survivor, r)]
    target = [HALF_ONE_PLUS_SQRT3 * c for c in r]
    if lifted != target:
        raise IdentityFails(point="w", message="The survivor does not lift to (1+sqrt(3))/2 r.")
    if norm(lattice, survivor) + lift * lift * norm(lattice, r) != 6:
        raise IdentityFails(point="w", message="The lifted point is not at squared distance 6 from u.")
    pairing = HALF_ONE_PLUS_SQRT3 * norm(lattice, r)
    if pairing == 1 or pairing != 1 + SQRT3:
        raise IdentityFails(point="w", message=f"<w, r> = {pairing}.")
    return True
