"""Test the admissibility tests and the maximality certificate"""

import os
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from twodist.lattice import enumerate_short, norm
from twodist.maximality import (
    AdmissibilityScreen,
    admissible_inner_set,
    bounded_checks,
    certify_unique_extension,
    discriminating_order,
    expected_survivor,
    hyperplane_maximality,
    verify_w_extension,
)
from twodist.maximality.admissibility import _SPOT_CHECK_WEIGHTS, SPOT_CHECK_MODULUS
from twodist.maximality.extension import admissibility_checker, warmup_sample
from twodist.system.exceptions import ConstructionFailed, VerificationError


def test_admissible_inner_set():
    """tester for the allowed pairings"""

    assert admissible_inner_set(4, 4) == {1, 2}, "Norm 4 extension of a norm 4 point."
    assert admissible_inner_set(6, 6) == {3, 4}, "Norm 6 extension of a norm 6 point."
    assert admissible_inner_set(0, 4) == {-1, 0}, "Norm 4 extension of the origin."
    assert admissible_inner_set(Fraction(5, 1), 6) == {Fraction(5, 2), Fraction(7, 2)}, (
        "Odd norms give half integers."
    )
    with pytest.raises(ValueError):
        admissible_inner_set(4, 5)


def test_translated_set(translated):
    """tester for Z - u"""

    assert len(translated) == 277, "Translation keeps all points."
    assert Counter(translated.norms.values()) == {0: 1, 4: 33, 6: 243}, "Norms of z - u are wrong."
    assert translated.zprime["u"].is_zero(), "u moves to the origin."


def test_lattice_m(m_lattice):
    """tester for the span of Z - u"""

    assert m_lattice.rank == 23, "Z - u spans rank 23."
    assert m_lattice.is_integral(), "M has to be integral."
    assert len(m_lattice.named_points) == 277, "Every z - u is a point of M."


def test_bounded_checks(m_lattice, translated, dual_lattice_m):
    """tester for the checks without full enumeration"""

    values = bounded_checks(m_lattice, translated, dual_lattice_m)
    assert values["rank"] == 23, "Rank is wrong."
    assert values["dual_minimum"] == Fraction(5, 2), "Minimum of the dual is 5/2."
    assert values["survivor_norm"] == Fraction(9, 2), "r/2 - u has norm 9/2."
    assert values["survivor_passes_adm6"], "r/2 - u passes the norm 6 test."
    assert not values["survivor_passes_adm4"], "r/2 - u fails the norm 4 test."
    assert values["survivor_ambient"] == tuple(
        Fraction(a, 2) - b for a, b in zip(translated.root, translated.u)
    ), "Survivor is not r/2 - u."


def test_expected_survivor(translated, dual_lattice_m):
    """tester for r/2 - u in the dual lattice"""

    survivor = expected_survivor(dual_lattice_m, translated)
    assert norm(dual_lattice_m, survivor) == Fraction(9, 2), "Norm in the dual is wrong."
    checker = admissibility_checker(dual_lattice_m, translated)
    products = checker.inner_products(survivor)
    assert products["u"] == 0, "The origin pairs to zero."
    assert all(products[f"x{k}"] == 3 for k in range(1, 34)), "<x - u, r/2 - u> = 3."
    assert all(products[f"y{k}"] == 4 for k in range(1, 244)), "<y - u, r/2 - u> = 4."


def test_screen_matches_verdict(translated, dual_lattice_m):
    """tester for the vectorised tests against the point by point tests"""

    sample = warmup_sample(dual_lattice_m, 300)
    checker = admissibility_checker(dual_lattice_m, translated)
    survivor = expected_survivor(dual_lattice_m, translated)
    sample = np.vstack([sample, np.array([survivor.coords], dtype=np.int64)])
    order = discriminating_order(checker.pairings, checker.halves, sample)
    assert sorted(order) == list(range(277)), "Order has to be a permutation."

    reordered = checker.reordered(sample)
    screened = reordered.screen(sample)
    for row, flags in zip(sample, screened):
        plus, minus = checker.verdict(row, early_abort=False), checker.verdict(-row, early_abort=False)
        expected = [plus.passes_adm4, minus.passes_adm4, plus.passes_adm6, minus.passes_adm6]
        assert flags.tolist() == expected, "Screen and verdict disagree."
        fast = reordered.verdict(row)
        assert (fast.passes_adm4, fast.passes_adm6) == (plus.passes_adm4, plus.passes_adm6), (
            "Early abort changes the verdict."
        )
    assert screened[-1].tolist() == [False, False, True, False], "Only r/2 - u passes, norm 6."


def test_screen_workers_and_spot_check(translated, dual_lattice_m):
    """tester for the admissibility consumer on a small window"""

    checker = admissibility_checker(dual_lattice_m, translated)
    stream = enumerate_short(dual_lattice_m, Fraction(5, 2), Fraction(3), block_size=512)
    serial = stream.reduce(AdmissibilityScreen(checker, checker.pairings, 1))
    parallel = stream.reduce(AdmissibilityScreen(checker, checker.pairings, 1), workers=2)
    assert serial.count > 0, "The window has to contain vectors."
    assert serial.histogram == parallel.histogram, "Worker count changes the histogram."
    assert sorted(serial.survivors_adm6) == sorted(parallel.survivors_adm6), "Survivors differ."
    assert min(serial.histogram) == Fraction(5, 2), "Smallest norm is 5/2."

    block = next(
        enumerate_short(dual_lattice_m, Fraction(5, 2), Fraction(6), block_size=5000).blocks()
    )
    sampled = (block.coords @ _SPOT_CHECK_WEIGHTS[: block.coords.shape[1]]) % SPOT_CHECK_MODULUS == 0
    assert sampled.any(), "Spot check has to select some candidates."
    checked = AdmissibilityScreen(checker, checker.pairings, 1)
    checked.consume(block)
    assert checked.spot_checked == int(sampled.sum()), "Every selected candidate is checked."
    broken = AdmissibilityScreen(checker, checker.pairings * 2, 1)
    with pytest.raises(VerificationError):
        broken.consume(block)


def test_w_extension(points, root):
    """tester for the extension by (1+sqrt3)/2 r"""

    assert verify_w_extension(points, root), "|z - w|^2 has to be 4, and 6 for u."


def test_hyperplane_maximality(points, root, translated):
    """tester for the lift of the survivor"""

    survivor = tuple(Fraction(a, 2) - b for a, b in zip(translated.root, translated.u))
    assert hyperplane_maximality(points, root, survivor), "Survivor has to lift to w."


def test_mismatched_root(m_lattice, translated, root, points):
    """tester for the consistency check of the long run"""

    with pytest.raises(ConstructionFailed):
        certify_unique_extension(m_lattice, translated, -root, points.u)


@pytest.mark.skipif(
    os.environ.get("TWODIST_LONG") != "1", reason="full enumeration, set TWODIST_LONG=1"
)
def test_unique_extension(m_lattice, translated, dual_lattice_m, root, points):
    """tester for the full enumeration of the dual lattice"""

    workers = int(os.environ.get("TWODIST_WORKERS", "1"))
    certificate = certify_unique_extension(
        m_lattice, translated, root, points.u, workers=workers, dual=dual_lattice_m
    )
    section = certificate["maximality"]
    survivor = expected_survivor(dual_lattice_m, translated)
    assert section["pairs"] == 8_344_585, "Number of pairs is wrong."
    assert section["signed_vectors"] == 16_689_170, "Signed count is twice the pairs."
    assert section["smallest_norm"] == "5/2", "Nothing below the minimum."
    assert section["survivors_adm4"] == [], "No norm 4 extension."
    assert section["survivors_adm6"] == [list(survivor.coords)], "Only r/2 - u survives."
    assert section["spot_checked"] > 0, "Spot check did not run."
