"""Integer root bracketing and exact d-th-root sum comparisons."""

import random
from fractions import Fraction

import pytest

from monolim.roots import iroot, rational_root_exact, root_sum_at_least, root_sum_compare


def test_iroot_small_values():
    assert iroot(0, 2) == 0
    assert iroot(1, 3) == 1
    assert iroot(8, 3) == 2
    assert iroot(9, 3) == 2
    assert iroot(26, 3) == 2
    assert iroot(27, 3) == 3
    assert iroot(10 ** 12, 2) == 10 ** 6


def test_iroot_random_consistency():
    rng = random.Random(12)
    for _ in range(300):
        n = rng.randint(0, 10 ** 12)
        d = rng.randint(1, 5)
        r = iroot(n, d)
        assert r ** d <= n < (r + 1) ** d


def test_rational_root_exact():
    assert rational_root_exact(Fraction(4, 9), 2) == Fraction(2, 3)
    assert rational_root_exact(Fraction(8, 27), 3) == Fraction(2, 3)
    assert rational_root_exact(Fraction(2), 2) is None
    assert rational_root_exact(Fraction(4, 8), 2) is None


def test_root_sum_compare_strict_cases():
    # sqrt(2) + sqrt(2) vs sqrt(9): 2.828... < 3
    assert root_sum_compare(Fraction(2), Fraction(2), Fraction(9), 2) == -1
    # sqrt(4) + sqrt(4) vs sqrt(9): 4 > 3
    assert root_sum_compare(Fraction(4), Fraction(4), Fraction(9), 2) == 1
    # 6^(1/2) <= 2^(1/2) + 2^(1/2) = 8^(1/2)
    assert root_sum_compare(Fraction(2), Fraction(2), Fraction(6), 2) == 1


def test_root_sum_equality_detection():
    # a=1, b=t^d, c=(1+t)^d is exact equality
    for d in (2, 3):
        for t in (Fraction(1), Fraction(2, 3), Fraction(5, 2)):
            holds, eq = root_sum_at_least(Fraction(1), t ** d, (1 + t) ** d, d)
            assert holds and eq
    holds, eq = root_sum_at_least(Fraction(1, 2), Fraction(1, 2), Fraction(2), 2)
    assert holds and eq


def test_root_sum_zero_cases():
    assert root_sum_compare(Fraction(0), Fraction(0), Fraction(0), 2) == 0
    assert root_sum_compare(Fraction(0), Fraction(0), Fraction(1), 2) == -1
    assert root_sum_compare(Fraction(0), Fraction(9), Fraction(4), 2) == 1
    assert root_sum_compare(Fraction(0), Fraction(4), Fraction(4), 2) == 0


def test_root_sum_tight_separation_refines():
    # values differing only far past the first bracket resolution
    a = Fraction(1)
    b = Fraction(1)
    c = Fraction(4 * 10 ** 12 + 1, 10 ** 12)  # c^(1/2) barely above 2
    assert root_sum_compare(a, b, c, 2) == -1


def test_negative_radicand_rejected():
    with pytest.raises(ValueError):
        root_sum_compare(Fraction(-1), Fraction(1), Fraction(1), 2)
    with pytest.raises(ValueError):
        iroot(-4, 2)
