"""Semigroup enumeration, lattice invariants and the counting limit."""

from fractions import Fraction

import pytest

from monolim import (
    PowerSpec,
    SemigroupPredicate,
    ValuationSpec,
    build_family,
    enumerate_levels,
    lattice_invariants,
    okounkov_body,
    parse_ideal,
    semigroup_limit_check,
)
from monolim.errors import MonolimError, SemigroupError
from monolim.semigroup import _row_lattice_basis, _saturation_index, body_volume


def _toy(beta, member, label=""):
    return SemigroupPredicate(1, beta, member, label)


def test_enumerate_toy_counts():
    L = enumerate_levels(_toy(2, lambda a, i: a[0] <= 2 * i), 20)
    assert all(L.counts[i] == 2 * i + 1 for i in range(1, 21))
    assert not L.truncated


def test_enumerate_even_levels_only():
    L = enumerate_levels(_toy(1, lambda a, i: i % 2 == 0 and a[0] <= i), 20)
    assert all(L.counts[i] == 0 for i in range(1, 20, 2))
    assert lattice_invariants(L).m == 2


def test_additivity_violation_aborts():
    # levels {1, 2} with an ad-hoc hole at level 2 is not a semigroup
    bad = _toy(3, lambda a, i: i == 1 or (i >= 2 and a[0] == 3))
    with pytest.raises(SemigroupError):
        enumerate_levels(bad, 12)


def test_invariants_toy():
    L = enumerate_levels(_toy(2, lambda a, i: a[0] <= 2 * i), 30)
    inv = lattice_invariants(L)
    assert (inv.m, inv.ind, inv.q) == (1, 1, 1)


def test_invariants_sublattice():
    L = enumerate_levels(_toy(2, lambda a, i: a[0] % 2 == 0 and a[0] <= 2 * i), 30)
    inv = lattice_invariants(L)
    assert (inv.m, inv.ind, inv.q) == (1, 2, 1)


def test_invariants_index_three():
    L = enumerate_levels(_toy(3, lambda a, i: a[0] % 3 == 0 and a[0] <= 3 * i), 30)
    inv = lattice_invariants(L)
    assert (inv.m, inv.ind, inv.q) == (1, 3, 1)


def test_okounkov_body_interval():
    L = enumerate_levels(_toy(2, lambda a, i: a[0] <= 2 * i), 12)
    assert okounkov_body(L) == [(0,), (2,)]
    assert body_volume(okounkov_body(L), 1) == 2


def test_okounkov_body_simplex():
    pred = SemigroupPredicate(2, 1, lambda a, i: a[0] + a[1] <= i)
    L = enumerate_levels(pred, 12)
    body = okounkov_body(L)
    assert body_volume(body, 2) == Fraction(1, 2)


def test_limit_check_toy():
    L = enumerate_levels(_toy(2, lambda a, i: a[0] <= 2 * i), 200)
    report = semigroup_limit_check(L)
    assert report.expected == 2
    assert report.rel_gap < 0.03


def test_limit_check_sublattice():
    L = enumerate_levels(_toy(2, lambda a, i: a[0] % 2 == 0 and a[0] <= 2 * i), 200)
    report = semigroup_limit_check(L)
    assert report.invariants.ind == 2
    assert report.expected == 1
    assert report.rel_gap < 0.03


def test_family_predicate_beta(R2):
    fam = build_family(PowerSpec(parse_ideal(R2, "x, y")))
    pred = SemigroupPredicate.from_family(fam)
    assert pred.beta == 2
    assert pred.member((1, 0), 1) and not pred.member((0, 0), 1)
    assert not pred.member((5, 0), 2)


def test_family_predicate_supplied_constant_checked(R2):
    fam = build_family(PowerSpec(parse_ideal(R2, "x^2, y^2, x*y")))
    SemigroupPredicate.from_family(fam, c=2)
    with pytest.raises(SemigroupError):
        SemigroupPredicate.from_family(fam, c=1)


def test_family_counts_match_generic_scan(R2):
    fam = build_family(PowerSpec(parse_ideal(R2, "x, y")))
    pred = SemigroupPredicate.from_family(fam)
    generic = SemigroupPredicate(pred.point_dim, pred.beta, pred.member)
    L_fast = enumerate_levels(pred, 12)
    L_slow = enumerate_levels(generic, 12)
    assert L_fast.counts == L_slow.counts
    for i in range(1, 13):
        assert sorted(L_fast.levels[i]) == sorted(L_slow.levels[i])


def test_family_limit_matches_body(R2):
    fam = build_family(PowerSpec(parse_ideal(R2, "x, y")))
    pred = SemigroupPredicate.from_family(fam)
    L = enumerate_levels(pred, 150)
    report = semigroup_limit_check(L)
    assert report.volume == Fraction(3, 2)
    assert report.invariants.q == 2
    assert report.rel_gap < 0.03


def test_body_grows_with_levels(R2):
    from monolim.semigroup import convex_hull_2d
    fam = build_family(ValuationSpec.make(R2, [((2, 1), 2)]))
    pred = SemigroupPredicate.from_family(fam)
    small = okounkov_body(enumerate_levels(pred, 4))
    large = okounkov_body(enumerate_levels(pred, 12))
    # extending the level range can only grow the hull
    assert convex_hull_2d(small + large) == convex_hull_2d(large)
    assert body_volume(large, 2) >= body_volume(small, 2)
    # powers of a fixed ideal stabilize immediately
    pw = build_family(PowerSpec(parse_ideal(R2, "x, y")))
    pred = SemigroupPredicate.from_family(pw)
    assert okounkov_body(enumerate_levels(pred, 6)) == okounkov_body(
        enumerate_levels(pred, 18))


def test_lattice_basis_helpers():
    basis = _row_lattice_basis([[2, 4], [0, 6], [2, 10]])
    assert len(basis) == 2
    assert _saturation_index([[2, 0], [0, 3]]) == 6
    assert _saturation_index([[1, 0], [0, 1]]) == 1
    assert _saturation_index([[2, 4]]) == 2


def test_degenerate_semigroup_raises():
    L = enumerate_levels(_toy(1, lambda a, i: a[0] == 0 and i == 1), 3)
    with pytest.raises(MonolimError):
        lattice_invariants(L)


def test_family_counts_complement_colength(R2):
    # inside the beta-simplex, non-members of I_i are exactly the standard
    # monomials, so simplex count - level count = colength at every level
    from math import comb
    for text in ("x, y", "x^2, x*y, y^2", "x^3, x*y, y^2"):
        fam = build_family(PowerSpec(parse_ideal(R2, text)))
        pred = SemigroupPredicate.from_family(fam)
        L = enumerate_levels(pred, 20)
        for i in range(1, 21):
            simplex = comb(pred.beta * i + 2, 2)
            assert simplex - L.counts[i] == fam.length(i)


def test_count_gap_shrinks_as_levels_double():
    member = lambda a, i: a[0] <= 2 * i
    gap_small = semigroup_limit_check(enumerate_levels(_toy(2, member), 50)).rel_gap
    gap_large = semigroup_limit_check(enumerate_levels(_toy(2, member), 200)).rel_gap
    assert gap_large < gap_small
