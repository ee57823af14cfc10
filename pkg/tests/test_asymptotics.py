"""Length sequences, limits, difference profiles and the inequality checks."""

import random
from fractions import Fraction

import pytest

from conftest import random_primary_ideal
from monolim import (
    AmbientRing,
    LengthSequence,
    MaxPowerSpec,
    MonomialIdeal,
    MonomialModule,
    PowerSpec,
    ValuationSpec,
    build_family,
    difference_profile,
    epsilon_ideal,
    epsilon_module,
    estimate_limit,
    exact_multiplicity,
    filtration_difference_bound,
    length_sequence,
    minkowski_family_check,
    monomial_quotient_bound,
    multiplicity,
    parse_ideal,
    symbolic_multiplicity,
    teissier_check,
    volume_equals_multiplicity,
)
from monolim.errors import EstimateError, InclusionError, NotPrimaryError


def test_length_sequence_power_of_maximal(R2):
    fam = build_family(PowerSpec(parse_ideal(R2, "x, y")))
    seq = length_sequence(fam, 4)
    assert seq.entries == ((1, 1), (2, 3), (3, 6), (4, 10))


def test_length_sequence_example(R2):
    fam = build_family(PowerSpec(parse_ideal(R2, "x^3, x*y, y^2")))
    seq = length_sequence(fam, 2)
    assert seq.entries == ((1, 4), (2, 13))


def test_length_sequence_log_closed_form(R2):
    fam = build_family(MaxPowerSpec(R2, "log"))
    seq = length_sequence(fam, [8])
    assert seq.value_at(8) == 66


def test_length_sequence_nonprimary_raises(R2):
    fam = build_family(PowerSpec(parse_ideal(R2, "x^2, x*y")))
    with pytest.raises(NotPrimaryError):
        length_sequence(fam, 3)
    seq = length_sequence(fam, 6, saturation_mode=True)
    assert seq.entries == tuple((n, n * (n + 1) // 2) for n in range(1, 7))


def test_length_sequence_threads_deterministic(R2):
    fam = build_family(PowerSpec(parse_ideal(R2, "x^2, y^3")))
    assert length_sequence(fam, 12, threads=4) == length_sequence(fam, 12)


def test_estimate_limit_triangle():
    seq = LengthSequence(tuple((n, n * (n + 1) // 2) for n in range(1, 33)), 2)
    est = estimate_limit(seq)
    assert est.point_estimate == Fraction(1, 2)
    assert est.verdict == "CONVERGED"
    assert est.tail_min <= est.point_estimate <= est.tail_max


def test_estimate_limit_constant_degree_one():
    seq = LengthSequence(tuple((n, 5) for n in range(1, 21)), 1)
    est = estimate_limit(seq)
    assert est.point_estimate == 0
    assert est.verdict == "CONVERGED"


def test_estimate_limit_needs_samples():
    with pytest.raises(EstimateError):
        estimate_limit(LengthSequence(((1, 1), (2, 2)), 1))


def test_difference_profile_power(R2):
    fam = build_family(PowerSpec(parse_ideal(R2, "x, y")))
    rows = difference_profile(length_sequence(fam, 10))
    assert [r.increase for r in rows] == [Fraction(n + 1, n) for n in range(1, 10)]


def test_difference_profile_sigma_jump(R2):
    fam = build_family(MaxPowerSpec(R2, "sigma"))
    seq = length_sequence(fam, [15, 16])
    row = difference_profile(seq)[0]
    assert row.decrease == Fraction(22, 5)


def test_difference_profile_log_jumps(R2):
    fam = build_family(MaxPowerSpec(R2, "log"))
    rows = difference_profile(length_sequence(fam, 130))
    by_n = {r.n: r.increase for r in rows}
    assert abs(by_n[127] - 2) < Fraction(2, 10)
    assert abs(by_n[100] - 1) < Fraction(1, 10)


def test_multiplicity_examples(R2):
    assert exact_multiplicity(parse_ideal(R2, "x, y")) == 1
    assert exact_multiplicity(parse_ideal(R2, "x^2, y^3")) == 6
    report = multiplicity(parse_ideal(R2, "x^3, x*y, y^2"), 64)
    assert report.e_exact == 5
    gap = abs(report.e_numeric.point_estimate - 5) / 5
    assert gap < Fraction(5, 100)
    assert report.e_numeric.tail_min <= report.e_exact <= report.e_numeric.tail_max


def test_multiplicity_requires_primary(R2):
    with pytest.raises(NotPrimaryError):
        multiplicity(parse_ideal(R2, "x^2, x*y"), 16)


def test_multiplicity_high_dimension_numeric_only():
    R4 = AmbientRing.default(4)
    diag = MonomialIdeal.from_gens(
        R4, [tuple(2 if j == i else 0 for j in range(4)) for i in range(4)])
    # the exact covolume path stops at dim 3; the sequence estimate converges,
    # if slowly, at this window
    report = multiplicity(diag, 16)
    assert report.e_exact is None
    assert abs(report.e_numeric.point_estimate - 16) / 16 < Fraction(10, 100)


def test_volume_equals_multiplicity_stationary(R2):
    fam = build_family(PowerSpec(parse_ideal(R2, "x^2, y^3")))
    report = volume_equals_multiplicity(fam, 64)
    assert report.multiplicity_side == 6
    assert report.rel_gap < 0.02


def test_teissier_examples(R2):
    m = parse_ideal(R2, "x, y")
    report = teissier_check(m, m)
    assert (report.e_left, report.e_right, report.e_product) == (1, 1, 4)
    assert report.holds and report.equality
    report = teissier_check(parse_ideal(R2, "x, y^2"), parse_ideal(R2, "x^2, y"))
    assert (report.e_left, report.e_right, report.e_product) == (2, 2, 6)
    assert report.holds and not report.equality
    report = teissier_check(parse_ideal(R2, "x^2, y^3"), m)
    assert report.holds


def test_minkowski_family_equality_case(R2):
    fam = build_family(PowerSpec(parse_ideal(R2, "x, y")))
    report = minkowski_family_check(fam, fam, 24)
    assert (report.limit_left, report.limit_right) == (Fraction(1, 2), Fraction(1, 2))
    assert report.limit_product == 2
    assert report.holds and report.equality


def test_epsilon_ideal_examples(R2):
    report = epsilon_ideal(parse_ideal(R2, "x^2, x*y"), 60)
    assert report.epsilon == 1
    assert not report.primary_flag
    assert epsilon_ideal(parse_ideal(R2, "x*y"), 12).epsilon == 0
    assert epsilon_ideal(parse_ideal(R2, "x"), 12).epsilon == 0


def test_epsilon_ideal_primary_flag(R2):
    report = epsilon_ideal(parse_ideal(R2, "x, y"), 16)
    assert report.primary_flag
    assert report.epsilon == 1


def test_epsilon_module_example(R2):
    E = MonomialModule.from_components(
        R2, [parse_ideal(R2, "x^2, x*y"), MonomialIdeal.unit(R2)])
    report = epsilon_module(E, 48)
    assert report.degree == 3 and report.rank == 2
    assert abs(report.epsilon - 1) < Fraction(5, 100)
    full = MonomialModule.from_components(R2, [MonomialIdeal.unit(R2)] * 2)
    assert epsilon_module(full, 12).epsilon == 0


def test_epsilon_module_ideal_specialization(R2):
    E = MonomialModule.from_components(R2, [parse_ideal(R2, "x, y")])
    report = epsilon_module(E, 24)
    assert report.degree == 2
    assert report.epsilon == 1


def test_symbolic_multiplicity_s1(R2):
    report = symbolic_multiplicity(parse_ideal(R2, "x^2, x*y"),
                                   parse_ideal(R2, "x"), 40)
    assert report.s == 1
    assert abs(report.estimate.point_estimate - 1) < Fraction(5, 100)


def test_symbolic_multiplicity_s0(R2):
    report = symbolic_multiplicity(parse_ideal(R2, "x^2, x*y"),
                                   parse_ideal(R2, "x, y"), 24)
    assert report.s == 0
    assert abs(report.estimate.point_estimate - Fraction(1, 2)) < Fraction(3, 100)


def test_symbolic_zero_module(R2):
    report = symbolic_multiplicity(parse_ideal(R2, "x"), parse_ideal(R2, "y"), 10)
    assert report.zero_module


def test_quotient_bound_examples(R2):
    report = monomial_quotient_bound(MonomialIdeal.maximal_power(R2, 2), 1, 2)
    assert (report.value, report.bound, report.holds) == (3, 3, True)
    report = monomial_quotient_bound(parse_ideal(R2, "x^2, y"), 2, 2)
    assert report.value <= 8 and report.holds
    report = monomial_quotient_bound(parse_ideal(R2, "x^2, y"), 0, 2)
    assert (report.value, report.bound) == (0, 0) and report.holds


def test_quotient_bound_inclusion_error(R2):
    with pytest.raises(InclusionError):
        monomial_quotient_bound(parse_ideal(R2, "x^3, y^3"), 1, 2)


def test_quotient_bound_random(R2, R3):
    rng = random.Random(1123)
    for _ in range(40):
        ring = R2 if rng.random() < 0.5 else R3
        ideal = random_primary_ideal(rng, ring, max_exp=4, extra_gens=2)
        from monolim import containment_order
        s = containment_order(ideal)
        r = rng.randint(0, 3)
        assert monomial_quotient_bound(ideal, r, s).holds


def test_filtration_bound_power(R2):
    fam = build_family(PowerSpec(parse_ideal(R2, "x, y")))
    report = filtration_difference_bound(fam, 50)
    assert report.c == 1 and report.holds


def test_filtration_bound_log(R2):
    fam = build_family(MaxPowerSpec(R2, "log"))
    report = filtration_difference_bound(fam, 200)
    assert report.c == 2 and report.holds


def test_filtration_bound_valuation(R2):
    fam = build_family(ValuationSpec.make(R2, [((2, 1), 2)]))
    report = filtration_difference_bound(fam, 100)
    assert report.holds


def test_filtration_bound_rejects_sigma(R2):
    from monolim.errors import NotFiltrationError
    fam = build_family(MaxPowerSpec(R2, "sigma"))
    with pytest.raises(NotFiltrationError):
        filtration_difference_bound(fam, 20)


def test_profile_respects_filtration_bound(R2):
    # normalized differences of any verified filtration stay under c^d (n+1)^(d-1) / n^(d-1)
    for spec in (PowerSpec(parse_ideal(R2, "x^2, x*y^2, y^3")),
                 MaxPowerSpec(R2, "log"),
                 ValuationSpec.make(R2, [((1, 2), 2), ((2, 1), 2)])):
        fam = build_family(spec)
        report = filtration_difference_bound(fam, 60)
        rows = difference_profile(length_sequence(fam, 61))
        c = report.c
        d = fam.ring.d
        for row in rows:
            assert row.increase <= Fraction(c ** d * (row.n + 1) ** (d - 1), row.n ** (d - 1))


def test_estimate_limit_diverging_verdict():
    seq = LengthSequence(tuple((n, n ** 3) for n in range(1, 33)), 2)
    assert estimate_limit(seq).verdict == "DIVERGING"


def test_sigma_family_slow_convergence_diagnostics(R2):
    fam = build_family(MaxPowerSpec(R2, "sigma"))
    est = estimate_limit(length_sequence(fam, 64))
    assert est.verdict in ("CONVERGED", "OSCILLATING", "INCONCLUSIVE")
    # at this window the sequence still tracks the multiplier 5/4
    assert abs(est.point_estimate - Fraction(25, 32)) < Fraction(5, 100)
    report = volume_equals_multiplicity(fam, 64)
    assert report.rel_gap < 0.05


def test_epsilon_module_zero_component(R2):
    E = MonomialModule.from_components(
        R2, [parse_ideal(R2, "x^2, x*y"), MonomialIdeal.zero(R2)])
    assert E.rank == 1
    report = epsilon_module(E, 40)
    assert report.degree == 2
    assert abs(report.epsilon - 1) < Fraction(2, 100)


def test_hs_estimate_brackets_exact_for_powers(R2, R3):
    rng = random.Random(2718)
    for _ in range(6):
        ring = R2 if rng.random() < 0.7 else R3
        ideal = random_primary_ideal(rng, ring, max_exp=4, extra_gens=1)
        report = multiplicity(ideal, 64 if ring is R2 else 24)
        gap = abs(report.e_numeric.point_estimate - report.e_exact) / report.e_exact
        assert gap < Fraction(5, 100)
