"""Length and multiplicity sequences, limit estimation, and inequality checks.

Sequence values are exact integers; normalized tails and fitted limits are
exact rationals.  Root comparisons in the Minkowski-type inequalities are
decided by integer bracketing, never floating point.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .convex import covol, hull_region
from .errors import (
    EstimateError,
    GeometryError,
    InclusionError,
    MonolimError,
    NotFiltrationError,
    NotPrimaryError,
)
from .families import GradedFamily, PowerSpec, ProductSpec, build_family, verify_filtration
from .lattice import (
    INFINITE,
    MonomialIdeal,
    MonomialModule,
    containment_order,
    length_mod_power,
    rel_length,
)
from .roots import root_sum_at_least


@dataclass(frozen=True)
class LengthSequence:
    """Sampled values (n, v_n) with the normalization exponent ``degree``."""

    entries: tuple[tuple[int, int], ...]
    degree: int

    def __post_init__(self):
        ns = [n for n, _ in self.entries]
        if ns != sorted(set(ns)):
            raise MonolimError("sample indices must be strictly increasing")

    def normalized(self) -> list[tuple[int, Fraction]]:
        return [(n, Fraction(v, n ** self.degree)) for n, v in self.entries if n > 0]

    def value_at(self, n: int) -> int:
        for m, v in self.entries:
            if m == n:
                return v
        raise KeyError(n)


@dataclass(frozen=True)
class LimitEstimate:
    """Fitted limit of v_n / n^degree with the tail window that produced it."""

    point_estimate: Fraction
    tail_min: Fraction
    tail_max: Fraction
    verdict: str
    window: tuple[int, int]


def estimate_limit(S: LengthSequence, tol=Fraction(1, 100)) -> LimitEstimate:
    """Estimate lim v_n / n^d by fitting c_d n^d + c_(d-1) n^(d-1) to the tail.

    The tail is the last quarter of the samples.  CONVERGED means the
    normalized tail is flat to within ``tol`` (relative range) or the
    two-term fit reproduces the tail essentially exactly; OSCILLATING /
    DIVERGING / INCONCLUSIVE classify the remaining shapes heuristically.
    """
    if len(S.entries) < 8:
        raise EstimateError("need at least 8 samples")
    tol = Fraction(tol) if not isinstance(tol, Fraction) else tol
    d = S.degree
    tail = S.entries[-max(2, len(S.entries) // 4):]
    s0 = sum(n ** (2 * d) for n, _ in tail)
    s1 = sum(n ** (2 * d - 1) for n, _ in tail)
    s2 = sum(n ** (2 * d - 2) for n, _ in tail)
    r0 = sum(v * n ** d for n, v in tail)
    r1 = sum(v * n ** (d - 1) for n, v in tail)
    det = s0 * s2 - s1 * s1
    if det != 0:
        point = Fraction(r0 * s2 - r1 * s1, det)
        lead = point
        sub = Fraction(r1 * s0 - r0 * s1, det)
    else:
        n, v = tail[-1]
        point = Fraction(v, n ** d)
        lead, sub = point, Fraction(0)
    qs = [Fraction(v, n ** d) for n, v in tail]
    residual = sum((Fraction(v) - lead * n ** d - sub * n ** (d - 1)) ** 2
                   for n, v in tail)
    scale_sq = sum(Fraction(v) ** 2 for _, v in tail)
    qmin, qmax = min(qs), max(qs)
    scale = max(abs(point), abs(qmax), abs(qmin))
    rel_range = Fraction(0) if scale == 0 else (qmax - qmin) / scale
    fit_exactish = residual <= tol * tol * scale_sq / 10 ** 6
    if rel_range < tol or fit_exactish:
        verdict = "CONVERGED"
    else:
        diffs = [b - a for a, b in zip(qs, qs[1:])]
        sign_changes = sum(1 for a, b in zip(diffs, diffs[1:])
                           if (a > 0 > b) or (a < 0 < b))
        if sign_changes >= 2:
            verdict = "OSCILLATING"
        elif all(x > 0 for x in diffs) and qs[0] > 0 and qs[-1] > qs[0] * (1 + 4 * tol):
            verdict = "DIVERGING"
        else:
            verdict = "INCONCLUSIVE"
    return LimitEstimate(point, min(qs + [point]), max(qs + [point]),
                         verdict, (tail[0][0], tail[-1][0]))


def length_sequence(F: GradedFamily, ns, saturation_mode: bool = False,
                    threads: int = 1) -> LengthSequence:
    """Exact lengths of R/I_n (or of I_n^sat / I_n in saturation mode).

    ``ns`` is either an upper bound N (samples 1..N) or an iterable of
    indices.  Non-primary members raise unless ``saturation_mode`` is set,
    in which case the saturation-gap length is recorded instead.
    """
    indices = list(range(1, ns + 1)) if isinstance(ns, int) else sorted(set(ns))

    def value(n: int) -> int:
        v = F.length(n)
        if v == INFINITE:
            if not saturation_mode:
                raise NotPrimaryError(
                    f"member {n} of {F.label()} is not primary")
            v = F.saturation_gap(n)
        return v

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(value, indices))
    else:
        values = [value(n) for n in indices]
    return LengthSequence(tuple(zip(indices, values)), F.ring.d)


@dataclass(frozen=True)
class ProfileRow:
    """Normalized first difference at n, reported in both orientations."""

    n: int
    increase: Fraction
    decrease: Fraction


def difference_profile(S: LengthSequence) -> list[ProfileRow]:
    """Rows ((v_{n+1} - v_n)/n^(d-1)) for each adjacent sample pair."""
    rows = []
    for (n0, v0), (n1, v1) in zip(S.entries, S.entries[1:]):
        if n1 != n0 + 1 or (n0 == 0 and S.degree > 1):
            continue
        inc = Fraction(v1 - v0, n0 ** (S.degree - 1))
        rows.append(ProfileRow(n0, inc, -inc))
    if not rows:
        raise MonolimError("no consecutive sample pairs to difference")
    return rows


def exact_multiplicity(I: MonomialIdeal) -> int:
    """d! times the covolume of the hull region (dim <= 3, primary)."""
    d = I.ring.d
    value = covol(hull_region(I)).value * factorial(d)
    if value.denominator != 1:
        raise MonolimError(f"multiplicity came out non-integral: {value}")
    return int(value)


@dataclass(frozen=True)
class MultiplicityReport:
    ideal: MonomialIdeal
    e_exact: int | None
    e_numeric: LimitEstimate
    hs_samples: LengthSequence


def multiplicity(I: MonomialIdeal, N: int = 64) -> MultiplicityReport:
    """Exact covolume multiplicity plus a Hilbert-Samuel sequence estimate."""
    if not I.is_primary:
        raise NotPrimaryError("multiplicity needs a primary ideal")
    if N < 8:
        raise EstimateError("need N >= 8 for the sequence estimate")
    d = I.ring.d
    e_exact = exact_multiplicity(I) if d <= 3 else None
    fam = build_family(PowerSpec(I))
    ns = sorted({max(1, (N * k) // 8) for k in range(1, 9)})
    raw = length_sequence(fam, ns)
    scaled = LengthSequence(tuple((n, v * factorial(d)) for n, v in raw.entries), d)
    return MultiplicityReport(I, e_exact, estimate_limit(scaled), raw)


@dataclass(frozen=True)
class VolumeMultiplicityReport:
    """Both sides of the volume = multiplicity identity with their gap."""

    length_side: Fraction
    multiplicity_side: Fraction
    rel_gap: float
    length_estimate: LimitEstimate
    multiplicity_estimate: LimitEstimate


def volume_equals_multiplicity(F: GradedFamily, N: int) -> VolumeMultiplicityReport:
    """Compare d! lim l(R/I_n)/n^d against lim e(I_p)/p^d (dim <= 3)."""
    d = F.ring.d
    if d > 3:
        raise GeometryError("exact multiplicities are limited to dimension <= 3")
    left_est = estimate_limit(length_sequence(F, N))
    left = left_est.point_estimate * factorial(d)
    ps = sorted({max(1, (N * k) // 8) for k in range(1, 9)})
    evals = tuple((p, exact_multiplicity(F.member_ideal(p))) for p in ps)
    right_est = estimate_limit(LengthSequence(evals, d))
    right = right_est.point_estimate
    denom = max(abs(left), abs(right))
    gap = 0.0 if denom == 0 else float(abs(left - right) / denom)
    return VolumeMultiplicityReport(left, right, gap, left_est, right_est)


@dataclass(frozen=True)
class IdealMinkowskiReport:
    """e(IJ)^(1/d) <= e(I)^(1/d) + e(J)^(1/d), decided exactly."""

    e_left: int
    e_right: int
    e_product: int
    holds: bool
    equality: bool


def teissier_check(I: MonomialIdeal, J: MonomialIdeal) -> IdealMinkowskiReport:
    if I.ring != J.ring:
        raise MonolimError("ideals live in different rings")
    d = I.ring.d
    eI, eJ, eIJ = exact_multiplicity(I), exact_multiplicity(J), exact_multiplicity(I * J)
    holds, equality = root_sum_at_least(Fraction(eI), Fraction(eJ), Fraction(eIJ), d)
    return IdealMinkowskiReport(eI, eJ, eIJ, holds, equality)


@dataclass(frozen=True)
class FamilyMinkowskiReport:
    """Limit version of the Minkowski inequality for two families."""

    limit_left: Fraction
    limit_right: Fraction
    limit_product: Fraction
    holds: bool
    equality: bool
    slack: float


def minkowski_family_check(F: GradedFamily, G: GradedFamily,
                           N: int) -> FamilyMinkowskiReport:
    d = F.ring.d
    prod = build_family(ProductSpec(F.spec, G.spec))
    a = estimate_limit(length_sequence(F, N)).point_estimate
    b = estimate_limit(length_sequence(G, N)).point_estimate
    c = estimate_limit(length_sequence(prod, N)).point_estimate
    holds, equality = root_sum_at_least(a, b, c, d)
    slack = float(a) ** (1 / d) + float(b) ** (1 / d) - float(c) ** (1 / d)
    return FamilyMinkowskiReport(a, b, c, holds, equality, slack)


@dataclass(frozen=True)
class EpsilonReport:
    """Normalized limit of saturation-gap lengths; epsilon = degree! * limit."""

    estimate: LimitEstimate
    epsilon: Fraction
    samples: LengthSequence
    degree: int
    rank: int
    primary_flag: bool = False


def epsilon_ideal(I: MonomialIdeal, N: int) -> EpsilonReport:
    """Limit of l((I^n)^sat / I^n) / n^d (colength sequence if I is primary)."""
    if I.is_zero:
        raise MonolimError("epsilon multiplicity needs a nonzero ideal")
    d = I.ring.d
    fam = build_family(PowerSpec(I))
    entries = []
    for n in range(1, N + 1):
        member = fam.member_ideal(n)
        gap = rel_length(member.saturation(), member)
        if gap == INFINITE:
            raise MonolimError(f"saturation gap of member {n} is unbounded")
        entries.append((n, gap))
    seq = LengthSequence(tuple(entries), d)
    est = estimate_limit(seq)
    return EpsilonReport(est, est.point_estimate * factorial(d), seq, d, 1,
                         primary_flag=I.is_primary)


def epsilon_module(E: MonomialModule, N: int) -> EpsilonReport:
    """Limit of l(E^k :_{F^k} m^inf / E^k) / k^(d+e-1) for a monomial module."""
    d = E.ring.d
    e = E.rank
    if e == 0:
        raise MonolimError("module has rank zero")
    deg = d + e - 1
    entries = []
    for k, piece in E.pieces(N):
        if k == 0:
            continue
        total = 0
        for comp in piece.values():
            gap = rel_length(comp.saturation(), comp)
            if gap == INFINITE:
                raise MonolimError(f"component of degree {k} has unbounded gap")
            total += gap
        entries.append((k, total))
    seq = LengthSequence(tuple(entries), deg)
    est = estimate_limit(seq)
    return EpsilonReport(est, est.point_estimate * factorial(deg), seq, deg, e)


@dataclass(frozen=True)
class SymbolicReport:
    """Limit of e_m(I_n(J)/I^n) / n^(d-s) with the detected dimension s."""

    s: int
    estimate: LimitEstimate | None
    samples: LengthSequence | None
    zero_module: bool = False


def _module_multiplicity(outer: MonomialIdeal, inner: MonomialIdeal,
                         s: int) -> int:
    """Multiplicity of outer/inner w.r.t. m via stabilized s-th differences."""
    if outer == inner:
        return 0
    if s == 0:
        return rel_length(outer, inner)
    cap = 3 * max(sum(g) for g in outer.gens + inner.gens) + 30
    vals = [length_mod_power(outer, inner, k) for k in range(s + 4)]
    while True:
        diffs = list(vals)
        for _ in range(s):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if len(diffs) >= 3 and diffs[-1] == diffs[-2] == diffs[-3]:
            return diffs[-1]
        if len(vals) > cap:
            raise MonolimError("Hilbert differences did not stabilize")
        vals.append(length_mod_power(outer, inner, len(vals)))


def symbolic_multiplicity(I: MonomialIdeal, J: MonomialIdeal,
                          N: int) -> SymbolicReport:
    """Detect s = dim I_n(J)/I^n and estimate lim e_m(I_n(J)/I^n)/n^(d-s)."""
    if I.ring != J.ring:
        raise MonolimError("ideals live in different rings")
    d = I.ring.d
    fam = build_family(PowerSpec(I))
    samples = [n for n in (2, 3, 4, 5) if n <= N] or [1]
    dims = set()
    for n in samples:
        power = fam.member_ideal(n)
        member = power.saturate(J)
        if member == power:
            dims.add(None)
        else:
            dims.add(power.colon(member).dim_quotient())
    if dims == {None}:
        return SymbolicReport(0, None, None, zero_module=True)
    dims.discard(None)
    if len(dims) != 1:
        raise MonolimError(f"difference dimension unstable across samples: {dims}")
    s = dims.pop()
    if s >= d:
        raise MonolimError("difference module is not lower-dimensional")
    entries = []
    for n in range(1, N + 1):
        power = fam.member_ideal(n)
        entries.append((n, _module_multiplicity(power.saturate(J), power, s)))
    seq = LengthSequence(tuple(entries), d - s)
    return SymbolicReport(s, estimate_limit(seq), seq)


@dataclass(frozen=True)
class BoundReport:
    """An exact inequality check value <= bound."""

    value: int
    bound: int
    holds: bool
    detail: str = ""


def monomial_quotient_bound(I: MonomialIdeal, r: int, s: int) -> BoundReport:
    """Check dim_k(I / m^r I) <= (s+r)^(d-1) * r, given m^s inside I."""
    if r < 0 or s < 0:
        raise MonolimError("r and s must be nonnegative")
    d = I.ring.d
    if containment_order(I) > s:
        raise InclusionError(f"m^{s} is not contained in the ideal")
    value = rel_length(I, MonomialIdeal.maximal_power(I.ring, r) * I)
    bound = (s + r) ** (d - 1) * r
    return BoundReport(value, bound, value <= bound)


@dataclass(frozen=True)
class FiltrationBoundReport:
    """l(I_n/I_{n+1}) <= c^d (n+1)^(d-1) for all n <= N, with computed c."""

    c: int
    checked_upto: int
    holds: bool
    first_violation: int | None
    max_ratio: float


def filtration_difference_bound(F: GradedFamily, N: int) -> FiltrationBoundReport:
    report = verify_filtration(F, N)
    if not report.passed:
        raise NotFiltrationError(f"not a filtration: {report.detail}")
    d = F.ring.d
    c = containment_order(F.member_ideal(1))
    holds = True
    first = None
    max_ratio = 0.0
    for n in range(1, N + 1):
        ln, ln1 = F.length(n), F.length(n + 1)
        if ln == INFINITE or ln1 == INFINITE:
            step = rel_length(F.member_ideal(n), F.member_ideal(n + 1))
        else:
            step = ln1 - ln
        bound = c ** d * (n + 1) ** (d - 1)
        max_ratio = max(max_ratio, step / bound if bound else 0.0)
        if step > bound and holds:
            holds, first = False, n
    return FiltrationBoundReport(c, N, holds, first, max_ratio)
