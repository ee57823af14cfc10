"""Graded subsemigroup enumeration and the normalized counting limit.

A semigroup lives in N^p x N (points with a level); members at level i stay
inside the 1-norm box ||a||_1 <= beta * i.  Enumeration records exact level
counts, retains point lists up to a budget, and the counting limit
lim #S_{m k} / k^q is compared against vol_q(body) / ind computed from the
lattice invariants of the generated group.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable

from .convex import _shoelace
from .errors import GeometryError, MonolimError, SemigroupError
from .families import GradedFamily
from .lattice import _column_profile, containment_order


@dataclass(frozen=True)
class SemigroupPredicate:
    """Membership oracle for a graded subsemigroup of N^p x N.

    ``member(point, level)`` must be closed under addition (spot-checked at
    enumeration time); ``beta`` bounds members at level i to the simplex
    ||point||_1 <= beta * i.  Optional fast hooks compute whole levels.
    """

    point_dim: int
    beta: int
    member: Callable
    label: str = ""
    count_hook: Callable | None = field(default=None, compare=False)
    points_hook: Callable | None = field(default=None, compare=False)

    @staticmethod
    def from_family(F: GradedFamily, beta: int | None = None,
                    c: int | None = None) -> "SemigroupPredicate":
        """Semigroup of (a, i) with x^a in I_i, inside the beta-simplex.

        beta defaults to d * c with c the least integer for which m^c lies
        inside I_1 (computed, or supplied and verified on sampled members).
        """
        d = F.ring.d
        if c is None:
            c = containment_order(F.member_ideal(1))
        else:
            for n in (1, 2, 3):
                from .lattice import MonomialIdeal
                if not MonomialIdeal.maximal_power(F.ring, c * n).issubset(
                        F.member_ideal(n)):
                    raise SemigroupError(
                        f"supplied constant fails: m^{c * n} is not inside member {n}")
        if beta is None:
            beta = d * c

        def member(a, i):
            if sum(a) > beta * i:
                return False
            return F.member_ideal(i).contains(a)

        count_hook = points_hook = None
        if d == 2:
            def count_hook(i):
                cap = beta * i
                profile = _column_profile(F.member_ideal(i).gens, cap + 1)
                total = 0
                for x, y in enumerate(profile):
                    if y is None:
                        continue
                    total += max(0, cap - x - y + 1)
                return total

            def points_hook(i):
                cap = beta * i
                profile = _column_profile(F.member_ideal(i).gens, cap + 1)
                pts = []
                for x, y in enumerate(profile):
                    if y is None:
                        continue
                    pts.extend((x, yy) for yy in range(y, cap - x + 1))
                return pts

        return SemigroupPredicate(d, beta, member, f"family({F.label()})",
                                  count_hook, points_hook)


def _simplex_points(p: int, cap: int):
    """Lattice points of the 1-norm simplex ||a||_1 <= cap in N^p."""
    if p == 1:
        for x in range(cap + 1):
            yield (x,)
        return
    for head in range(cap + 1):
        for rest in _simplex_points(p - 1, cap - head):
            yield (head,) + rest


@dataclass
class SemigroupLevels:
    """Enumerated levels: exact counts everywhere, points where retained."""

    point_dim: int
    beta: int
    max_level: int
    counts: dict[int, int]
    levels: dict[int, list[tuple[int, ...]]]
    truncated: bool
    label: str = ""


def enumerate_levels(P: SemigroupPredicate, N: int,
                     retain_budget: int = 200_000,
                     spot_checks: int = 200,
                     seed: int = 2024) -> SemigroupLevels:
    """Enumerate all member points per level i <= N.

    Counts are exact for every level; point lists are kept until the running
    total exceeds ``retain_budget`` (the result is then flagged truncated).
    Additivity of the predicate is spot-checked on random retained pairs and
    violations abort.
    """
    counts: dict[int, int] = {}
    levels: dict[int, list] = {}
    retained_total = 0
    truncated = False
    for i in range(1, N + 1):
        if P.count_hook is not None:
            counts[i] = P.count_hook(i)
            want_points = not truncated and retained_total + counts[i] <= retain_budget
            if want_points:
                pts = P.points_hook(i)
                levels[i] = pts
                retained_total += len(pts)
            else:
                truncated = True
        else:
            pts = [a for a in _simplex_points(P.point_dim, P.beta * i)
                   if P.member(a, i)]
            counts[i] = len(pts)
            if not truncated and retained_total + len(pts) <= retain_budget:
                levels[i] = pts
                retained_total += len(pts)
            else:
                truncated = True
    result = SemigroupLevels(P.point_dim, P.beta, N, counts, levels,
                             truncated, P.label)
    _spot_check_additivity(P, result, spot_checks, seed)
    return result


def _spot_check_additivity(P: SemigroupPredicate, L: SemigroupLevels,
                           checks: int, seed: int) -> None:
    pool = [(a, i) for i, pts in sorted(L.levels.items()) for a in pts]
    if len(pool) < 2:
        return
    rng = random.Random(seed)
    for _ in range(checks):
        (a, i), (b, j) = rng.choice(pool), rng.choice(pool)
        if i + j > L.max_level:
            continue
        s = tuple(x + y for x, y in zip(a, b))
        if not P.member(s, i + j):
            raise SemigroupError(
                f"additivity fails: {a}@{i} + {b}@{j} -> {s}@{i + j} is not a member")


# -- lattice invariants -------------------------------------------------------


def _row_lattice_basis(rows: list[list[int]]) -> list[list[int]]:
    """Echelon basis of the integer row lattice (pivot columns increasing)."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    basis: list[list[int]] = []
    for col in range(ncols):
        nz = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not nz:
            work = rest
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            reduced = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r2 = [a - q * b for a, b in zip(r, p)]
                if r2[col] != 0:
                    reduced.append(r2)
                elif any(r2):
                    rest.append(r2)
            nz = reduced
        pivot = nz[0] if nz[0][col] > 0 else [-a for a in nz[0]]
        basis.append(pivot)
        work = rest
    return basis


def _int_det(mat: list[list[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        total += (-1) ** j * mat[0][j] * _int_det(minor)
    return total


def _saturation_index(basis: list[list[int]]) -> int:
    """Index of the row lattice inside all integer points of its span."""
    r = len(basis)
    if r == 0:
        return 1
    ncols = len(basis[0])
    g = 0
    for cols in itertools.combinations(range(ncols), r):
        sub = [[row[j] for j in cols] for row in basis]
        g = gcd(g, _int_det(sub))
    if g == 0:
        raise MonolimError("degenerate lattice basis")
    return abs(g)


@dataclass(frozen=True)
class LatticeInvariants:
    """Level-projection index m, boundary-lattice index ind, boundary dim q."""

    m: int
    ind: int
    q: int
    truncated: bool


def lattice_invariants(L: SemigroupLevels, vector_cap: int = 2000) -> LatticeInvariants:
    """Invariants of the group generated by the enumerated members.

    m divides every nonempty level; ind and q come from an echelon basis of
    the member lattice (level coordinate first), using retained points only
    (flagged via ``truncated`` when retention was cut off).
    """
    nonempty = [i for i, c in sorted(L.counts.items()) if c > 0]
    if len(nonempty) < 2:
        raise MonolimError("need at least two nonempty levels")
    m = 0
    for i in nonempty:
        m = gcd(m, i)
    vectors = []
    for i, pts in sorted(L.levels.items()):
        for a in pts:
            vectors.append([i, *a])
            if len(vectors) >= vector_cap:
                break
        if len(vectors) >= vector_cap:
            break
    basis = _row_lattice_basis(vectors)
    if not basis or basis[0][0] == 0:
        raise MonolimError("degenerate semigroup data")
    boundary = [row[1:] for row in basis[1:]]
    q = len(boundary)
    ind = _saturation_index(boundary)
    return LatticeInvariants(m, ind, q, L.truncated)


# -- the body and the counting limit -----------------------------------------


def convex_hull_2d(points):
    """Counterclockwise convex hull of exact rational points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                (x0, y0), (x1, y1) = out[-2], out[-1]
                if (x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0) <= 0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    return lower[:-1] + upper[:-1]


def okounkov_body(L: SemigroupLevels):
    """Convex hull of the normalized points {point / level} (point dim <= 2).

    Each level is hulled on raw integer coordinates first (scaling commutes
    with hulls), so only the extreme points are normalized.
    """
    if L.max_level < 3:
        raise MonolimError("enumerate at least 3 levels first")
    pts = []
    for i, members in sorted(L.levels.items()):
        if i == 0 or not members:
            continue
        if L.point_dim == 2:
            members = convex_hull_2d(members)
        for a in members:
            pts.append(tuple(Fraction(c, i) for c in a))
    if not pts:
        raise MonolimError("empty semigroup")
    if L.point_dim == 1:
        xs = [p[0] for p in pts]
        lo, hi = min(xs), max(xs)
        return [(lo,)] if lo == hi else [(lo,), (hi,)]
    if L.point_dim == 2:
        return convex_hull_2d(pts)
    raise GeometryError("exact bodies are limited to point dimension <= 2")


def body_volume(vertices, q: int) -> Fraction:
    """Integral q-volume of the body w.r.t. the ambient lattice measure."""
    if q == 0:
        return Fraction(1)
    p = len(vertices[0])
    if q == 1:
        if p == 1:
            xs = [v[0] for v in vertices]
            return max(xs) - min(xs)
        lo, hi = min(vertices), max(vertices)
        diff = [b - a for a, b in zip(lo, hi)]
        nz = [c for c in diff if c != 0]
        if not nz:
            return Fraction(0)
        denom_lcm = 1
        for c in nz:
            denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in diff]
        g = 0
        for c in ints:
            g = gcd(g, c)
        return Fraction(g, denom_lcm)
    if q == 2 and p == 2:
        return abs(_shoelace(list(vertices)))
    raise GeometryError("volume unavailable for this dimension")


@dataclass(frozen=True)
class SemigroupLimitReport:
    """Tail of #S_{m k}/k^q against the exact target vol_q(body)/ind."""

    invariants: LatticeInvariants
    volume: Fraction
    expected: Fraction
    tail_ratios: tuple[tuple[int, Fraction], ...]
    rel_gap: float
    bounded_max: float


def semigroup_limit_check(L: SemigroupLevels) -> SemigroupLimitReport:
    """Compare the normalized level counts against vol/ind.

    Also reports the boundedness diagnostic max_k #S_{mk}/k^q (a bounded
    value is the finite-data signal that the counting exponent q suffices).
    """
    inv = lattice_invariants(L)
    body = okounkov_body(L)
    vol = body_volume(body, inv.q)
    expected = vol / inv.ind
    ratios = []
    for k in range(1, L.max_level // inv.m + 1):
        i = inv.m * k
        if i in L.counts:
            ratios.append((k, Fraction(L.counts[i], k ** inv.q)))
    if not ratios:
        raise MonolimError("no counted levels at multiples of m")
    tail = tuple(ratios[-max(1, len(ratios) // 4):])
    tail_mean = sum(r for _, r in tail) / len(tail)
    gap = float(abs(tail_mean - expected) / expected) if expected else float(
        abs(tail_mean))
    bounded = max(float(r) for _, r in ratios)
    return SemigroupLimitReport(inv, vol, expected, tail, gap, bounded)
