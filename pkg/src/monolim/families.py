"""Graded families and filtrations of monomial ideals.

A family is a lazily evaluated, memoized map n -> I_n with I_0 = R and the
contract I_m * I_n <= I_{m+n}.  Besides powers of a fixed ideal, the built-in
constructors cover exponent-driven powers of the maximal ideal (including the
two sequences whose normalized length differences diverge or oscillate),
valuation-style weight thresholds, symbolic powers, saturations, products and
explicit tables.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import FamilyRangeError, FamilySpecError
from .lattice import (
    INFINITE,
    AmbientRing,
    MonomialIdeal,
    format_ideal,
    rel_length,
)

# -- exponent sequences ------------------------------------------------------


def sigma_multiplier(m: int) -> Fraction:
    """Dyadic multiplier: starts at 2 and drops by 1/2^n at m = 2^(2^n).

    Stays within [1, 2]; the drops are sparse enough that ceil(m * sigma(m))
    is subadditive while its first differences blow up at the drop points.
    """
    if m < 1:
        raise FamilySpecError("multiplier defined for m >= 1")
    sigma = Fraction(2)
    n = 1
    while 2 ** (2 ** n) <= m:
        sigma -= Fraction(1, 2 ** n)
        n += 1
    return sigma


def sigma_exponent(m: int) -> int:
    """b_m = ceil(m * sigma(m)); the power of m_R used at step m."""
    if m == 0:
        return 0
    return math.ceil(m * sigma_multiplier(m))


def log_offset(i: int) -> int:
    """Integer sequence 0, 1, 1, 1, 2, 2, 2, 2, 3, ...: floor(log2 i) for i >= 2."""
    if i < 0:
        raise FamilySpecError("offset defined for i >= 0")
    if i <= 1:
        return i
    return i.bit_length() - 1


def log_exponent(n: int) -> int:
    """b_n = n + log_offset(n); nondecreasing and subadditive."""
    return n + log_offset(n)


# -- family specs ------------------------------------------------------------


class FamilySpec:
    """Base class: a spec provides ``ring``, ``member(n)`` and a label."""

    def member(self, n: int) -> MonomialIdeal:
        raise NotImplementedError

    def length(self, n: int):
        """Colength of I_n; overridden where a closed form is available."""
        return self.member(n).colength()

    def label(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class PowerSpec(FamilySpec):
    """I_n = I^n for a fixed nonzero ideal I."""

    ideal: MonomialIdeal

    def __post_init__(self):
        if self.ideal.is_zero:
            raise FamilySpecError("power family needs a nonzero ideal")

    @property
    def ring(self):
        return self.ideal.ring

    def member(self, n):
        return self.ideal.power(n)

    def label(self):
        return f"power({format_ideal(self.ideal)})"


@dataclass(frozen=True)
class MaxPowerSpec(FamilySpec):
    """I_n = m^(b_n) driven by an exponent sequence.

    ``kind`` is "sigma", "log", or "table" (explicit exponents b_1, b_2, ...;
    b_0 = 0 implied).
    """

    ring: AmbientRing
    kind: str
    table: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("sigma", "log", "table"):
            raise FamilySpecError(f"unknown exponent sequence {self.kind!r}")
        if self.kind == "table" and any(b < 0 for b in self.table):
            raise FamilySpecError("table exponents must be nonnegative")

    def exponent(self, n: int) -> int:
        if n == 0:
            return 0
        if self.kind == "sigma":
            return sigma_exponent(n)
        if self.kind == "log":
            return log_exponent(n)
        if n > len(self.table):
            raise FamilyRangeError(f"exponent table has no entry for n={n}")
        return self.table[n - 1]

    def member(self, n):
        return MonomialIdeal.maximal_power(self.ring, self.exponent(n))

    def length(self, n):
        b, d = self.exponent(n), self.ring.d
        return comb(b + d - 1, d)

    def label(self):
        if self.kind == "table":
            return "maxpower(table:" + ",".join(map(str, self.table)) + ")"
        return f"maxpower({self.kind})"


@dataclass(frozen=True)
class ValuationSpec(FamilySpec):
    """I_n = monomials a with <weights_j, a> >= threshold_j * n for all j."""

    ring: AmbientRing
    constraints: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    def __post_init__(self):
        if not self.constraints:
            raise FamilySpecError("valuation family needs at least one constraint")
        for weights, threshold in self.constraints:
            if len(weights) != self.ring.d:
                raise FamilySpecError("weight vector has wrong length")
            if any(w < 0 for w in weights) or all(w == 0 for w in weights):
                raise FamilySpecError("weights must be nonnegative and not all zero")
            if threshold < 0:
                raise FamilySpecError("thresholds must be nonnegative")

    @staticmethod
    def make(ring, constraints) -> "ValuationSpec":
        return ValuationSpec(ring, tuple(
            (tuple(Fraction(w) for w in weights), Fraction(t))
            for weights, t in constraints))

    def _column_floor(self, n: int, x: int):
        """Least y with (x, y) a member (d = 2), or None if the column is empty."""
        need = Fraction(0)
        for (w1, w2), t in self.constraints:
            gap = t * n - w1 * x
            if gap > 0:
                if w2 == 0:
                    return None
                need = max(need, gap / w2)
        return math.ceil(need)

    def member(self, n):
        d = self.ring.d
        if n == 0:
            return MonomialIdeal.unit(self.ring)
        if d == 2:
            width = 0
            for (w1, _), t in self.constraints:
                if w1 > 0:
                    width = max(width, math.ceil(t * n / w1))
            gens = []
            prev = None
            for x in range(width + 1):
                y = self._column_floor(n, x)
                if y is None:
                    continue
                if prev is None or y < prev:
                    gens.append((x, y))
                    prev = y
                if y == 0:
                    break
            return MonomialIdeal.from_gens(self.ring, gens)
        bounds = []
        for i in range(d):
            hi = 0
            for weights, t in self.constraints:
                if weights[i] > 0:
                    hi = max(hi, math.ceil(t * n / weights[i]))
            bounds.append(hi)
        gens = []
        for a in itertools.product(*[range(b + 1) for b in bounds]):
            if self._is_member(n, a):
                gens.append(a)
        return MonomialIdeal.from_gens(self.ring, gens)

    def _is_member(self, n: int, a) -> bool:
        return all(sum(w * c for w, c in zip(weights, a)) >= t * n
                   for weights, t in self.constraints)

    def length(self, n):
        if n == 0:
            return 0
        if self.ring.d != 2:
            return self.member(n).colength()
        width = 0
        for (w1, w2), t in self.constraints:
            if t > 0 and n > 0:
                if w1 == 0:
                    return INFINITE
                width = max(width, math.ceil(t * n / w1))
        total = 0
        for x in range(width):
            y = self._column_floor(n, x)
            if y is None:
                return INFINITE
            total += y
        return total

    def label(self):
        parts = []
        for weights, t in self.constraints:
            ws = ",".join(str(w) for w in weights)
            parts.append(f"({ws})>={t}")
        return "valuation(" + "; ".join(parts) + ")"


@dataclass(frozen=True)
class SymbolicSpec(FamilySpec):
    """Generalized symbolic powers I_n = I^n : J^infinity."""

    ideal: MonomialIdeal
    aux: MonomialIdeal

    def __post_init__(self):
        if self.ideal.is_zero or self.aux.is_zero:
            raise FamilySpecError("symbolic family needs nonzero ideals")
        if self.ideal.ring != self.aux.ring:
            raise FamilySpecError("ideals live in different rings")

    @property
    def ring(self):
        return self.ideal.ring

    def member(self, n):
        return self.ideal.power(n).saturate(self.aux)

    def label(self):
        return f"symbolic({format_ideal(self.ideal)}; {format_ideal(self.aux)})"


@dataclass(frozen=True)
class SaturationSpec(FamilySpec):
    """I_n = (I^n)^sat = I^n : m^infinity."""

    ideal: MonomialIdeal

    def __post_init__(self):
        if self.ideal.is_zero:
            raise FamilySpecError("saturation family needs a nonzero ideal")

    @property
    def ring(self):
        return self.ideal.ring

    def member(self, n):
        return self.ideal.power(n).saturation()

    def label(self):
        return f"saturation({format_ideal(self.ideal)})"


@dataclass(frozen=True)
class ProductSpec(FamilySpec):
    """Memberwise product I_n = F_n * G_n of two families."""

    left: FamilySpec
    right: FamilySpec

    def __post_init__(self):
        if self.left.ring != self.right.ring:
            raise FamilySpecError("factors live in different rings")

    @property
    def ring(self):
        return self.left.ring

    def member(self, n):
        return self.left.member(n) * self.right.member(n)

    def label(self):
        return f"product({self.left.label()}; {self.right.label()})"


@dataclass(frozen=True)
class TableSpec(FamilySpec):
    """Explicit list of ideals I_0, I_1, ..., I_K (I_0 must be the unit ideal)."""

    ideals: tuple[MonomialIdeal, ...]

    def __post_init__(self):
        if not self.ideals:
            raise FamilySpecError("table family needs ideals")
        if not self.ideals[0].is_unit:
            raise FamilySpecError("table entry 0 must be the unit ideal")
        if len({i.ring for i in self.ideals}) != 1:
            raise FamilySpecError("table entries live in different rings")

    @property
    def ring(self):
        return self.ideals[0].ring

    def member(self, n):
        if n >= len(self.ideals):
            raise FamilyRangeError(f"table family has no entry for n={n}")
        return self.ideals[n]

    def label(self):
        return "table(" + " | ".join(format_ideal(i) for i in self.ideals) + ")"


# -- graded family wrapper ----------------------------------------------------


@dataclass
class GradedFamily:
    """Lazily evaluated family with a thread-safe memo of canonical members."""

    spec: FamilySpec
    _members: dict = field(default_factory=dict, repr=False)
    _lengths: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def ring(self) -> AmbientRing:
        return self.spec.ring

    def member_ideal(self, n: int) -> MonomialIdeal:
        if n < 0:
            raise FamilySpecError("family index must be nonnegative")
        with self._lock:
            if n in self._members:
                return self._members[n]
        if n == 0:
            ideal = MonomialIdeal.unit(self.ring)
        elif (isinstance(self.spec, PowerSpec)
                and n - 1 in self._members and n > 1):
            ideal = self._members[n - 1] * self.spec.ideal
        else:
            ideal = self.spec.member(n)
        with self._lock:
            return self._members.setdefault(n, ideal)

    def length(self, n: int):
        """Colength of I_n (exact; INFINITE when not primary)."""
        with self._lock:
            if n in self._lengths:
                return self._lengths[n]
        if n == 0:
            value = 0
        elif isinstance(self.spec, (MaxPowerSpec, ValuationSpec)):
            value = self.spec.length(n)
        else:
            value = self.member_ideal(n).colength()
        with self._lock:
            return self._lengths.setdefault(n, value)

    def saturation_gap(self, n: int):
        """Length of I_n^sat / I_n (the degree-zero local cohomology of R/I_n)."""
        member = self.member_ideal(n)
        return rel_length(member.saturation(), member)

    def label(self) -> str:
        return self.spec.label()


def build_family(spec: FamilySpec) -> GradedFamily:
    """Wrap a validated spec into a lazily evaluated family."""
    if not isinstance(spec, FamilySpec):
        raise FamilySpecError("not a family spec")
    return GradedFamily(spec)


# -- verification -------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    """PASS/FAIL with the first violating index pair, if any."""

    passed: bool
    checked_upto: int
    first_violation: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.passed


def verify_graded(F: GradedFamily, N: int) -> VerificationReport:
    """Check I_m * I_n <= I_{m+n} for all m + n <= N."""
    spec = F.spec
    if isinstance(spec, MaxPowerSpec):
        exps = [spec.exponent(n) for n in range(N + 1)]
        for m in range(1, N + 1):
            for n in range(m, N - m + 1):
                if exps[m] + exps[n] < exps[m + n]:
                    return VerificationReport(
                        False, N, (m, n),
                        f"exponent {exps[m]}+{exps[n]} < {exps[m + n]}")
        return VerificationReport(True, N)
    for m in range(1, N + 1):
        for n in range(m, N - m + 1):
            Im, In, Imn = F.member_ideal(m), F.member_ideal(n), F.member_ideal(m + n)
            for g in Im.gens:
                for h in In.gens:
                    s = tuple(a + b for a, b in zip(g, h))
                    if not Imn.contains(s):
                        return VerificationReport(
                            False, N, (m, n),
                            f"generator product {s} escapes I_{m + n}")
    return VerificationReport(True, N)


def verify_filtration(F: GradedFamily, N: int) -> VerificationReport:
    """Check the descending chain I_{n+1} <= I_n for n < N."""
    spec = F.spec
    if isinstance(spec, MaxPowerSpec):
        for n in range(N):
            if spec.exponent(n + 1) < spec.exponent(n):
                return VerificationReport(
                    False, N, (n, n + 1),
                    f"exponent drops {spec.exponent(n)} -> {spec.exponent(n + 1)}")
        return VerificationReport(True, N)
    for n in range(N):
        if not F.member_ideal(n + 1).issubset(F.member_ideal(n)):
            return VerificationReport(False, N, (n, n + 1),
                                      f"I_{n + 1} is not inside I_{n}")
    return VerificationReport(True, N)
