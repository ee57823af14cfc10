"""Exact monomial-ideal arithmetic and lattice-point length computations.

Ideals are represented by their minimal generating exponent vectors (an
antichain under componentwise <=, kept in graded-lex order).  All values are
immutable and all operations are pure functions, so everything here is safe
to evaluate in parallel.

Lengths (lattice-point counts of staircase complements) are exact integers;
``INFINITE`` marks the non-primary case.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from math import comb

from .errors import (
    DimensionMismatchError,
    InclusionError,
    MonolimError,
    RingMismatchError,
    ZeroIdealError,
)

Exponent = tuple[int, ...]

#: Returned by colength / rel_length when the count is not finite.
INFINITE = math.inf

_DEFAULT_NAMES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class AmbientRing:
    """Polynomial ring in ``d`` variables, local at the monomial maximal ideal."""

    d: int
    var_names: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise MonolimError("ring dimension must be >= 1")
        if len(self.var_names) != self.d:
            raise MonolimError("need exactly one name per variable")
        if len(set(self.var_names)) != self.d:
            raise MonolimError("variable names must be distinct")

    @classmethod
    def default(cls, d: int) -> "AmbientRing":
        if d <= len(_DEFAULT_NAMES):
            return cls(d, _DEFAULT_NAMES[:d])
        return cls(d, tuple(f"x{i + 1}" for i in range(d)))


def _gradedlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


def dominates(a: Exponent, b: Exponent) -> bool:
    """True iff ``a <= b`` componentwise (x^a divides x^b)."""
    return all(ai <= bi for ai, bi in zip(a, b))


def _minimalize_2d(points: list[Exponent]) -> list[Exponent]:
    # Sweep in x order; an antichain in the plane has strictly decreasing y.
    pts = sorted(set(points))
    kept: list[Exponent] = []
    best_y = None
    for p in pts:
        if best_y is None or p[1] < best_y:
            kept.append(p)
            best_y = p[1]
    return kept


def _minimalize_general(points: list[Exponent]) -> list[Exponent]:
    pts = sorted(set(points), key=_gradedlex_key)
    kept: list[Exponent] = []
    for p in pts:
        if not any(dominates(q, p) for q in kept):
            kept.append(p)
    return kept


def _minimal_antichain(points: list[Exponent], d: int) -> tuple[Exponent, ...]:
    if not points:
        return ()
    if d == 2:
        kept = _minimalize_2d(points)
    else:
        kept = _minimalize_general(points)
    return tuple(sorted(kept, key=_gradedlex_key))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal in canonical form.

    ``gens`` is the unique minimal generating antichain sorted in graded-lex
    order; two ideals are equal iff their canonical forms are equal.  Empty
    ``gens`` is the zero ideal, the single generator ``(0,...,0)`` is the unit
    ideal.
    """

    ring: AmbientRing
    gens: tuple[Exponent, ...]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_gens(ring: AmbientRing, gens) -> "MonomialIdeal":
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != ring.d:
                raise DimensionMismatchError(
                    f"exponent {g} has length {len(g)}, expected {ring.d}")
            if any(c < 0 for c in g):
                raise MonolimError(f"negative exponent in {g}")
        return MonomialIdeal(ring, _minimal_antichain(gens, ring.d))

    @staticmethod
    def zero(ring: AmbientRing) -> "MonomialIdeal":
        return MonomialIdeal(ring, ())

    @staticmethod
    def unit(ring: AmbientRing) -> "MonomialIdeal":
        return MonomialIdeal(ring, ((0,) * ring.d,))

    @staticmethod
    def maximal(ring: AmbientRing) -> "MonomialIdeal":
        gens = tuple(tuple(1 if j == i else 0 for j in range(ring.d))
                     for i in range(ring.d))
        return MonomialIdeal(ring, _minimal_antichain(list(gens), ring.d))

    @staticmethod
    def maximal_power(ring: AmbientRing, b: int) -> "MonomialIdeal":
        """m^b, generated by all monomials of total degree ``b``."""
        if b < 0:
            raise MonolimError("negative power")
        if b == 0:
            return MonomialIdeal.unit(ring)
        gens = [g for g in _compositions(b, ring.d)]
        return MonomialIdeal(ring, tuple(sorted(gens, key=_gradedlex_key)))

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    def contains(self, a: Exponent) -> bool:
        """Membership x^a in the ideal."""
        if len(a) != self.ring.d:
            raise DimensionMismatchError(
                f"exponent {a} has length {len(a)}, expected {self.ring.d}")
        return any(dominates(g, a) for g in self.gens)

    def issubset(self, other: "MonomialIdeal") -> bool:
        self._check_ring(other)
        return all(other.contains(g) for g in self.gens)

    def pure_power(self, axis: int):
        """Least e with x_axis^e in the ideal, or None."""
        best = None
        for g in self.gens:
            if all(c == 0 for j, c in enumerate(g) if j != axis):
                e = g[axis]
                best = e if best is None else min(best, e)
        return best

    @property
    def is_primary(self) -> bool:
        """True iff the ideal contains a pure power of every variable."""
        return all(self.pure_power(j) is not None for j in range(self.ring.d))

    def _check_ring(self, other: "MonomialIdeal") -> None:
        if self.ring != other.ring:
            raise RingMismatchError("operands live in different rings")

    # -- arithmetic --------------------------------------------------------

    def multiply(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_ring(other)
        sums = {tuple(a + b for a, b in zip(g, h))
                for g in self.gens for h in other.gens}
        return MonomialIdeal(self.ring, _minimal_antichain(list(sums), self.ring.d))

    __mul__ = multiply

    def power(self, k: int) -> "MonomialIdeal":
        """Binary exponentiation; I^0 is the unit ideal."""
        if k < 0:
            raise MonolimError("negative power")
        result = MonomialIdeal.unit(self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    __pow__ = power

    def add(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """Ideal sum I + J (union of generators, minimalized)."""
        self._check_ring(other)
        return MonomialIdeal(self.ring,
                             _minimal_antichain(list(self.gens + other.gens),
                                                self.ring.d))

    __add__ = add

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_ring(other)
        if self.ring.d == 2 and len(self.gens) * len(other.gens) > 64:
            return self._intersect_2d(other)
        maxes = {tuple(max(a, b) for a, b in zip(g, h))
                 for g in self.gens for h in other.gens}
        return MonomialIdeal(self.ring, _minimal_antichain(list(maxes), self.ring.d))

    __and__ = intersect

    def _intersect_2d(self, other: "MonomialIdeal") -> "MonomialIdeal":
        # Staircase merge: the intersection staircase is the pointwise max of
        # the two column functions, so its corners come from a linear walk.
        if self.is_zero or other.is_zero:
            return MonomialIdeal.zero(self.ring)
        xs = sorted({g[0] for g in self.gens} | {g[0] for g in other.gens})
        pts = []
        for x in xs:
            ya = _column_min(self.gens, x)
            yb = _column_min(other.gens, x)
            if ya is None or yb is None:
                continue
            pts.append((x, max(ya, yb)))
        return MonomialIdeal(self.ring, _minimal_antichain(pts, 2))

    def colon(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """I : J, the exponents a with a + g in I for every generator g of J."""
        self._check_ring(other)
        if other.is_zero:
            raise ZeroIdealError("colon by the zero ideal is undefined")
        result = None
        for h in other.gens:
            shifted = [tuple(max(a - b, 0) for a, b in zip(g, h))
                       for g in self.gens]
            part = MonomialIdeal(self.ring,
                                 _minimal_antichain(shifted, self.ring.d))
            result = part if result is None else result & part
        return result

    def saturate(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """I : J^infinity, the least fixpoint of repeated colon by J.

        Computed in closed form: for a single monomial x^h the stable colon
        zeroes every coordinate in the support of h, and saturation by J is
        the intersection of the single-generator saturations.
        """
        self._check_ring(other)
        if other.is_zero:
            raise ZeroIdealError("saturation by the zero ideal is undefined")
        if self.is_zero:
            return self
        result = None
        for h in other.gens:
            support = {j for j, c in enumerate(h) if c > 0}
            zeroed = [tuple(0 if j in support else c for j, c in enumerate(g))
                      for g in self.gens]
            part = MonomialIdeal(self.ring,
                                 _minimal_antichain(zeroed, self.ring.d))
            result = part if result is None else result & part
        return result

    def saturation(self) -> "MonomialIdeal":
        """I^sat = I : m^infinity."""
        return self.saturate(MonomialIdeal.maximal(self.ring))

    # -- lengths -----------------------------------------------------------

    def colength(self):
        """Number of exponents outside the staircase; INFINITE if not primary."""
        if self.is_zero:
            return INFINITE
        if self.is_unit:
            return 0
        d = self.ring.d
        pure = [self.pure_power(j) for j in range(d)]
        if any(p is None for p in pure):
            return INFINITE
        b = _maximal_power_degree(self.gens, d)
        if b is not None:
            return comb(b + d - 1, d)
        return _colength_primary(self.gens, d, pure)

    def dim_quotient(self) -> int:
        """Krull dimension of R/I (0 for primary, d for the zero ideal)."""
        if self.is_zero:
            return self.ring.d
        if self.is_unit:
            return -1
        d = self.ring.d
        best = 0
        for r in range(d, 0, -1):
            for subset in itertools.combinations(range(d), r):
                free = set(subset)
                if all(any(c > 0 for j, c in enumerate(g) if j not in free)
                       for g in self.gens):
                    return r
        return best

    # -- presentation ------------------------------------------------------

    def __str__(self) -> str:
        return format_ideal(self)


def _compositions(total: int, parts: int):
    """All exponent vectors of length ``parts`` summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _maximal_power_degree(gens: tuple[Exponent, ...], d: int):
    """If the ideal is m^b, return b; else None."""
    if not gens:
        return None
    b = sum(gens[0])
    if any(sum(g) != b for g in gens):
        return None
    if len(gens) != comb(b + d - 1, d - 1):
        return None
    return b


def _column_min(gens: tuple[Exponent, ...], x: int):
    """Least y with (x, y) in the staircase, or None if the column is empty."""
    best = None
    for g in gens:
        if g[0] <= x:
            best = g[1] if best is None else min(best, g[1])
    return best


def _column_profile(gens: tuple[Exponent, ...], width: int) -> list:
    """Column function values y_min(x) for x in [0, width); None = empty column."""
    order = sorted(gens)
    out = []
    best = None
    k = 0
    for x in range(width):
        while k < len(order) and order[k][0] <= x:
            y = order[k][1]
            best = y if best is None else min(best, y)
            k += 1
        out.append(best)
    return out


def _colength_2d(gens: tuple[Exponent, ...], px: int) -> int:
    profile = _column_profile(gens, px)
    return sum(y for y in profile if y is not None)


def _colength_primary(gens, d: int, pure) -> int:
    """Colength of a primary staircase by slicing off the last coordinate."""
    if d == 1:
        return pure[0]
    if d == 2:
        return _colength_2d(gens, pure[0])
    by_last = sorted(gens, key=lambda g: g[-1])
    total = 0
    active: list[Exponent] = []
    k = 0
    for z in range(pure[-1]):
        changed = False
        while k < len(by_last) and by_last[k][-1] <= z:
            active.append(by_last[k][:-1])
            k += 1
            changed = True
        if changed:
            slice_gens = _minimal_antichain(active, d - 1)
            slice_pure = [min(g[j] for g in slice_gens
                              if all(c == 0 for i, c in enumerate(g) if i != j))
                          for j in range(d - 1)]
        total += _colength_primary(slice_gens, d - 1, slice_pure)
    return total


def minimalize(ring: AmbientRing, gens) -> MonomialIdeal:
    """Canonical minimal antichain generating the same ideal; idempotent."""
    return MonomialIdeal.from_gens(ring, gens)


def rel_length(outer: MonomialIdeal, inner: MonomialIdeal):
    """Count of exponents in ``outer`` but not ``inner`` (requires inner <= outer).

    Finiteness is decided symbolically: the count is finite iff the
    annihilator ``inner : outer`` is primary (or the ideals coincide).
    """
    outer._check_ring(inner)
    if not inner.issubset(outer):
        raise InclusionError("inner ideal is not contained in the outer ideal")
    if inner == outer:
        return 0
    co, ci = outer.colength(), inner.colength()
    if co != INFINITE and ci != INFINITE:
        return ci - co
    ann = inner.colon(outer)
    if not ann.is_primary:
        return INFINITE
    d = outer.ring.d
    if d == 2:
        width = max(g[0] for g in outer.gens + inner.gens) + 1
        po = _column_profile(outer.gens, width)
        pi = _column_profile(inner.gens, width)
        total = 0
        for yo, yi in zip(po, pi):
            if yo is None:
                continue
            if yi is None:
                return INFINITE
            total += yi - yo
        return total
    pure = [ann.pure_power(j) for j in range(d)]
    bounds = [max(g[j] for g in outer.gens) + pure[j] for j in range(d)]
    total = 0
    for a in itertools.product(*[range(b) for b in bounds]):
        if outer.contains(a) and not inner.contains(a):
            total += 1
    return total


def length_mod_power(outer: MonomialIdeal, inner: MonomialIdeal, k: int) -> int:
    """Length of outer/(m^k * outer + inner); always finite."""
    if k < 0:
        raise MonolimError("negative power")
    mk = MonomialIdeal.maximal_power(outer.ring, k)
    return rel_length(outer, mk.multiply(outer).add(inner))


def containment_order(ideal: MonomialIdeal) -> int:
    """Least c with m^c contained in the ideal (the ideal must be primary).

    Equals one plus the largest total degree of a standard monomial.
    """
    if not ideal.is_primary:
        raise InclusionError("no power of the maximal ideal fits in a non-primary ideal")
    if ideal.is_unit:
        return 0
    d = ideal.ring.d
    b = _maximal_power_degree(ideal.gens, d)
    if b is not None:
        return b
    pure = [ideal.pure_power(j) for j in range(d)]
    if d == 1:
        return pure[0]
    if d == 2:
        profile = _column_profile(ideal.gens, pure[0])
        return max(x + y for x, y in enumerate(profile) if y)
    best = 0
    for a in itertools.product(*[range(p) for p in pure]):
        if not ideal.contains(a):
            best = max(best, sum(a) + 1)
    return best


@dataclass(frozen=True)
class MonomialModule:
    """Monomial submodule E of a free module F = R^n.

    A monomial submodule splits as a direct sum of one coefficient ideal per
    free generator; powers E^k inside the symmetric algebra of F are computed
    componentwise by convolving the multidegree pieces.
    """

    ring: AmbientRing
    components: tuple[MonomialIdeal, ...]

    def __post_init__(self) -> None:
        for c in self.components:
            if c.ring != self.ring:
                raise RingMismatchError("component ideal in a different ring")
        if not self.components:
            raise MonolimError("module needs at least one free generator")

    @staticmethod
    def from_components(ring: AmbientRing, ideals) -> "MonomialModule":
        return MonomialModule(ring, tuple(ideals))

    @property
    def free_rank(self) -> int:
        return len(self.components)

    @property
    def rank(self) -> int:
        """Generic rank: number of free generators with a nonzero coefficient ideal.

        Equals the Krull dimension of the algebra generated by the module
        minus the ring dimension (the multidegree lattice of the generators
        is spanned by the unit vectors of the nonzero components).
        """
        return sum(0 if c.is_zero else 1 for c in self.components)

    def pieces(self, upto: int):
        """Iterate (k, multidegree components of E^k) for k = 0..upto.

        Each piece maps a multidegree over the free generators (total degree
        k) to the coefficient ideal of E^k in that coordinate of F^k; the
        convolution is incremental, so consuming the whole iterator costs one
        step per k.
        """
        if upto < 0:
            raise MonolimError("negative power")
        n = self.free_rank
        current = {(0,) * n: MonomialIdeal.unit(self.ring)}
        first = {}
        for j, ideal in enumerate(self.components):
            if ideal.is_zero:
                continue
            beta = tuple(1 if i == j else 0 for i in range(n))
            first[beta] = ideal
        yield 0, current
        for k in range(1, upto + 1):
            nxt: dict[tuple[int, ...], MonomialIdeal] = {}
            for beta, ideal in current.items():
                for db, dideal in first.items():
                    key = tuple(a + b for a, b in zip(beta, db))
                    prod = ideal * dideal
                    nxt[key] = prod if key not in nxt else nxt[key] + prod
            current = nxt
            yield k, current

    def piece(self, k: int) -> dict[tuple[int, ...], MonomialIdeal]:
        """Multidegree components of E^k inside F^k."""
        for i, piece in self.pieces(k):
            if i == k:
                return piece
        raise MonolimError("unreachable")


# -- text syntax -----------------------------------------------------------

_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


def parse_ideal(ring: AmbientRing, text: str) -> MonomialIdeal:
    """Parse the comma-separated monomial syntax, e.g. ``"x^2*y, y^3"``."""
    text = text.strip()
    if text == "0":
        return MonomialIdeal.zero(ring)
    index = {name: i for i, name in enumerate(ring.var_names)}
    gens = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise MonolimError("empty monomial in ideal text")
        e = [0] * ring.d
        if chunk != "1":
            for factor in chunk.split("*"):
                m = _FACTOR_RE.match(factor.strip())
                if not m:
                    raise MonolimError(f"bad monomial factor {factor!r}")
                name, exp = m.group(1), m.group(2)
                if name not in index:
                    raise MonolimError(f"unknown variable {name!r}")
                e[index[name]] += int(exp) if exp else 1
        gens.append(tuple(e))
    return MonomialIdeal.from_gens(ring, gens)


def format_monomial(ring: AmbientRing, e: Exponent) -> str:
    if not any(e):
        return "1"
    parts = []
    for name, c in zip(ring.var_names, e):
        if c == 1:
            parts.append(name)
        elif c > 1:
            parts.append(f"{name}^{c}")
    return "*".join(parts)


def format_ideal(ideal: MonomialIdeal) -> str:
    """Canonical printer; round-trips bit-exactly with :func:`parse_ideal`."""
    if ideal.is_zero:
        return "0"
    return ", ".join(format_monomial(ideal.ring, g) for g in ideal.gens)
