"""Exact comparisons involving d-th roots of nonnegative rationals.

No floating point: roots are bracketed by integer d-th roots of scaled
numerators and the brackets are refined until the comparison is decidable.
The only undecidable-by-refinement case, exact equality, is detected
algebraically first.
"""

from __future__ import annotations

from fractions import Fraction


def iroot(n: int, d: int) -> int:
    """Floor of the d-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    if d == 1:
        return n
    x = 1 << (-(-n.bit_length() // d))
    while True:
        y = ((d - 1) * x + n // x ** (d - 1)) // d
        if y >= x:
            break
        x = y
    while x ** d > n:
        x -= 1
    return x


def rational_root_exact(q: Fraction, d: int):
    """The exact rational d-th root of q, or None if it is irrational."""
    if q < 0:
        raise ValueError("negative radicand")
    p, r = q.numerator, q.denominator
    rp, rr = iroot(p, d), iroot(r, d)
    if rp ** d == p and rr ** d == r:
        return Fraction(rp, rr)
    return None


def _root_bracket(q: Fraction, d: int, scale: int) -> tuple[Fraction, Fraction]:
    """Bracket q**(1/d) with width 1/scale."""
    p, r = q.numerator, q.denominator
    lo = iroot(p * scale ** d * r ** (d - 1), d)
    return Fraction(lo, scale * r), Fraction(lo + 1, scale * r)


def root_sum_compare(a: Fraction, b: Fraction, c: Fraction, d: int) -> int:
    """Sign of a**(1/d) + b**(1/d) - c**(1/d), exactly (-1, 0, or +1)."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if min(a, b, c) < 0:
        raise ValueError("negative radicand")
    if c == 0:
        return 0 if a == b == 0 else 1
    if a == 0 and b == 0:
        return -1
    if a == 0 or b == 0:
        s = b if a == 0 else a
        return -1 if s < c else (0 if s == c else 1)
    # Equality a^(1/d) + b^(1/d) = c^(1/d) forces b/a = t^d with t rational
    # and c = a*(1+t)^d.
    t = rational_root_exact(b / a, d)
    if t is not None and c == a * (1 + t) ** d:
        return 0
    scale = 16
    while True:
        alo, ahi = _root_bracket(a, d, scale)
        blo, bhi = _root_bracket(b, d, scale)
        clo, chi = _root_bracket(c, d, scale)
        if alo + blo > chi:
            return 1
        if ahi + bhi < clo:
            return -1
        scale *= 256


def root_sum_at_least(a, b, c, d: int) -> tuple[bool, bool]:
    """Whether a**(1/d) + b**(1/d) >= c**(1/d); returns (holds, is_equality)."""
    sign = root_sum_compare(a, b, c, d)
    return sign >= 0, sign == 0
