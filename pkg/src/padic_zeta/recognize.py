"""Display-only reconstruction of small rationals from p-adic approximations."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .padic import PadicNumber


def icbrt(n: int) -> int:
    """Integer cube root: Newton's iteration from above."""
    if n < 0:
        raise ValueError("icbrt of a negative number")
    if n < 2:
        return n
    x = 1 << (n.bit_length() + 2) // 3
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            return x
        x = y


def default_height(x: PadicNumber) -> int:
    """Integer cube root of ``p**precision``: rare false positives, fine for display."""
    return max(1, icbrt(x.prime ** max(x.precision, 0)))


def reconstruct(u: int, mod: int, bound: int) -> Fraction | None:
    """The unique ``r/t`` with ``|r|, |t| <= bound`` and ``r = u t mod m``, if any.

    Half-extended Euclid (Wang): stop at the first remainder ``<= bound``; the
    candidate is accepted when its denominator is within the bound and prime
    to the modulus.  Uniqueness holds when ``2 bound**2 < mod``.
    """
    r0, r1 = mod, u % mod
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or gcd(r1, t1) != 1 or gcd(t1, mod) != 1:
        return None
    if (t1 * u - r1) % mod:
        return None
    return Fraction(r1, t1)


def rational_recognition(x: PadicNumber, height_bound: int | None = None) -> Fraction | None:
    """A rational of height at most ``height_bound`` congruent to x at its precision."""
    if x.is_zero:
        return Fraction(0)
    bound = default_height(x) if height_bound is None else height_bound
    if 2 * bound * bound >= x.prime**x.precision:
        bound = isqrt((x.prime**x.precision - 1) // 2)
    q = reconstruct(x.unit, x.prime**x.precision, bound)
    if q is None:
        return None
    return q * Fraction(x.prime) ** x.valuation
