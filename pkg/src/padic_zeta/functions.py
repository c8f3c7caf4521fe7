"""Teichmuller character, principal-unit projection, Iwasawa logarithm,
exponential, two-variable power and binomial coefficients over Q_p.

The ``*_int`` helpers work on plain integers modulo ``p**n`` and are shared
with the Riemann-sum integrands, which evaluate these functions at tens of
thousands of residues and cannot afford a :class:`PadicNumber` per term.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DomainError
from .padic import (DEFAULT_PRECISION, PadicNumber, as_padic, from_rational,
                    to_fraction, vp)


# -- integer kernels ------------------------------------------------------------

@lru_cache(maxsize=256)
def teichmuller_table(p: int, n: int) -> tuple[int, ...]:
    """``table[r]`` is the Teichmuller lift of ``r`` modulo ``p**n`` (``table[0] = 0``)."""
    mod = p**n
    table = [0]
    for r in range(1, p):
        x = r
        for _ in range(n):
            y = pow(x, p, mod)
            if y == x:
                break
            x = y
        table.append(x)
    return tuple(table)


@lru_cache(maxsize=256)
def _teichmuller_inverse_table(p: int, n: int) -> tuple[int, ...]:
    mod = p**n
    return (0,) + tuple(pow(w, -1, mod) for w in teichmuller_table(p, n)[1:])


def principal_unit_int(u: int, p: int, n: int) -> int:
    """``u / omega(u)`` modulo ``p**n`` for an integer ``u`` prime to ``p``."""
    return (u * _teichmuller_inverse_table(p, n)[u % p]) % p**n


def _log_terms(vt: int, p: int, n: int) -> int:
    # k*vt - v_p(k) >= k*vt - floor(log_p k), which is non-decreasing in k
    k = 1
    while True:
        lg, q = 0, k
        while q >= p:
            q //= p
            lg += 1
        if k * vt - lg >= n:
            return k
        k += 1


@lru_cache(maxsize=64)
def _log_coefficients(p: int, n: int, kmax: int):
    out = []
    for k in range(1, kmax):
        e = vp(k, p)
        out.append((e, p**e, pow(k // p**e, -1, p**n), 1 if k % 2 else -1))
    return tuple(out)


def log1p_int(t: int, p: int, n: int) -> int:
    """``log(1 + t)`` modulo ``p**n`` for an integer ``t`` divisible by ``p``."""
    mod_n = p**n
    t %= mod_n
    if t == 0:
        return 0
    if t % p:
        raise DomainError("log1p_int needs t divisible by p")
    kmax = _log_terms(vp(t, p), p, n)
    coeffs = _log_coefficients(p, n, kmax)
    extra = max((e for e, *_ in coeffs), default=0)
    mod = p ** (n + extra)
    acc, tk = 0, 1
    for e, pe, inv_k, sign in coeffs:
        tk = tk * t % mod
        acc += sign * (tk // pe) * inv_k
    return acc % mod_n


def _legendre(k: int, p: int) -> int:
    s, q = 0, k
    while q:
        q //= p
        s += q
    return s


@lru_cache(maxsize=64)
def _exp_coefficients(p: int, n: int, vy: int):
    # v(y^k/k!) >= k*vy - (k-1)/(p-1), increasing in k since vy >= 1
    kmax = 1
    while kmax * vy * (p - 1) - (kmax - 1) < n * (p - 1):
        kmax += 1
    out = []
    for k in range(1, kmax):
        e = _legendre(k, p)
        unit = factorial(k) // p**e
        out.append((p**e, pow(unit, -1, p**n)))
    extra = _legendre(kmax, p)
    return tuple(out), extra


def exp_int(y: int, p: int, n: int) -> int:
    """``exp(y)`` modulo ``p**n`` for an integer ``y`` divisible by ``p``."""
    mod_n = p**n
    y %= mod_n
    if y == 0:
        return 1 % mod_n
    if y % p:
        raise DomainError("exp_int needs y divisible by p")
    coeffs, extra = _exp_coefficients(p, n, vp(y, p))
    mod = p ** (n + extra)
    acc, yk = 1, 1
    for pe, inv_unit in coeffs:
        yk = yk * y % mod
        acc += (yk // pe) * inv_unit
    return acc % mod_n


# -- p-adic functions -----------------------------------------------------------

def _nonzero(a: PadicNumber, what: str) -> PadicNumber:
    if a.is_zero:
        raise DomainError(f"{what} is undefined at 0 (value is 0 + O({a.prime}^{a.absprec}))")
    return a


def teichmuller(a, p: int | None = None, N: int = DEFAULT_PRECISION) -> PadicNumber:
    """The (p-1)-th root of unity congruent to ``a`` modulo ``p``.

    Computed by iterating ``x -> x**p`` modulo ``p**N`` until it stops moving,
    which takes at most ``N`` steps.
    """
    a = as_padic(a, p or a.prime, N)
    if a.is_zero or a.valuation != 0:
        raise DomainError("teichmuller needs a p-adic unit (valuation 0)")
    p, n = a.prime, a.precision
    mod = p**n
    x = a.unit
    for _ in range(n):
        y = pow(x, p, mod)
        if y == x:
            break
        x = y
    return PadicNumber(p, 0, x, n)


def angle(a, p: int | None = None, N: int = DEFAULT_PRECISION) -> PadicNumber:
    """Principal-unit part ``<a> = p**(-v) * a / omega(unit)``; always ``= 1 mod p``."""
    a = _nonzero(as_padic(a, p or a.prime, N), "<a>")
    p, n = a.prime, a.precision
    return PadicNumber(p, 0, principal_unit_int(a.unit, p, n), n)


def omega_v(a, p: int | None = None, N: int = DEFAULT_PRECISION) -> PadicNumber:
    """``a / <a> = p**v(a) * omega(unit)``."""
    a = _nonzero(as_padic(a, p or a.prime, N), "omega_v")
    p, n = a.prime, a.precision
    return PadicNumber(p, a.valuation, teichmuller_table(p, n)[a.unit % p], n)


def decompose(a, p: int | None = None, N: int = DEFAULT_PRECISION):
    """Split ``a`` as ``(v, omega, <a>)`` with ``a = p**v * omega * <a>``."""
    a = _nonzero(as_padic(a, p or a.prime, N), "decompose")
    w = PadicNumber(a.prime, 0, teichmuller_table(a.prime, a.precision)[a.unit % a.prime],
                    a.precision)
    return a.valuation, w, angle(a)


def log_p(x, p: int | None = None, N: int = DEFAULT_PRECISION) -> PadicNumber:
    """Iwasawa logarithm: ``log_p(p) = 0``, ``log_p(root of unity) = 0``.

    Equals the Mercator series evaluated at ``<x> - 1``.  The result is known
    to the same absolute precision as the relative precision of ``x``.
    """
    x = _nonzero(as_padic(x, p or x.prime, N), "log_p")
    p, n = x.prime, x.precision
    t = principal_unit_int(x.unit, p, n) - 1
    return PadicNumber.from_scaled(p, 0, log1p_int(t, p, n), n)


def exp_p(x, p: int | None = None, N: int = DEFAULT_PRECISION) -> PadicNumber:
    """p-adic exponential, defined for ``val(x) >= 1`` (p odd)."""
    x = as_padic(x, p or x.prime, N)
    p = x.prime
    a = x.absprec
    if x.is_zero:
        return PadicNumber.from_scaled(p, 0, 1, max(a, 1))
    if x.valuation < 1:
        raise DomainError(
            f"exp_p diverges: |x|_p = {p}^{-x.valuation} is not below "
            f"p^(-1/(p-1)); need val(x) >= 1")
    y = x.unit * p**x.valuation
    return PadicNumber.from_scaled(p, 0, exp_int(y, p, a), a)


def _as_zp_exponent(s, p: int, n: int):
    """Validate an exponent in Z_p; ints are returned unchanged."""
    if isinstance(s, bool):
        raise TypeError("bool is not an exponent")
    if isinstance(s, int):
        return s
    if not isinstance(s, PadicNumber):
        q = to_fraction(s)
        if q.denominator == 1:
            return int(q)
        if q.denominator % p == 0:
            raise DomainError(f"s = {q} is not in Z_{p}")
        return from_rational(q, p, n)
    if s.prime != p:
        raise DomainError(f"mixed primes {s.prime} and {p}")
    if not s.is_zero and s.valuation < 0:
        raise DomainError(f"s is not in Z_{p} (valuation {s.valuation})")
    return s


def angle_pow(lam, s, p: int | None = None, N: int = DEFAULT_PRECISION) -> PadicNumber:
    """``<lam>**s = exp_p(s * log_p <lam>)`` for ``s`` in Z_p.

    Integer exponents use plain powering, which is the same function.
    """
    lam = as_padic(lam, p or lam.prime, N)
    base = angle(lam)
    s = _as_zp_exponent(s, base.prime, base.precision)
    if isinstance(s, int):
        return base**s
    return exp_p(s * log_p(base))


def angle_pow_binomial(lam, s, p: int | None = None, N: int = DEFAULT_PRECISION) -> PadicNumber:
    """``<lam>**s`` through the binomial series ``sum binom(s, n) (<lam> - 1)**n``."""
    lam = as_padic(lam, p or lam.prime, N)
    base = angle(lam)
    p, n = base.prime, base.precision
    s = _as_zp_exponent(s, p, n)
    if isinstance(s, int):
        s = from_rational(s, p, n + 2 * n)
    t = base - 1
    if t.is_zero:
        return base
    target = base.absprec
    total = from_rational(1, p, n)
    k = 1
    # v(binom(s, k) t^k) >= k*v(t) - v(k!) > k*(v(t) - 1/(p-1))
    while k * t.valuation * (p - 1) - k < target * (p - 1):
        total = total + binom(s, k) * t**k
        k += 1
    return total.with_absprec(target)


def binom(s, n: int):
    """Generalised binomial coefficient ``s(s-1)...(s-n+1)/n!``."""
    if n < 0:
        raise DomainError("binom needs n >= 0")
    if isinstance(s, PadicNumber):
        out = from_rational(1, s.prime, max(s.precision, 1))
        for i in range(n):
            out = out * (s - i)
        return out / factorial(n)
    s = to_fraction(s)
    num = Fraction(1)
    for i in range(n):
        num *= s - i
    return num / factorial(n)


def pochhammer(a, n: int):
    """Rising factorial ``a(a+1)...(a+n-1)``; ``(a)_0 = 1``."""
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    if isinstance(a, PadicNumber):
        out = from_rational(1, a.prime, max(a.precision, 1))
    else:
        a = to_fraction(a)
        out = Fraction(1)
    for i in range(n):
        out = out * (a + i)
    return out
