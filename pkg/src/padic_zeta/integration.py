"""Volkenborn (Haar) and fermionic (mu_-1) integration over Z_p.

Both integrals are limits of Riemann sums over ``a < p**N``.  For a locally
analytic integrand the level-N sum is a power series in ``n = p**N`` whose
constant term is the integral, so the engine evaluates several consecutive
levels and removes the ``n, n**2, ...`` terms by Richardson extrapolation
(ratio p, unit denominators ``1 - p**i``).  The reported precision is capped
at the agreement between successive extrapolants.

Integrands are restricted to the composites below; arbitrary callables are
rejected because nothing certifies their smoothness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DomainError
from .functions import (exp_int, log1p_int, principal_unit_int, teichmuller_table)
from .padic import (DEFAULT_PRECISION, PadicNumber, check_prime, from_rational,
                    to_fraction, vp)
from .spectra import AnalyticFunction, GuardCertificate, guard, poly_add, poly_mul

HAAR, FERMIONIC = "haar", "mu-1"
MEASURES = (HAAR, FERMIONIC)

# residue budget for the default level schedule
MAX_RESIDUES = 20000
MAX_LEVEL = 6


# -- classical numbers ------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """``B_0 .. B_n`` with ``B_1 = -1/2``, from ``sum_{k<=m} binom(m+1, k) B_k = 0``."""
    if n > 0:
        prev = bernoulli_numbers(n - 1)
        if len(prev) == n:
            s = sum((comb(n + 1, k) * b for k, b in enumerate(prev)), Fraction(0))
            return prev + (-s / (n + 1),)
    out = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum((comb(m + 1, k) * out[k] for k in range(m)), Fraction(0))
        out.append(-s / (m + 1))
    return tuple(out)


@lru_cache(maxsize=None)
def euler_zero_values(n: int) -> tuple[Fraction, ...]:
    """``E_0(0) .. E_n(0)`` from ``2 E_k(0) + sum_{j<k} binom(k, j) E_j(0) = 0``."""
    out = [Fraction(1)]
    for k in range(1, n + 1):
        s = sum((comb(k, j) * out[j] for j in range(k)), Fraction(0))
        out.append(-s / 2)
    return tuple(out)


def moments(measure: str, n: int) -> tuple[Fraction, ...]:
    """Integrals of ``a**0 .. a**n`` against the measure."""
    if measure == HAAR:
        return bernoulli_numbers(n)
    if measure == FERMIONIC:
        return euler_zero_values(n)
    raise DomainError(f"unknown measure {measure!r}; use one of {MEASURES}")


def integrate_polynomial(coeffs, measure: str) -> Fraction:
    """Exact integral of a rational polynomial (power basis)."""
    coeffs = [to_fraction(c) for c in coeffs]
    if not coeffs:
        return Fraction(0)
    mom = moments(measure, len(coeffs) - 1)
    return sum((c * m for c, m in zip(coeffs, mom)), Fraction(0))


@lru_cache(maxsize=4096)
def _shifted_power(f: AnalyticFunction, lam: Fraction, m: int):
    if m == 0:
        return (Fraction(1),)
    base = poly_add((lam,), f.power_coefficients())
    return poly_mul(_shifted_power(f, lam, m - 1), base)


def exact_moment(f: AnalyticFunction, m: int, lam, measure: str) -> Fraction | None:
    """``int (lam + f(a))**m`` exactly, or ``None`` when f is not a polynomial."""
    if m < 0:
        raise DomainError("moment order must be >= 0")
    if not f.is_polynomial:
        return None
    return integrate_polynomial(_shifted_power(f, to_fraction(lam), m), measure)


# -- integrands -------------------------------------------------------------------

def _lambda(lam, p: int):
    """Exact rational stand-in for lambda plus the relative-precision cap it implies."""
    if isinstance(lam, PadicNumber):
        if lam.prime != p:
            raise DomainError(f"mixed primes {lam.prime} and {p}")
        return lam.lift(), (None if lam.is_zero else lam.precision)
    return to_fraction(lam), None


class Integrand:
    """Base class: an admissible integrand ``a -> g(a)`` built from ``lam + f(a)``."""

    def __init__(self, f: AnalyticFunction, lam=0):
        if not isinstance(f, AnalyticFunction):
            raise TypeError("integrands are built from AnalyticFunction instances only")
        self.f = f
        self.lam = lam

    def exact(self, measure: str) -> Fraction | None:
        return None

    def table(self, p: int, count: int, digits: int, cert: GuardCertificate):
        """``(shift, values)`` with ``g(a) = p**shift * values[a] + O(p**(shift+digits))``."""
        raise NotImplementedError

    def needs_guard(self) -> bool:
        return True

    def _base(self, p, count, digits, cert):
        lam, _ = _lambda(self.lam, p)
        depth = cert.max_valuation + cert.scale + 1
        X = self.f.residues(lam, p, count, digits + depth)
        return lam, X


class MomentIntegrand(Integrand):
    """``(lam + f(a))**m``."""

    def __init__(self, f, lam=0, m: int = 1):
        super().__init__(f, lam)
        if m < 0:
            raise DomainError("moment order must be >= 0")
        self.m = m

    def needs_guard(self):
        return False

    def exact(self, measure):
        if isinstance(self.lam, PadicNumber):
            return None
        return exact_moment(self.f, self.m, self.lam, measure)

    def table(self, p, count, digits, cert):
        lam, _ = _lambda(self.lam, p)
        e, _, _ = self.f.integral_model(lam, p)
        mod = p**digits
        X = self.f.residues(lam, p, count, digits)
        return -e * self.m, tuple(pow(x, self.m, mod) for x in X)


class AnglePowerIntegrand(Integrand):
    """``<lam + f(a)>**k`` for an exponent k in Z_p (int or PadicNumber)."""

    def __init__(self, f, lam, exponent):
        super().__init__(f, lam)
        self.exponent = exponent

    def exact(self, measure):
        # only when <lam + f(a)> is a constant multiple of lam + f(a); callers
        # use the closed forms in the zeta module instead
        return None

    def table(self, p, count, digits, cert):
        k = self.exponent
        if isinstance(k, PadicNumber):
            digits = min(digits, k.absprec + 1)
        lam, X = self._base(p, count, digits, cert)
        mod = p**digits
        out = []
        if isinstance(k, int):
            for x in X:
                u = x
                while u % p == 0:
                    u //= p
                out.append(pow(principal_unit_int(u, p, digits), k, mod))
        else:
            kk = k.residue(min(digits, k.absprec)) if not k.is_zero else 0
            for x in X:
                u = x
                while u % p == 0:
                    u //= p
                t = principal_unit_int(u, p, digits) - 1
                out.append(exp_int(kk * log1p_int(t, p, digits), p, digits))
        return 0, tuple(out)


class LogGammaIntegrand(Integrand):
    """``x (log_p x - 1)`` (hurwitz) or ``-x log_p x`` (euler) at ``x = lam + f(a)``."""

    def __init__(self, f, lam, kind: str = "hurwitz"):
        super().__init__(f, lam)
        if kind not in ("hurwitz", "euler"):
            raise DomainError(f"unknown kind {kind!r}")
        self.kind = kind

    def table(self, p, count, digits, cert):
        lam, X = self._base(p, count, digits, cert)
        e, _, _ = self.f.integral_model(lam, p)
        mod = p**digits
        out = []
        for x in X:
            u = x
            while u % p == 0:
                u //= p
            L = log1p_int(principal_unit_int(u, p, digits) - 1, p, digits)
            if self.kind == "hurwitz":
                out.append(x * (L - 1) % mod)
            else:
                out.append(-x * L % mod)
        return -e, tuple(out)


def as_integrand(obj) -> Integrand:
    if isinstance(obj, Integrand):
        return obj
    if isinstance(obj, AnalyticFunction):
        return MomentIntegrand(obj, 0, 1)
    raise TypeError(
        f"{type(obj).__name__} is not an admissible integrand; build one from "
        f"AnalyticFunction (MomentIntegrand, AnglePowerIntegrand, LogGammaIntegrand)")


# -- Riemann sums and extrapolation -------------------------------------------------

def default_levels(p: int) -> list[int]:
    """Levels ``1..top`` with top the largest N <= 6 such that p**N <= 20000.

    Lower levels are prefixes of the top-level table, so they cost nothing and
    each one removes another power of n in the extrapolation.
    """
    top = 1
    while top < MAX_LEVEL and p ** (top + 1) <= MAX_RESIDUES:
        top += 1
    return list(range(1, top + 1))


def parse_levels(text: str) -> list[int]:
    a, sep, b = text.partition("..")
    try:
        lo, hi = int(a), int(b if sep else a)
    except ValueError:
        raise DomainError(f"levels must look like 3..6, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise DomainError(f"levels must satisfy 1 <= a <= b, got {text!r}")
    return list(range(lo, hi + 1))


@dataclass(frozen=True)
class IntegralReport:
    value: PadicNumber
    levels_used: tuple[int, ...]
    agreement_digits: tuple[int, ...]
    converged: bool
    method: str = "riemann+richardson"
    raw_sums: tuple[PadicNumber, ...] = field(default=(), repr=False)
    guard_depth: int | None = None

    @property
    def exact(self) -> bool:
        return self.method == "exact"


def riemann_sums(integrand: Integrand, measure: str, p: int, levels, digits: int,
                 cert: GuardCertificate) -> list[PadicNumber]:
    top = max(levels)
    shift, vals = _cached_table(integrand, p, p**top, digits, cert)
    out = []
    for N in levels:
        n = p**N
        if measure == HAAR:
            s = sum(vals[:n])
            out.append(PadicNumber.from_scaled(p, shift - N, s, shift - N + digits))
        else:
            s = sum(vals[0:n:2]) - sum(vals[1:n:2])
            out.append(PadicNumber.from_scaled(p, shift, s, shift + digits))
    return out


_TABLES: dict = {}


def _cached_table(integrand, p, count, digits, cert):
    key = (type(integrand).__name__, integrand.f, _key(integrand.lam),
           _key(getattr(integrand, "m", None)), _key(getattr(integrand, "exponent", None)),
           getattr(integrand, "kind", None), p, count, digits)
    hit = _TABLES.get(key)
    if hit is None:
        if len(_TABLES) > 256:
            _TABLES.clear()
        hit = _TABLES[key] = integrand.table(p, count, digits, cert)
    return hit


def _key(x):
    if isinstance(x, PadicNumber):
        return ("padic", x.prime, x.valuation, x.unit, x.precision)
    return x


def richardson(sums: list[PadicNumber], p: int) -> list[PadicNumber]:
    """Diagonal of the Richardson table for level sums at consecutive levels."""
    table = [[s] for s in sums]
    for j in range(1, len(sums)):
        for i in range(1, j + 1):
            w = p**i
            table[j].append((table[j][i - 1] - table[j - 1][i - 1] * w) / (1 - w))
    return [row[-1] for row in table]


def integrate(integrand, measure: str = HAAR, p: int = 5, prec: int = DEFAULT_PRECISION,
              levels=None, fast_path: bool = True, required: int | None = None,
              guard_depth: int | None = None) -> IntegralReport:
    """Integrate an admissible integrand against the Haar distribution or mu_-1.

    ``required`` is the number of significant digits the consecutive
    extrapolants must confirm for ``converged`` (default ``prec // 2``).
    """
    check_prime(p)
    integrand = as_integrand(integrand)
    if measure not in MEASURES:
        raise DomainError(f"unknown measure {measure!r}; use one of {MEASURES}")
    if fast_path:
        exact = integrand.exact(measure)
        if exact is not None:
            return IntegralReport(from_rational(exact, p, prec), (), (), True, "exact")
    levels = sorted(levels) if levels else default_levels(p)
    if any(b != a + 1 for a, b in zip(levels, levels[1:])) or levels[0] < 1:
        raise DomainError(f"levels must be consecutive positive integers, got {levels}")
    lam, cap = _lambda(integrand.lam, p)
    if integrand.needs_guard():
        cert = guard(integrand.f, lam, p, max_depth=guard_depth or prec)
    else:
        e = integrand.f.integral_model(lam, p)[0]
        cert = GuardCertificate(0, e, -e, True)
    digits = prec + max(levels) + 6
    sums = riemann_sums(integrand, measure, p, levels, digits, cert)
    diag = richardson(sums, p)
    agree = tuple(b.agreement(a) for a, b in zip(diag, diag[1:]))
    value = diag[-1]
    if agree:
        value = value.with_absprec(agree[-1])
    if cap is not None and not value.is_zero:
        value = value.with_precision(cap)
    required = prec // 2 if required is None else required
    confirmed = value.precision if not value.is_zero else 0
    converged = bool(agree) and confirmed >= required
    return IntegralReport(value, tuple(levels), agree, converged, "riemann+richardson",
                          tuple(sums), cert.depth)


def volkenborn(integrand, levels=None, p: int = 5, prec: int = DEFAULT_PRECISION,
               **kw) -> IntegralReport:
    """``lim (1/p**N) sum_{a<p**N} g(a)`` (Haar distribution)."""
    return integrate(integrand, HAAR, p, prec, levels, **kw)


def fermionic(integrand, levels=None, p: int = 5, prec: int = DEFAULT_PRECISION,
              **kw) -> IntegralReport:
    """``lim sum_{a<p**N} (-1)**a g(a)`` (the measure mu_-1)."""
    return integrate(integrand, FERMIONIC, p, prec, levels, **kw)


# -- moment polynomials ----------------------------------------------------------------

def _moment(measure, m, lam, f, p, prec, levels):
    if not isinstance(lam, PadicNumber):
        exact = exact_moment(f, m, lam, measure)
        if exact is not None:
            return from_rational(exact, p, prec)
    return integrate(MomentIntegrand(f, lam, m), measure, p, prec, levels).value


def bernoulli_f(m: int, lam, f: AnalyticFunction, p: int = 5, prec: int = DEFAULT_PRECISION,
                levels=None) -> PadicNumber:
    """``B_m^f(lam) = int (lam + f(a))**m da`` (Volkenborn)."""
    return _moment(HAAR, m, lam, f, p, prec, levels)


def euler_f(m: int, lam, f: AnalyticFunction, p: int = 5, prec: int = DEFAULT_PRECISION,
            levels=None) -> PadicNumber:
    """``E_m^f(lam) = int (lam + f(a))**m dmu_-1(a)``."""
    return _moment(FERMIONIC, m, lam, f, p, prec, levels)


def bernoulli_f_exact(m: int, lam, f: AnalyticFunction) -> Fraction:
    out = exact_moment(f, m, lam, HAAR)
    if out is None:
        raise DomainError("exact moments need a polynomial f")
    return out


def euler_f_exact(m: int, lam, f: AnalyticFunction) -> Fraction:
    out = exact_moment(f, m, lam, FERMIONIC)
    if out is None:
        raise DomainError("exact moments need a polynomial f")
    return out


@lru_cache(maxsize=256)
def moments_at(f: AnalyticFunction, u: Fraction, measure: str, count: int,
               p: int = 5, prec: int = DEFAULT_PRECISION):
    """``int (u + f(a))**m`` for ``m < count``: Fractions when exact, PadicNumbers otherwise."""
    if f.is_polynomial:
        return tuple(exact_moment(f, m, u, measure) for m in range(count))
    return tuple(integrate(MomentIntegrand(f, u, m), measure, p, prec).value
                 for m in range(count))
