"""Spectral Hurwitz-type and Euler-type zeta functions over Q_p.

For an interpolating function f on Z_p and ``-lam`` outside ``f(Z_p)``::

    hurwitz_zeta(s, lam) = 1/(s-1) * int <lam + f(a)>**(1-s) da      (Haar)
    euler_zeta(s, lam)   =           int <lam + f(a)>**(1-s) dmu_-1(a)

Two independent evaluation routes are provided.  The *direct* route
integrates the definition (exactly when ``1 - s`` is a non-negative integer
and ``|lam|_p > M``, otherwise by extrapolated Riemann sums).  The *series*
route expands ``<lam + f(a)>**(1-s) = <lam>**(1-s) (1 + f(a)/lam)**(1-s)``
binomially and integrates term by term, which needs ``|lam|_p > M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, HypothesisError, PoleError, RouteDisagreement
from .functions import angle, binom, exp_p, log_p, pochhammer, teichmuller_table
from .integration import (FERMIONIC, HAAR, AnglePowerIntegrand, IntegralReport,
                          exact_moment, integrate, moments_at)
from .padic import (DEFAULT_PRECISION, PadicNumber, check_prime, from_rational,
                    to_fraction, vp_rational)
from .spectra import IDENTITY, AnalyticFunction, guard

HURWITZ, EULER = "hurwitz", "euler"
KINDS = (HURWITZ, EULER)
ROUTES = ("auto", "direct", "series")

LAMBDA_HYPOTHESIS = ("|lambda|_p > M, the bound on |f| over Z_p, is required for the "
                     "convergent expansion in powers of 1/lambda")
SHIFT_HYPOTHESIS = "|lambda/u|_p > 1 is required for the expansion around lambda + u"

DEFAULT_M_MAX = 24
# extra digits carried internally beyond the requested precision
MARGIN = 4


def _measure(kind: str) -> str:
    if kind == HURWITZ:
        return HAAR
    if kind == EULER:
        return FERMIONIC
    raise DomainError(f"unknown kind {kind!r}; use hurwitz or euler")


def as_exponent(s, p: int, prec: int = DEFAULT_PRECISION):
    """Normalise s to an ``int`` or a PadicNumber in Z_p.

    Over Q_p the disc ``|s|_p < p**((p-2)/(p-1))`` contains exactly Z_p, so
    nothing outside Z_p is admitted.
    """
    if isinstance(s, bool):
        raise TypeError("bool is not a valid s")
    if isinstance(s, PadicNumber):
        if s.prime != p:
            raise DomainError(f"mixed primes {s.prime} and {p}")
        if not s.is_zero and s.valuation < 0:
            raise DomainError(f"s must lie in Z_{p}; got valuation {s.valuation}")
        return s
    if isinstance(s, str):
        from .padic import _RATIONAL_RE, parse_padic
        if not _RATIONAL_RE.fullmatch(s.strip()):
            return as_exponent(parse_padic(s, p, prec), p, prec)
    q = to_fraction(s)
    if q.denominator == 1:
        return int(q)
    if q.denominator % p == 0:
        raise DomainError(f"s = {q} is not in Z_{p}")
    return from_rational(q, p, prec + MARGIN)


def as_lambda(lam, p: int):
    """Exact rational for lambda, with the relative-precision cap of a PadicNumber input."""
    if isinstance(lam, PadicNumber):
        if lam.prime != p:
            raise DomainError(f"mixed primes {lam.prime} and {p}")
        return lam.lift(), (None if lam.is_zero else lam.precision)
    if isinstance(lam, str):
        from .padic import _RATIONAL_RE, parse_padic
        if not _RATIONAL_RE.fullmatch(lam.strip()):
            return as_lambda(parse_padic(lam, p), p)
    return to_fraction(lam), None


def omega_v_rational(lam: Fraction, p: int, N: int) -> PadicNumber:
    """``omega_v(lam) = p**v(lam) * omega(unit)`` for a nonzero rational."""
    x = from_rational(lam, p, N)
    return PadicNumber(p, x.valuation, teichmuller_table(p, N)[x.unit % p], N)


def lambda_gap(f: AnalyticFunction, lam: Fraction, p: int, u: Fraction = Fraction(0)):
    """``delta = mu - v(lam)`` where ``max(|u|, M) = p**-mu``; None if the hypothesis fails.

    ``delta >= 1`` is exactly ``|lam|_p > max(|u|_p, M)``.  A zero f with
    ``u = 0`` gives ``delta = inf`` (encoded as a large int).
    """
    if lam == 0:
        return None
    mu = f.bound_exponent(p)
    if u != 0:
        vu = vp_rational(u, p)
        mu = vu if mu is None else min(mu, vu)
    if mu is None:
        return 10**6
    d = mu - vp_rational(lam, p)
    return d if d >= 1 else None


def _is_pole(kind, s) -> bool:
    if kind != HURWITZ:
        return False
    if isinstance(s, int):
        return s == 1
    return (s - 1).is_zero


# -- reports ---------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesReport:
    m_max: int
    tail_valuation: int | None      # None: the series terminated, no truncation error
    delta: int
    c0: int

    @property
    def exact(self) -> bool:
        return self.tail_valuation is None


@dataclass(frozen=True)
class ZetaQuery:
    s: object
    lam: object
    f: AnalyticFunction = IDENTITY
    kind: str = HURWITZ
    p: int = 5
    prec: int = DEFAULT_PRECISION
    route: str = "auto"
    m_max: int | None = None
    levels: tuple | None = None
    fast_path: bool = True
    guard_depth: int | None = None


@dataclass(frozen=True)
class ZetaResult:
    value: PadicNumber
    route: str
    report: object
    agreement: int | None
    certificates: dict = field(default_factory=dict)
    routes: dict = field(default_factory=dict)


# -- the two routes ----------------------------------------------------------------

def _angle_factor(lam: Fraction, k, p: int, n: int) -> PadicNumber:
    """``<lam>**k`` for k an int or a PadicNumber."""
    base = angle(from_rational(lam, p, n))
    if isinstance(k, int):
        return base**k
    return exp_p(k * log_p(base))


def series_integral(kind: str, s, lam: Fraction, f: AnalyticFunction, p: int, prec: int,
                    m_max: int | None = None, u: Fraction = Fraction(0)):
    """``<lam>**(1-s) * sum_m binom(1-s, m) * I_m(u) * lam**-m`` and its report.

    ``I_m(u)`` is ``int (u + f(a))**m`` against the measure of ``kind``.  For
    hurwitz this is ``(s-1) * zeta(s, lam + u)``; for euler it is the zeta value.
    Term m has valuation at least ``c0 + m * delta`` (``c0 = -1`` for the Haar
    distribution on polynomials, ``-2`` on reciprocals, ``0`` for mu_-1), which
    bounds the truncation error.
    """
    measure = _measure(kind)
    delta = lambda_gap(f, lam, p, u)
    if delta is None:
        if u != 0 and lam != 0 and vp_rational(lam, p) >= vp_rational(u, p):
            raise HypothesisError(f"series route refused: {SHIFT_HYPOTHESIS}",
                                  hypothesis=SHIFT_HYPOTHESIS)
        raise HypothesisError(
            f"series route refused at lambda = {lam}: {LAMBDA_HYPOTHESIS} "
            f"(M = {f.bound_M(p)})", hypothesis=LAMBDA_HYPOTHESIS)
    wprec = prec + MARGIN
    c0 = 0 if measure == FERMIONIC else (-1 if f.is_polynomial else -2)
    k = (1 - s) if isinstance(s, int) else 1 - s
    needed = max(1, -(-(wprec - c0) // delta))
    terms = max(DEFAULT_M_MAX, needed) if m_max is None else m_max
    if isinstance(k, int) and k >= 0 and terms >= k:
        terms, tail = k, None
    else:
        tail = c0 + (terms + 1) * delta
    mom = moments_at(f, u, measure, terms + 1, p, wprec + 2)
    if isinstance(k, int) and all(isinstance(x, Fraction) for x in mom):
        kq = Fraction(k)
        total = sum((binom(kq, m) * mom[m] / lam**m for m in range(terms + 1)), Fraction(0))
        if total == 0:
            S = PadicNumber.zero(p, wprec if tail is None else tail)
        else:
            v = vp_rational(total, p)
            target = v + wprec if tail is None else min(tail, v + wprec)
            S = (PadicNumber.zero(p, target) if target <= v
                 else from_rational(total, p, target - v))
    else:
        kp = k if isinstance(k, PadicNumber) else from_rational(k, p, wprec)
        lam_p = from_rational(lam, p, wprec + terms * abs(vp_rational(lam, p)) + 2)
        S = PadicNumber.zero(p, 10**5)
        inv_lam = 1 / lam_p
        power = from_rational(1, p, lam_p.precision)
        for m in range(terms + 1):
            if m:
                power = power * inv_lam
            if isinstance(mom[m], PadicNumber):
                S = S + binom(kp, m) * mom[m] * power
            elif mom[m] != 0:
                S = S + binom(kp, m) * from_rational(mom[m], p, wprec + 2) * power
        if tail is not None:
            S = S.with_absprec(tail)
        S = S.with_absprec(wprec + 2) if S.is_zero else S.with_precision(wprec)
    factor = _angle_factor(lam, k, p, wprec)
    return factor * S, SeriesReport(terms, tail, delta, c0)


def direct_integral(kind: str, s, lam: Fraction, f: AnalyticFunction, p: int, prec: int,
                    levels=None, fast_path: bool = True, guard_depth: int | None = None):
    """``int <lam + f(a)>**(1-s)`` from the definition.

    With ``|lam|_p > M`` every ``lam + f(a)`` shares ``omega_v(lam)``, so for
    ``1 - s = k >= 0`` the integrand is ``(lam + f(a))**k / omega_v(lam)**k``
    and the integral is an exact moment.  Otherwise the Riemann-sum engine runs.
    """
    measure = _measure(kind)
    wprec = prec + MARGIN
    k = (1 - s) if isinstance(s, int) else 1 - s
    if (fast_path and isinstance(k, int) and k >= 0 and f.is_polynomial
            and lambda_gap(f, lam, p) is not None):
        mom = exact_moment(f, k, lam, measure)
        w = omega_v_rational(lam, p, wprec)
        if mom == 0:
            value = PadicNumber.zero(p, wprec)
        else:
            value = from_rational(mom, p, wprec) / w**k
        return value, IntegralReport(value, (), (), True, "exact")
    rep = integrate(AnglePowerIntegrand(f, lam, k), measure, p, prec, levels,
                    guard_depth=guard_depth)
    return rep.value, rep


# -- public entry points -------------------------------------------------------------

def zeta(q: ZetaQuery) -> ZetaResult:
    """Evaluate the zeta function of kind ``q.kind`` by the requested route."""
    p = check_prime(q.p)
    if q.prec < 1:
        raise DomainError("precision must be >= 1")
    if q.route not in ROUTES:
        raise DomainError(f"unknown route {q.route!r}; use one of {ROUTES}")
    measure_kind = q.kind
    _measure(measure_kind)
    s = as_exponent(q.s, p, q.prec)
    lam, cap = as_lambda(q.lam, p)
    if _is_pole(measure_kind, s):
        raise PoleError("the Hurwitz-type zeta function has a simple pole at s = 1")
    cert = guard(q.f, lam, p, max_depth=q.guard_depth or q.prec)
    certificates = {"M": str(q.f.bound_M(p)), "guard_depth": cert.depth,
                    "guard_trivial": cert.trivial}
    series_ok = lambda_gap(q.f, lam, p) is not None
    if q.route == "series" and not series_ok:
        raise HypothesisError(
            f"series route refused at lambda = {lam}: {LAMBDA_HYPOTHESIS} "
            f"(M = {q.f.bound_M(p)})", hypothesis=LAMBDA_HYPOTHESIS)
    divisor = (s - 1) if measure_kind == HURWITZ else 1
    values, reports = {}, {}
    if q.route in ("direct", "auto"):
        I, rep = direct_integral(measure_kind, s, lam, q.f, p, q.prec, q.levels,
                                 q.fast_path, q.guard_depth)
        values["direct"], reports["direct"] = I / divisor, rep
    if q.route == "series" or (q.route == "auto" and series_ok):
        I, rep = series_integral(measure_kind, s, lam, q.f, p, q.prec, q.m_max)
        values["series"], reports["series"] = I / divisor, rep
        certificates["m_max"] = rep.m_max
        certificates["tail_valuation"] = rep.tail_valuation
    if not series_ok:
        certificates["series"] = "skipped: " + LAMBDA_HYPOTHESIS
    agreement = None
    if len(values) == 2:
        a, b = values["direct"], values["series"]
        agreement = a.agreement(b)
        expected = min(a.absprec, b.absprec)
        if agreement < expected:
            raise RouteDisagreement(
                f"direct and series routes disagree: they agree to O({p}^{agreement}) but "
                f"both claim O({p}^{expected})", agreement=agreement, expected=expected)
        best = a if a.absprec >= b.absprec else b
        value = best.with_absprec(agreement)
        route = "auto"
        report = reports
    else:
        (route, value), = values.items()
        report = reports[route]
    value = _finalise(value, q.prec, cap)
    return ZetaResult(value, route, report, agreement, certificates, values)


def _finalise(value: PadicNumber, prec: int, cap=None) -> PadicNumber:
    if value.is_zero:
        return value
    n = prec if cap is None else min(prec, cap)
    return value.with_precision(n)


def hurwitz_zeta(s, lam, f: AnalyticFunction = IDENTITY, p: int = 5,
                 prec: int = DEFAULT_PRECISION, **kw) -> ZetaResult:
    return zeta(ZetaQuery(s, lam, f, HURWITZ, p, prec, **kw))


def euler_zeta(s, lam, f: AnalyticFunction = IDENTITY, p: int = 5,
               prec: int = DEFAULT_PRECISION, **kw) -> ZetaResult:
    return zeta(ZetaQuery(s, lam, f, EULER, p, prec, **kw))


def _require_gap(f, lam, p, u=Fraction(0)):
    delta = lambda_gap(f, lam, p)
    if delta is None:
        raise HypothesisError(f"{LAMBDA_HYPOTHESIS} (lambda = {lam}, M = {f.bound_M(p)})",
                              hypothesis=LAMBDA_HYPOTHESIS)
    return delta


def _moment_value(kind, n, lam, f, p, prec):
    exact = exact_moment(f, n, lam, _measure(kind))
    if exact is not None:
        return exact
    return integrate_moment(kind, n, lam, f, p, prec)


def integrate_moment(kind, n, lam, f, p, prec):
    from .integration import MomentIntegrand
    return integrate(MomentIntegrand(f, lam, n), _measure(kind), p, prec).value


def special_value(kind: str, n: int, lam, f: AnalyticFunction = IDENTITY, p: int = 5,
                  prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """Closed form at ``s = 1 - n``: ``-B_n^f(lam) / (n omega_v(lam)**n)`` (hurwitz)
    or ``E_n^f(lam) / omega_v(lam)**n`` (euler)."""
    check_prime(p)
    if n < 1:
        raise DomainError("special values are indexed by n >= 1")
    lam, cap = as_lambda(lam, p)
    _require_gap(f, lam, p)
    wprec = prec + MARGIN
    mom = _moment_value(kind, n, lam, f, p, wprec)
    w = omega_v_rational(lam, p, wprec) ** n
    if kind == HURWITZ:
        mom = -mom / n if isinstance(mom, Fraction) else mom * Fraction(-1, n)
    value = (from_rational(mom, p, wprec) if isinstance(mom, Fraction) else mom) / w \
        if mom != 0 else PadicNumber.zero(p, wprec)
    return _finalise(value, prec, cap)


def positive_value_series(kind: str, n: int, lam, f: AnalyticFunction = IDENTITY,
                          p: int = 5, prec: int = DEFAULT_PRECISION,
                          m_max: int | None = None) -> PadicNumber:
    """Value at a positive integer ``s = n`` from the series written with ``omega_v``:

    ``omega_v(lam)**(n-1) / (n-1) * sum_m binom(1-n, m) B_m^f(0) lam**-(m+n-1)``
    (hurwitz, n >= 2) and ``omega_v(lam)**(n-1) * sum_m binom(1-n, m) E_m^f(0)
    lam**-(m+n-1)`` (euler, n >= 1).
    """
    check_prime(p)
    if kind == HURWITZ and n == 1:
        raise PoleError("the Hurwitz-type zeta function has a simple pole at s = 1")
    if n < 1:
        raise DomainError("positive_value_series needs n >= 1")
    lam, cap = as_lambda(lam, p)
    delta = _require_gap(f, lam, p)
    measure = _measure(kind)
    wprec = prec + MARGIN
    c0 = 0 if measure == FERMIONIC else (-1 if f.is_polynomial else -2)
    terms = m_max if m_max is not None else max(DEFAULT_M_MAX, -(-(wprec - c0) // delta))
    tail = c0 + (terms + 1) * delta
    mom = moments_at(f, Fraction(0), measure, terms + 1, p, wprec + 2)
    total = PadicNumber.zero(p, tail)
    for m in range(terms + 1):
        c = binom(Fraction(1 - n), m)
        if c and mom[m] != 0:
            x = mom[m] if isinstance(mom[m], PadicNumber) else from_rational(mom[m], p, wprec)
            total = total + x * c / from_rational(lam, p, wprec) ** m
    total = total.with_absprec(tail)
    w = omega_v_rational(lam, p, wprec) ** (n - 1)
    value = total * w / from_rational(lam, p, wprec) ** (n - 1)
    if kind == HURWITZ:
        value = value / (n - 1)
    return _finalise(value, prec, cap)


def shifted_series(kind: str, s, lam, u, f: AnalyticFunction = IDENTITY, p: int = 5,
                   prec: int = DEFAULT_PRECISION, n_max: int | None = None) -> PadicNumber:
    """Zeta at ``lam + u`` from the expansion around ``lam`` with moments taken at u."""
    check_prime(p)
    s = as_exponent(s, p, prec)
    lam, cap = as_lambda(lam, p)
    u, _ = as_lambda(u, p)
    if _is_pole(kind, s):
        raise PoleError("the Hurwitz-type zeta function has a simple pole at s = 1")
    if u != 0 and (lam == 0 or vp_rational(lam, p) >= vp_rational(u, p)):
        raise HypothesisError(f"{SHIFT_HYPOTHESIS} (lambda = {lam}, u = {u})",
                              hypothesis=SHIFT_HYPOTHESIS)
    _require_gap(f, lam, p)
    I, _ = series_integral(kind, s, lam, f, p, prec, n_max, u)
    value = I / (s - 1) if kind == HURWITZ else I
    return _finalise(value, prec, cap)


def lambda_derivative(kind: str, n: int, s, lam, f: AnalyticFunction = IDENTITY, p: int = 5,
                      prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """n-th derivative in lambda, for ``|lam|_p > M``.

    Differentiating ``<x>**(1-s)`` gives ``(1-s) <x>**(1-s) / x`` and every
    ``lam + f(a)`` shares ``omega_v(lam)``, hence

    * euler:   ``(-1)**n (s-1)_n / omega_v(lam)**n * euler_zeta(s+n, lam)``
    * hurwitz: ``(-1)**n (s)_n / omega_v(lam)**n * hurwitz_zeta(s+n, lam)``,
      where the prefactor ``1/(s-1)`` turns ``(s-1)_n`` into ``(s)_n``.  It is
      evaluated as ``(-1)**n (s)_{n-1} / omega_v**n * int <lam+f>**(1-s-n)``,
      which stays finite at ``s + n = 1``.
    """
    check_prime(p)
    if n < 1:
        raise DomainError("derivative order must be >= 1")
    s = as_exponent(s, p, prec)
    lam, cap = as_lambda(lam, p)
    _require_gap(f, lam, p)
    if _is_pole(kind, s):
        raise PoleError("the Hurwitz-type zeta function has a simple pole at s = 1")
    wprec = prec + MARGIN
    t = s + n
    I, _ = direct_integral(kind, t, lam, f, p, wprec) if isinstance(t, int) and t <= 1 \
        else series_integral(kind, t, lam, f, p, wprec)
    w = omega_v_rational(lam, p, wprec) ** n
    sign = -1 if n % 2 else 1
    if kind == HURWITZ:
        coeff = pochhammer(s, n - 1)
    else:
        coeff = pochhammer(s - 1, n)
    value = I * coeff * sign / w
    return _finalise(value, prec, cap)
