"""p-adic log-Gamma functions attached to f: derivatives at ``s = 0`` of the
zeta functions, scaled by ``omega_v(lam)``.

Three independent routes:

* ``integral``: ``int (lam + f)(log_p(lam + f) - 1) da`` (hurwitz) or
  ``-int (lam + f) log_p(lam + f) dmu_-1`` (euler), by the Riemann-sum engine;
* ``stirling``: the expansion in ``1/lam`` whose coefficients are moments of f;
* ``s-derivative``: difference quotients of the series-route zeta values at
  ``s = h`` and ``s = 0``, refined by one Richardson step.

All logarithms use the Iwasawa branch (``log_p p = 0``), so for ``lam = p**v u``
the ``log_p lam`` term only sees ``<lam>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import DomainError, HypothesisError, RouteDisagreement
from .functions import log_p
from .integration import FERMIONIC, HAAR, LogGammaIntegrand, integrate, moments_at
from .padic import DEFAULT_PRECISION, PadicNumber, check_prime, from_rational, vp_rational
from .spectra import IDENTITY, AnalyticFunction, guard
from .zeta import (EULER, HURWITZ, LAMBDA_HYPOTHESIS, MARGIN, _finalise, _measure,
                   as_lambda, lambda_gap, omega_v_rational, series_integral)

ROUTE_NAMES = ("integral", "stirling", "s-derivative")
DEFAULT_ROUTES = ("integral", "stirling")


@dataclass(frozen=True)
class LogGammaResult:
    value: PadicNumber
    routes_run: tuple[str, ...]
    pairwise_agreement: dict
    values: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)

    @property
    def agreement(self) -> int | None:
        return min(self.pairwise_agreement.values()) if self.pairwise_agreement else None


def _require_gap(f, lam, p):
    delta = lambda_gap(f, lam, p)
    if delta is None:
        raise HypothesisError(f"{LAMBDA_HYPOTHESIS} (lambda = {lam}, M = {f.bound_M(p)})",
                              hypothesis=LAMBDA_HYPOTHESIS)
    return delta


def _floor_log(n: int, p: int) -> int:
    k = 0
    while n >= p:
        n //= p
        k += 1
    return k


def stirling_terms(kind: str, f: AnalyticFunction, n_max: int, p: int = 5,
                   prec: int = DEFAULT_PRECISION) -> list:
    """``(-1)**(n+1) / (n (n+1)) * I_{n+1}(0)`` for ``n = 1 .. n_max``.

    ``I_m(0)`` is ``B_m^f(0)`` (hurwitz) or ``E_m^f(0)`` (euler).  Exact
    Fractions for polynomial f, PadicNumbers otherwise.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    mom = moments_at(f, Fraction(0), _measure(kind), n_max + 2, p, prec)
    out = []
    for n in range(1, n_max + 1):
        c = Fraction((-1) ** (n + 1), n * (n + 1))
        out.append(mom[n + 1] * c)
    return out


def stirling_route(kind: str, lam: Fraction, f: AnalyticFunction, p: int, prec: int):
    """Stirling-type expansion, truncated where the tail bound passes the target."""
    delta = _require_gap(f, lam, p)
    measure = _measure(kind)
    wprec = prec + MARGIN
    c0 = 0 if measure == FERMIONIC else (-1 if f.is_polynomial else -2)
    mu = f.bound_exponent(p)
    v_lam = vp_rational(lam, p)
    target = v_lam + wprec
    if mu is None:
        n_max, tail = 1, None
    else:
        # term n has valuation >= c0 + mu + n*delta - floor(log_p(n+1)), which is
        # non-decreasing in n once delta >= 1
        def bound(n):
            return c0 + mu + n * delta - _floor_log(n + 1, p)
        n_max = 1
        while bound(n_max + 1) < target:
            n_max += 1
        tail = bound(n_max + 1)
    coeffs = stirling_terms(kind, f, n_max, p, wprec + 2)
    mom = moments_at(f, Fraction(0), measure, 2, p, wprec + 2)
    first = mom[1]
    # I_1(lam) = lam + I_1(0) since the total mass is 1
    lead = lam + first
    rational = all(isinstance(c, Fraction) for c in coeffs) and isinstance(first, Fraction)
    lam_p = from_rational(lam, p, wprec)
    if rational:
        series = first + sum((c / lam**n for n, c in enumerate(coeffs, 1)), Fraction(0))
        S = _to_padic(series, p, wprec, tail)
    else:
        S = _as_p(first, p, wprec)
        for n, c in enumerate(coeffs, 1):
            S = S + _as_p(c, p, wprec) / lam_p**n
        if tail is not None:
            S = S.with_absprec(tail)
    L = log_p(lam_p)
    lead_p = _as_p(lead, p, wprec)
    if kind == HURWITZ:
        value = S + lead_p * (L - 1)
    else:
        value = -S - lead_p * L
    return value, {"terms": n_max, "tail_valuation": tail, "delta": delta}


def _as_p(x, p, n):
    if isinstance(x, PadicNumber):
        return x
    return from_rational(x, p, n) if x != 0 else PadicNumber.zero(p, 10**5)


def _to_padic(x: Fraction, p: int, n: int, tail) -> PadicNumber:
    if x == 0:
        return PadicNumber.zero(p, n if tail is None else tail)
    v = vp_rational(x, p)
    target = v + n if tail is None else min(tail, v + n)
    if target <= v:
        return PadicNumber.zero(p, target)
    return from_rational(x, p, target - v)


def integral_route(kind: str, lam: Fraction, f: AnalyticFunction, p: int, prec: int,
                   levels=None):
    rep = integrate(LogGammaIntegrand(f, lam, kind), _measure(kind), p, prec, levels)
    return rep.value, {"levels": list(rep.levels_used),
                       "agreement_digits": list(rep.agreement_digits)}


def s_derivative_route(kind: str, lam: Fraction, f: AnalyticFunction, p: int, prec: int,
                       steps=(6, 7, 8)):
    """``omega_v(lam) * d/ds zeta(s, lam)`` at 0 from difference quotients.

    With ``D(h) = (zeta(h) - zeta(0)) / h = zeta'(0) + h zeta''(0)/2 + O(h**2)``
    the combination ``(D(h2) - r D(h1)) / (1 - r)``, ``r = h2/h1``, cancels the
    linear term.  The pair ``(p**6, p**8)`` gives the value; ``(p**7, p**8)``
    gives a second estimate that caps the declared precision.
    """
    _require_gap(f, lam, p)
    lo, mid, hi = steps
    work = prec + hi + MARGIN + 2

    def zeta_at(s):
        I, _ = series_integral(kind, s, lam, f, p, work)
        return I / (s - 1) if kind == HURWITZ else I

    z0 = zeta_at(0)
    D = {e: (zeta_at(p**e) - z0) / p**e for e in steps}

    def refine(e1, e2):
        r = p ** (e2 - e1)
        return (D[e2] - D[e1] * r) / (1 - r)

    best, check = refine(lo, hi), refine(mid, hi)
    est = best.with_absprec(min(best.absprec, best.agreement(check)))
    value = est * omega_v_rational(lam, p, work)
    return value, {"h_valuations": list(steps)}


_ROUTES = {"integral": integral_route, "stirling": stirling_route,
           "s-derivative": s_derivative_route}


def log_gamma(kind: str, lam, f: AnalyticFunction = IDENTITY, routes=DEFAULT_ROUTES,
              p: int = 5, prec: int = DEFAULT_PRECISION, levels=None) -> LogGammaResult:
    """log-Gamma of ``kind`` at lambda by every route in ``routes``; they must agree."""
    check_prime(p)
    _measure(kind)
    routes = tuple(routes)
    if not routes:
        raise DomainError("at least one route is required")
    for r in routes:
        if r not in ROUTE_NAMES:
            raise DomainError(f"unknown route {r!r}; use {', '.join(ROUTE_NAMES)}")
    lam, cap = as_lambda(lam, p)
    cert = guard(f, lam, p, max_depth=prec)
    certificates = {"M": str(f.bound_M(p)), "guard_depth": cert.depth}
    values, details = {}, {}
    for r in routes:
        if r == "integral":
            values[r], details[r] = integral_route(kind, lam, f, p, prec, levels)
        else:
            values[r], details[r] = _ROUTES[r](kind, lam, f, p, prec)
    pairwise = {}
    for a, b in combinations(routes, 2):
        agree = values[a].agreement(values[b])
        expected = min(values[a].absprec, values[b].absprec)
        if agree < expected:
            raise RouteDisagreement(
                f"log-Gamma routes {a} and {b} disagree: they agree to "
                f"O({p}^{agree}) but claim O({p}^{expected})", agreement=agree,
                expected=expected)
        pairwise[f"{a}/{b}"] = agree
    best = max(values.values(), key=lambda x: x.absprec)
    if pairwise:
        best = best.with_absprec(min(pairwise.values()))
    certificates.update(details)
    return LogGammaResult(_finalise(best, prec, cap), routes, pairwise, values, certificates)
