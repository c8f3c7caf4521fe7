"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from fractions import Fraction
from math import comb

import pytest

from oracles import bernoulli_number, bernoulli_poly, euler_poly, euler_zero, poly_power
from padic_zeta.errors import NotInterpolableError
from padic_zeta.functions import angle, angle_pow, exp_p, log_p, omega_v, teichmuller
from padic_zeta.integration import (FERMIONIC, HAAR, MomentIntegrand, bernoulli_f_exact,
                                    euler_f_exact, integrate)
from padic_zeta.loggamma import log_gamma
from padic_zeta.padic import from_rational
from padic_zeta.spectra import (IDENTITY, OSCILLATOR, SQUARE, AnalyticFunction, catalog,
                                catalog_names, mahler_coeffs, mahler_eval)
from padic_zeta.zeta import (EULER, HURWITZ, ZetaQuery, lambda_derivative, shifted_series,
                             zeta)

PRIMES = (5, 7)
FUNCTIONS = (IDENTITY, SQUARE, OSCILLATOR)


def lambdas(p):
    return (Fraction(1, p), Fraction(2, p), Fraction(1, p * p), Fraction(3, p))


def digits(x, ref):
    """Significant digits on which x agrees with ref (absolute digits if ref is 0)."""
    shift = 0 if ref.is_zero else ref.valuation
    return x.agreement(ref) - shift


def report(label, ok, elapsed, budget, detail):
    status = "PASS" if ok and elapsed < budget else "FAIL"
    print(f"{label} {status}: {detail} ({elapsed:.1f} s, budget {budget} s)")
    assert ok, detail
    assert elapsed < budget, f"{label} took {elapsed:.1f} s, budget {budget} s"


def _special_values(kind):
    worst, failures = None, []
    for p in PRIMES:
        for lam in lambdas(p):
            w = omega_v(lam, p, 40)
            for m in range(1, 9):
                res = zeta(ZetaQuery(1 - m, lam, IDENTITY, kind, p, 20, route="auto"))
                if kind == HURWITZ:
                    ref = from_rational(-bernoulli_poly(m, lam) / m, p, 40) / w**m
                else:
                    ref = from_rational(euler_poly(m, lam), p, 40) / w**m
                full = res.value.agreement(ref) >= res.value.absprec
                got = res.value.precision if not res.value.is_zero else res.value.absprec
                if not full or got < 16:
                    failures.append((p, lam, m))
                worst = got if worst is None else min(worst, got)
    return worst, failures


def test_c1_hurwitz_special_values():
    t0 = time.perf_counter()
    worst, failures = _special_values(HURWITZ)
    report("C1", not failures, time.perf_counter() - t0, 10,
           f"64 points, hurwitz zeta(1-m) = -B_m(lam)/(m omega_v^m), "
           f"min declared digits {worst}, failures {failures}")


def test_c2_euler_special_values():
    t0 = time.perf_counter()
    worst, failures = _special_values(EULER)
    report("C2", not failures, time.perf_counter() - t0, 10,
           f"64 points, euler zeta(1-m) = E_m(lam)/omega_v^m, "
           f"min declared digits {worst}, failures {failures}")


def test_c3_direct_and_series_routes_agree():
    t0 = time.perf_counter()
    worst, count, failures = None, 0, []
    s_values = [1 - m for m in range(1, 9)] + [2, 3]
    for kind in (HURWITZ, EULER):
        for p in PRIMES:
            for f in FUNCTIONS:
                for lam in lambdas(p):
                    for s in s_values:
                        direct = zeta(ZetaQuery(s, lam, f, kind, p, 20, route="direct",
                                                fast_path=False)).value
                        series = zeta(ZetaQuery(s, lam, f, kind, p, 20, route="series")).value
                        d = digits(direct, series)
                        count += 1
                        if d < 8:
                            failures.append((kind, p, f.name, lam, s, d))
                        worst = d if worst is None else min(worst, d)
    report("C3", not failures, time.perf_counter() - t0, 120,
           f"{count} points, Riemann sums (N <= 6) vs series, min agreement {worst} digits, "
           f"failures {failures}")


SHIFT_GRID = [
    # (kind, p, f, s, lam, u) with |lam/u|_p > 1 and |lam|_p > M
    (HURWITZ, 5, IDENTITY, 0, Fraction(1, 5), Fraction(1)),
    (HURWITZ, 5, SQUARE, -2, Fraction(1, 5), Fraction(3)),
    (HURWITZ, 5, OSCILLATOR, Fraction(1, 3), Fraction(2, 25), Fraction(1, 5)),
    (HURWITZ, 5, IDENTITY, 3, Fraction(1, 25), Fraction(7, 2)),
    (HURWITZ, 7, OSCILLATOR, 2, Fraction(1, 7), Fraction(2)),
    (HURWITZ, 7, SQUARE, Fraction(-1, 2), Fraction(3, 49), Fraction(1, 7)),
    (EULER, 5, IDENTITY, 0, Fraction(1, 25), Fraction(1, 5)),
    (EULER, 5, SQUARE, 1, Fraction(1, 5), Fraction(2)),
    (EULER, 5, OSCILLATOR, Fraction(2, 3), Fraction(4, 5), Fraction(1, 3)),
    (EULER, 7, IDENTITY, -3, Fraction(1, 7), Fraction(5)),
    (EULER, 7, OSCILLATOR, 2, Fraction(2, 49), Fraction(1, 7)),
    (EULER, 7, SQUARE, Fraction(1, 4), Fraction(1, 7), Fraction(3, 2)),
]


def test_c4_shifted_series():
    t0 = time.perf_counter()
    worst, failures = None, []
    for kind, p, f, s, lam, u in SHIFT_GRID:
        shifted = shifted_series(kind, s, lam, u, f, p, 16)
        direct = zeta(ZetaQuery(s, lam + u, f, kind, p, 16, route="series")).value
        d = digits(shifted, direct)
        if d < 10:
            failures.append((kind, p, f.name, s, lam, u, d))
        worst = d if worst is None else min(worst, d)
    report("C4", not failures, time.perf_counter() - t0, 30,
           f"{len(SHIFT_GRID)} points, shifted expansion vs zeta at lam + u, "
           f"min agreement {worst} digits, failures {failures}")


def test_c5_lambda_derivative_difference_quotients():
    t0 = time.perf_counter()
    worst_margin, count, failures = None, 0, []
    prec = 40
    cases = [(kind, p, f, s) for kind in (HURWITZ, EULER) for p, f in ((5, IDENTITY),
             (5, OSCILLATOR), (7, SQUARE)) for s in (-2, Fraction(1, 3), 2)]
    for kind, p, f, s in cases:
        lam = Fraction(1, p)

        def z(x):
            return zeta(ZetaQuery(s, x, f, kind, p, prec, route="series")).value

        z0 = z(lam)
        closed = {n: lambda_derivative(kind, n, s, lam, f, p, prec) for n in (1, 2)}
        for vh in (4, 6, 8):
            h = Fraction(p) ** vh
            hp = from_rational(h, p, prec)
            z1, z2 = z(lam + h), z(lam + 2 * h)
            quotients = {1: (z1 - z0) / hp, 2: (z2 - z1 * 2 + z0) / (hp * hp)}
            for n in (1, 2):
                d = digits(quotients[n], closed[n])
                count += 1
                margin = d - (vh - 2)
                if margin < 0:
                    failures.append((kind, p, f.name, s, n, vh, d))
                worst_margin = margin if worst_margin is None else min(worst_margin, margin)
    report("C5", not failures, time.perf_counter() - t0, 60,
           f"{count} checks, closed-form derivative vs difference quotients, "
           f"min digits - (val(h) - 2) = {worst_margin}, failures {failures}")


def test_c6_log_gamma_three_routes():
    t0 = time.perf_counter()
    worst, count = None, 0
    routes = ("integral", "stirling", "s-derivative")
    failures = []
    for kind in (HURWITZ, EULER):
        for p in PRIMES:
            for f in FUNCTIONS:
                for lam in (Fraction(1, p), Fraction(1, p * p)):
                    # a disagreement raises RouteDisagreement and fails the build
                    res = log_gamma(kind, lam, f, routes, p, 20)
                    ref = res.values["stirling"]
                    d = min(digits(res.values[a], res.values[b])
                            for a in routes for b in routes if a < b)
                    count += 1
                    if d < 8:
                        failures.append((kind, p, f.name, lam, d))
                    worst = d if worst is None else min(worst, d)
    report("C6", not failures, time.perf_counter() - t0, 120,
           f"{count} cases, integral/Stirling/s-derivative pairwise min agreement "
           f"{worst} digits, failures {failures}")


def test_c7_mahler_interpolation():
    t0 = time.perf_counter()
    problems = []
    for p in PRIMES:
        for name in catalog_names():
            spec, f = catalog(name)
            exp = mahler_coeffs(spec, 32, p, 20)
            if any(mahler_eval(exp, n) != spec.eigenvalue(n) for n in range(33)):
                problems.append(f"{name} round trip at p={p}")
            degree = len(f.power_coefficients()) - 1
            if any(c != 0 for c in exp.exact[degree + 1:]):
                problems.append(f"{name} not finitely supported at p={p}")
        growth = mahler_coeffs([Fraction(1, p**n) for n in range(33)], 32, p, 20)
        try:
            mahler_eval(growth, 3)
            problems.append(f"growth spectrum accepted at p={p}")
        except NotInterpolableError:
            pass
        if growth.continuity_ok or growth.analyticity().verdict != "not-analytic":
            problems.append(f"growth spectrum passes continuity at p={p}")
    report("C7", not problems, time.perf_counter() - t0, 5,
           f"catalog round trips n <= 32, finite support, growth spectrum rejected; "
           f"problems {problems}")


def _random_unit(rng, p):
    while True:
        a = Fraction(rng.randint(1, 10**8), rng.randint(1, 10**4))
        if a.numerator % p and a.denominator % p:
            return a


def _random_nonzero(rng, p):
    return _random_unit(rng, p) * Fraction(p) ** rng.randint(-3, 3)


def test_c8_function_layer_properties():
    t0 = time.perf_counter()
    N, cases = 20, 200
    counts = {}
    failures = []
    for p in PRIMES:
        rng = random.Random(1000 + p)
        one = from_rational(1, p, N)
        checks = {
            "omega multiplicativity": lambda a, b, s, t: (
                omega_v(a * b, p, N).rel_agreement(omega_v(a, p, N) * omega_v(b, p, N)) >= N
                and angle(a * b, p, N).rel_agreement(angle(a, p, N) * angle(b, p, N)) >= N),
            "omega^(p-1) = 1": lambda a, b, s, t: (
                (teichmuller(a * Fraction(p) ** -_v(a, p), p, N) ** (p - 1)).rel_agreement(one) >= N),
            "<a> = 1 mod p": lambda a, b, s, t: angle(a, p, N).residue(1) == 1,
            "angle_pow additivity": lambda a, b, s, t: (
                angle_pow(a, s + t, p, N).rel_agreement(
                    angle_pow(a, s, p, N) * angle_pow(a, t, p, N)) >= N - 1),
            "exp(log) on principal units": lambda a, b, s, t: (
                exp_p(log_p(angle(a, p, N)), p, N).rel_agreement(angle(a, p, N)) >= N - 1),
            "d<a>/da = <a>/a": lambda a, b, s, t: _derivative_ok(a, p),
        }
        for _ in range(cases):
            a, b = _random_nonzero(rng, p), _random_nonzero(rng, p)
            s = from_rational(_random_exponent(rng, p), p, N)
            t = from_rational(_random_exponent(rng, p), p, N)
            for name, check in checks.items():
                counts[(name, p)] = counts.get((name, p), 0) + 1
                if not check(a, b, s, t):
                    failures.append((name, p, a, b))
    ok = not failures and all(c >= 200 for c in counts.values())
    report("C8", ok, time.perf_counter() - t0, 30,
           f"{len(counts)} property/prime pairs x {cases} cases, failures {failures[:5]}")


def _v(a, p):
    from padic_zeta.padic import vp_rational
    return vp_rational(a, p)


def _random_exponent(rng, p):
    while True:
        q = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 50))
        if q.denominator % p:
            return q


def _derivative_ok(a, p):
    """(<a+h> - <a>)/h against <a>/a for |a|_p >= 1 and small h."""
    if _v(a, p) > 0:
        a = 1 / a
    vh = 6
    h = Fraction(p) ** (vh + max(0, -_v(a, p)))
    n = 30
    q = (angle(a + h, p, n) - angle(a, p, n)) / from_rational(h, p, n)
    ref = angle(a, p, n) / from_rational(a, p, n)
    return digits(q, ref) >= vh - 1


def test_c9_moment_identities():
    t0 = time.perf_counter()
    rng = random.Random(9)
    failures, count = [], 0
    for name in catalog_names():
        f = catalog(name)[1]
        coeffs = list(f.power_coefficients())
        at_zero = {}
        for measure, basis, exact in ((HAAR, bernoulli_number, bernoulli_f_exact),
                                      (FERMIONIC, euler_zero, euler_f_exact)):
            at_zero = [sum(c * basis(j) for j, c in enumerate(poly_power(coeffs, m)))
                       for m in range(9)]
            for _ in range(5):
                lam = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
                for n in range(9):
                    rhs = sum(comb(n, m) * at_zero[m] * lam ** (n - m) for m in range(n + 1))
                    count += 1
                    if exact(n, lam, f) != rhs:
                        failures.append((name, measure, lam, n))
    for m in range(13):
        count += 2
        if bernoulli_f_exact(m, 0, IDENTITY) != bernoulli_number(m):
            failures.append(("B", m))
        if euler_f_exact(m, 0, IDENTITY) != euler_zero(m):
            failures.append(("E", m))
        # the Riemann-sum engine reproduces the same rationals p-adically
        for measure, ref in ((HAAR, bernoulli_number(m)), (FERMIONIC, euler_zero(m))):
            rep = integrate(MomentIntegrand(IDENTITY, 0, m), measure, 5, 20, fast_path=False)
            if rep.value.agreement(from_rational(ref, 5, 40)) < rep.value.absprec:
                failures.append(("riemann", measure, m))
    report("C9", not failures, time.perf_counter() - t0, 30,
           f"{count} exact identities (binomial shift n <= 8, classical moments m <= 12), "
           f"failures {failures}")
