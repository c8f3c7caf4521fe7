"""Interpolating functions f on Z_p, the built-in spectrum catalog and Mahler
interpolation of eigenvalue sequences.

Every :class:`AnalyticFunction` is locally analytic on Z_p by construction:
polynomials, reciprocals ``1/q`` whose denominator has constant norm on Z_p,
and finite Mahler series (which are polynomials in disguise).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Callable

from .errors import DomainError, NotInterpolableError, ParseError, PoleError
from .padic import (DEFAULT_PRECISION, PadicNumber, check_prime, from_rational,
                    to_fraction, vp_rational)

POLYNOMIAL, RECIPROCAL, MAHLER = "polynomial", "reciprocal", "mahler"


# -- exact polynomial helpers (coefficient lists, constant term first) ----------

def poly_trim(a) -> tuple[Fraction, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_add(a, b) -> tuple[Fraction, ...]:
    n = max(len(a), len(b))
    return poly_trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                     for i in range(n))


def poly_mul(a, b) -> tuple[Fraction, ...]:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_eval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def binomial_basis_poly(n: int) -> tuple[Fraction, ...]:
    """Power-basis coefficients of ``binom(x, n)``."""
    out: tuple[Fraction, ...] = (Fraction(1),)
    for i in range(n):
        out = poly_mul(out, (Fraction(-i, i + 1), Fraction(1, i + 1)))
    return out


def mahler_to_power(c) -> tuple[Fraction, ...]:
    out: tuple[Fraction, ...] = ()
    for n, cn in enumerate(c):
        if cn:
            out = poly_add(out, tuple(cn * b for b in binomial_basis_poly(n)))
    return out


def _min_valuation(coeffs, p: int):
    vals = [vp_rational(c, p) for c in coeffs if c]
    return min(vals) if vals else None


# -- analytic functions ---------------------------------------------------------

@dataclass(frozen=True)
class AnalyticFunction:
    """A locally analytic f on Z_p.

    ``coefficients`` are power-basis coefficients (polynomial kind), the
    coefficients of the denominator ``q`` (reciprocal kind, ``f = 1/q``; the
    same tuple is exposed as ``pole_guard``), or Mahler coefficients ``c_n``
    (mahler kind, ``f(x) = sum c_n binom(x, n)``).
    """

    kind: str
    coefficients: tuple[Fraction, ...]
    name: str = ""
    reciprocal_convention: bool = False

    def __post_init__(self):
        if self.kind not in (POLYNOMIAL, RECIPROCAL, MAHLER):
            raise DomainError(f"unknown function kind {self.kind!r}")
        object.__setattr__(self, "coefficients",
                           tuple(to_fraction(c) for c in self.coefficients))
        if self.kind == RECIPROCAL and not poly_trim(self.coefficients):
            raise DomainError("reciprocal of the zero polynomial")

    @classmethod
    def polynomial(cls, coeffs, name="") -> AnalyticFunction:
        return cls(POLYNOMIAL, tuple(coeffs), name or _poly_name("poly", coeffs))

    @classmethod
    def reciprocal(cls, denominator, name="") -> AnalyticFunction:
        return cls(RECIPROCAL, tuple(denominator), name or _poly_name("recip-poly", denominator))

    @classmethod
    def mahler(cls, coeffs, name="") -> AnalyticFunction:
        return cls(MAHLER, tuple(coeffs), name or "mahler")

    @property
    def pole_guard(self):
        return self.coefficients if self.kind == RECIPROCAL else None

    @property
    def is_polynomial(self) -> bool:
        return self.kind in (POLYNOMIAL, MAHLER)

    def power_coefficients(self) -> tuple[Fraction, ...]:
        """Power-basis coefficients of f (polynomial and mahler kinds)."""
        return _power_coefficients(self)

    # certificates --------------------------------------------------------

    def bound_exponent(self, p: int) -> int | None:
        """The integer ``mu`` with ``M = p**(-mu)``; ``None`` when f is identically 0.

        For polynomial-like kinds M is the largest coefficient norm in the power
        basis; for ``1/q`` it is the (constant) norm of ``1/q`` on Z_p.
        """
        if self.kind == RECIPROCAL:
            return -self.certify(p)
        return _min_valuation(self.power_coefficients(), p)

    def bound_M(self, p: int) -> Fraction:
        mu = self.bound_exponent(p)
        return Fraction(0) if mu is None else Fraction(p) ** (-mu)

    def certify(self, p: int) -> int:
        """For ``f = 1/q``: check ``q`` has constant norm on Z_p; return ``v`` with |q| = p^-v.

        Writing ``q = p**v * r`` with ``r`` primitive, the norm is constant
        exactly when ``r`` has no root modulo ``p``.
        """
        if self.kind != RECIPROCAL:
            return 0
        return _certify_reciprocal(self.coefficients, p)

    # evaluation ----------------------------------------------------------

    def __call__(self, a):
        return self.evaluate(a)

    def evaluate(self, a):
        """f(a) for a in Z_p: exact for rationals, tracked precision for PadicNumbers."""
        if isinstance(a, PadicNumber):
            if not a.is_zero and a.valuation < 0:
                raise DomainError("f is only defined on Z_p (val(a) >= 0)")
            if self.kind == RECIPROCAL:
                self.certify(a.prime)
                return 1 / poly_eval(self.coefficients, a)
            return poly_eval(self.power_coefficients(), a)
        a = to_fraction(a)
        if self.kind == RECIPROCAL:
            d = poly_eval(self.coefficients, a)
            if d == 0:
                raise PoleError(f"f = 1/q has a pole at a = {a}")
            return 1 / d
        if self.kind == MAHLER and a.denominator == 1 and a >= 0:
            n = int(a)
            return sum((c * comb(n, k) for k, c in enumerate(self.coefficients)), Fraction(0))
        return poly_eval(self.power_coefficients(), a)

    def integral_model(self, lam: Fraction, p: int):
        """Write ``lam + f(a) = p**(-e) * P(a) / Q(a)`` with P, Q p-integral.

        Returns ``(e, P, Q)`` where P is primitive and Q (``None`` for the
        polynomial kinds) takes unit values on all of Z_p.
        """
        return _integral_model(self, to_fraction(lam), p)

    def residues(self, lam: Fraction, p: int, count: int, K: int) -> tuple[int, ...]:
        """``P(a)/Q(a) mod p**K`` for ``a = 0 .. count-1``."""
        return _residue_table(self, to_fraction(lam), p, count, K)

    def spec(self) -> str:
        return self.name


def _poly_name(prefix, coeffs):
    return prefix + ":" + ",".join(str(to_fraction(c)) for c in coeffs)


@lru_cache(maxsize=None)
def _power_coefficients(f: AnalyticFunction):
    if f.kind == POLYNOMIAL:
        return poly_trim(f.coefficients)
    if f.kind == MAHLER:
        return mahler_to_power(f.coefficients)
    raise DomainError("1/q has no power-basis expansion on Z_p")


@lru_cache(maxsize=None)
def _certify_reciprocal(q, p):
    check_prime(p)
    v = _min_valuation(q, p)
    scaled = [c / Fraction(p) ** v for c in q]
    mod = [(c.numerator * pow(c.denominator, -1, p)) % p for c in scaled]
    for a in range(p):
        if poly_eval(mod, a) % p == 0:
            raise PoleError(
                f"denominator of f vanishes modulo {p} at a = {a}: f = 1/q is not "
                f"certified pole-free on Z_{p}")
    return v


@lru_cache(maxsize=4096)
def _integral_model(f: AnalyticFunction, lam: Fraction, p: int):
    if f.kind == RECIPROCAL:
        vq = f.certify(p)
        r = tuple(c / Fraction(p) ** vq for c in f.coefficients)
        # lam + 1/q = (lam * p^vq * r + 1) / (p^vq * r)
        num = poly_add(tuple(lam * Fraction(p) ** vq * c for c in r), (Fraction(1),))
        t = _min_valuation(num, p)
        if t is None:
            raise DomainError("lam + f is identically zero")
        P = tuple(c / Fraction(p) ** t for c in num)
        return -(t - vq), P, r
    num = poly_add((lam,), f.power_coefficients())
    t = _min_valuation(num, p)
    if t is None:
        raise DomainError("lam + f is identically zero")
    return -t, tuple(c / Fraction(p) ** t for c in num), None


def _mod_coeffs(coeffs, p, K):
    mod = p**K
    return [(c.numerator * pow(c.denominator, -1, mod)) % mod for c in coeffs]


@lru_cache(maxsize=64)
def _residue_table(f: AnalyticFunction, lam: Fraction, p: int, count: int, K: int):
    e, P, Q = _integral_model(f, lam, p)
    mod = p**K
    Pm = _mod_coeffs(P, p, K)[::-1]
    Qm = _mod_coeffs(Q, p, K)[::-1] if Q is not None else None
    out = []
    for a in range(count):
        x = 0
        for c in Pm:
            x = (x * a + c) % mod
        if Qm is not None:
            y = 0
            for c in Qm:
                y = (y * a + c) % mod
            x = x * pow(y, -1, mod) % mod
        out.append(x)
    return tuple(out)


# -- guard: -lambda not in the value set of f -----------------------------------

@dataclass(frozen=True)
class GuardCertificate:
    """Outcome of the residue screen for ``lam + f(a) != 0`` on Z_p.

    ``depth`` is the smallest k with ``P(a) != 0 mod p^k`` for every residue,
    so ``v(lam + f(a)) <= depth - 1 - e`` on all of Z_p.
    """

    depth: int
    scale: int
    max_valuation: int
    trivial: bool


def guard(f: AnalyticFunction, lam, p: int, max_depth: int = DEFAULT_PRECISION,
          max_residues: int = 20000) -> GuardCertificate:
    """Certify ``-lam`` is outside ``f(Z_p)`` by Hensel-style residue refinement."""
    from .errors import GuardError

    lam = to_fraction(lam)
    e, P, _ = f.integral_model(lam, p)
    mu = f.bound_exponent(p)
    if lam != 0 and (mu is None or vp_rational(lam, p) < mu):
        # |lam| > M: P(a) is a unit everywhere
        return GuardCertificate(1, e, -e, True)
    live = [0]
    step = 1
    for k in range(1, max_depth + e + 1):
        mod = p**k
        Pm = _mod_coeffs(P, p, k)[::-1]
        nxt = []
        for r in live:
            for j in range(p):
                a = r + j * step
                x = 0
                for c in Pm:
                    x = (x * a + c) % mod
                if x == 0:
                    nxt.append(a)
        step *= p
        if not nxt:
            return GuardCertificate(k, e, k - 1 - e, False)
        if len(nxt) > max_residues:
            raise GuardError(
                f"guard screen exceeded {max_residues} live residues at depth {k}",
                residue=nxt[0], depth=k)
        live = nxt
    raise GuardError(
        f"-lambda may lie in f(Z_{p}): lambda + f(a) vanishes modulo "
        f"{p}^{max_depth} at a = {live[0]} (residue mod {p}^{max_depth + e})",
        residue=live[0], depth=max_depth + e)


# -- spectra --------------------------------------------------------------------

@dataclass(frozen=True)
class Spectrum:
    name: str
    eigenvalue: Callable[[int], Fraction]
    normalization_note: str = ""
    length: int | None = None

    def values(self, n_max: int) -> list[Fraction]:
        if self.length is not None and n_max >= self.length:
            raise DomainError(f"spectrum {self.name!r} has only {self.length} eigenvalues")
        return [to_fraction(self.eigenvalue(n)) for n in range(n_max + 1)]


def spectrum_from_values(values, name="data") -> Spectrum:
    vals = tuple(to_fraction(v) for v in values)
    return Spectrum(name, vals.__getitem__, "user-supplied eigenvalues", len(vals))


def read_spectrum_file(path) -> Spectrum:
    """One rational per line; blank lines and ``#`` comments are skipped."""
    vals = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vals.append(Fraction(line))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{path}:{lineno}: not a rational: {line!r}", 0) from exc
    if not vals:
        raise DomainError(f"{path}: no eigenvalues")
    return spectrum_from_values(vals, name=str(path))


IDENTITY = AnalyticFunction.polynomial((0, 1), "identity")
SQUARE = AnalyticFunction.polynomial((0, 0, 1), "square")
OSCILLATOR = AnalyticFunction.polynomial((Fraction(1, 2), 1), "oscillator")
HYDROGEN_G = AnalyticFunction(POLYNOMIAL, (Fraction(0), Fraction(0), Fraction(1)),
                              "hydrogen", reciprocal_convention=True)

_CATALOG = {
    "integer": (Spectrum("integer", Fraction, "lambda_n = n"), IDENTITY),
    "barrier": (Spectrum("barrier", lambda n: Fraction(n * n),
                         "infinite barrier, E_n proportional to n^2; factor pi^2 hbar^2/(8 m b^2) dropped"),
                SQUARE),
    "oscillator": (Spectrum("oscillator", lambda n: Fraction(2 * n + 1, 2),
                            "harmonic oscillator, E_n = (n + 1/2) hbar omega; hbar omega dropped"),
                   OSCILLATOR),
    "hydrogen": (Spectrum("hydrogen", lambda n: Fraction(n * n),
                          "hydrogen, E_n proportional to -1/n^2; constants and sign dropped and "
                          "the reciprocal 1/E_n ~ n^2 is used, since 1/a^2 has a pole at a = 0"),
                 HYDROGEN_G),
}


def catalog(name: str) -> tuple[Spectrum, AnalyticFunction]:
    try:
        return _CATALOG[name]
    except KeyError:
        raise DomainError(f"unknown catalog model {name!r}; choose from {sorted(_CATALOG)}") from None


def catalog_names() -> list[str]:
    return list(_CATALOG)


def _parse_coeffs(text: str, spec: str):
    try:
        coeffs = tuple(Fraction(c.strip()) for c in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coefficient list in {spec!r}", spec.find(":") + 1) from exc
    return coeffs


def parse_function(spec: str, p: int | None = None, N: int = DEFAULT_PRECISION) -> AnalyticFunction:
    """Build f from a spec string.

    ``identity``, ``square``, ``oscillator``, a catalog model name,
    ``poly:c0,c1,...``, ``recip-poly:c0,c1,...`` or ``mahler:<file>`` (a
    spectrum file whose Mahler interpolation becomes f).
    """
    spec = spec.strip()
    if spec == "identity":
        return IDENTITY
    if spec == "square":
        return SQUARE
    if spec == "oscillator":
        return OSCILLATOR
    if spec in _CATALOG:
        return _CATALOG[spec][1]
    head, _, rest = spec.partition(":")
    if head == "poly" and rest:
        return AnalyticFunction.polynomial(_parse_coeffs(rest, spec), spec)
    if head == "recip-poly" and rest:
        return AnalyticFunction.reciprocal(_parse_coeffs(rest, spec), spec)
    if head == "mahler" and rest:
        sp = read_spectrum_file(rest)
        exp = mahler_coeffs(sp, sp.length - 1, p or 5, N)
        return exp.as_function(name=spec)
    raise ParseError(f"unknown function spec {spec!r}", 0)


# -- Mahler interpolation -------------------------------------------------------

def forward_differences(values) -> list[Fraction]:
    """``c_n = sum_i (-1)**(n-i) binom(n, i) values[i]``, via the difference table."""
    row = [to_fraction(v) for v in values]
    out = []
    while row:
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return out


@dataclass(frozen=True)
class AnalyticityVerdict:
    radius: Fraction
    verdict: str            # certified-analytic | not-analytic | inconclusive
    witness: int | None
    weighted_norms: tuple[Fraction, ...]

    @property
    def certified(self) -> bool:
        return self.verdict == "certified-analytic"


@dataclass(frozen=True)
class MahlerExpansion:
    prime: int
    precision: int
    exact: tuple[Fraction, ...]
    coefficients: tuple[PadicNumber, ...]
    norms: tuple[Fraction, ...]
    continuity_ok: bool

    @property
    def n_max(self) -> int:
        return len(self.exact) - 1

    def tail_window(self) -> range:
        n = len(self.exact)
        return range(n - max(1, n // 4), n)

    def analyticity(self, r=None) -> AnalyticityVerdict:
        return analyticity_test(self, r)

    def as_function(self, name="mahler") -> AnalyticFunction:
        if not self.continuity_ok:
            raise NotInterpolableError(_not_interpolable(self))
        return AnalyticFunction.mahler(poly_trim(self.exact), name)

    def __call__(self, x):
        return mahler_eval(self, x)


def _not_interpolable(exp: MahlerExpansion) -> str:
    worst = max(exp.tail_window(), key=lambda n: exp.norms[n])
    return (f"Mahler coefficients do not decay: |c_{worst}|_{exp.prime} = {exp.norms[worst]} "
            f"exceeds {exp.prime}^-{exp.precision} in the final quarter of the computed "
            f"range; the sequence is not certified to extend continuously to Z_{exp.prime}")


def mahler_coeffs(spec, n_max: int, p: int = 5, N: int = DEFAULT_PRECISION) -> MahlerExpansion:
    """Mahler coefficients of the eigenvalue sequence up to ``n_max``.

    ``spec`` is a :class:`Spectrum` or a plain sequence of rationals.
    ``continuity_ok`` holds iff ``|c_n|_p <= p**-N`` across the final quarter
    of the computed coefficients.
    """
    check_prime(p)
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    values = spec.values(n_max) if isinstance(spec, Spectrum) else list(spec)[: n_max + 1]
    exact = tuple(forward_differences(values))
    coeffs = tuple(from_rational(c, p, N) for c in exact)
    norms = tuple(Fraction(0) if c == 0 else Fraction(p) ** (-vp_rational(c, p)) for c in exact)
    threshold = Fraction(p) ** (-N)
    n = len(exact)
    ok = all(norms[i] <= threshold for i in range(n - max(1, n // 4), n))
    return MahlerExpansion(p, N, exact, coeffs, norms, ok)


def mahler_eval(exp: MahlerExpansion, x):
    """Evaluate ``sum c_n binom(x, n)``; exact at integers, tracked at PadicNumbers."""
    if not exp.continuity_ok:
        raise NotInterpolableError(_not_interpolable(exp))
    if isinstance(x, PadicNumber):
        if x.prime != exp.prime:
            raise DomainError(f"mixed primes {x.prime} and {exp.prime}")
        if not x.is_zero and x.valuation < 0:
            raise DomainError("Mahler series are evaluated on Z_p only")
        total = from_rational(0, exp.prime, exp.precision)
        b = from_rational(1, exp.prime, max(x.precision, exp.precision))
        for n, c in enumerate(exp.exact):
            if n:
                b = b * (x - (n - 1)) / n
            if c:
                total = total + b * c
        return total
    x = to_fraction(x)
    if x.denominator != 1 or x < 0:
        if vp_rational(x, exp.prime) < 0:
            raise DomainError("Mahler series are evaluated on Z_p only")
        return poly_eval(mahler_to_power(exp.exact), x)
    n = int(x)
    return sum((c * comb(n, k) for k, c in enumerate(exp.exact)), Fraction(0))


def radius_admissible(r, p: int) -> bool:
    """``0 < r < p**(-1/(p-1))``, decided exactly as ``r**(p-1) * p < 1``."""
    r = to_fraction(r)
    return r > 0 and r ** (p - 1) * p < 1


def analyticity_test(exp: MahlerExpansion, r=None) -> AnalyticityVerdict:
    """Evidence that ``|c_n| r**-n -> 0`` from the computed coefficients.

    Finite support is a proof; otherwise the weighted norms must be strictly
    decreasing across the final quarter and end below ``p**-N``.  A failed
    continuity test means not analytic.
    """
    p = exp.prime
    r = Fraction(1, p) if r is None else to_fraction(r)
    if not radius_admissible(r, p):
        raise DomainError(
            f"radius r = {r} must satisfy 0 < r < p^(-1/(p-1)) (checked as r^(p-1)*p < 1)")
    weighted = tuple(nm / r**n for n, nm in enumerate(exp.norms))
    window = exp.tail_window()
    if all(exp.exact[n] == 0 for n in window):
        support = max((n for n, c in enumerate(exp.exact) if c), default=-1)
        return AnalyticityVerdict(r, "certified-analytic", support + 1, weighted)
    if not exp.continuity_ok:
        worst = max(window, key=lambda n: exp.norms[n])
        return AnalyticityVerdict(r, "not-analytic", worst, weighted)
    w = [weighted[n] for n in window]
    if all(a > b for a, b in zip(w, w[1:])) and w[-1] <= Fraction(p) ** (-exp.precision):
        return AnalyticityVerdict(r, "certified-analytic", window[0], weighted)
    return AnalyticityVerdict(r, "inconclusive", None, weighted)
