"""Elements of Q_p at finite precision.

A nonzero :class:`PadicNumber` stands for ``p**valuation * unit`` known modulo
``p**(valuation + precision)``; ``unit`` is reduced into ``[0, p**precision)``
and is prime to ``p``.  A zero carries only its absolute precision: it is
stored with ``unit == 0``, ``precision == 0`` and ``valuation`` equal to the
exponent ``M`` of its error term ``O(p^M)``.  In both cases
``valuation + precision`` is the absolute precision.

All arithmetic tracks absolute precision: sums are known to the smaller of
the two absolute precisions, products and quotients to the smaller of the two
relative precisions.  Nothing is silently padded.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import DomainError, ParseError, PrecisionError

# Absolute precision given to zeros that are exact (e.g. a coerced integer 0).
EXACT = 10**6

DEFAULT_PRIME = 5
DEFAULT_PRECISION = 20


@lru_cache(maxsize=None)
def is_odd_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p) -> int:
    if not is_odd_prime(p):
        raise DomainError(f"p must be an odd prime, got {p!r}")
    return p


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise DomainError("valuation of 0 is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rational(q, p: int) -> int:
    q = Fraction(q)
    return vp(q.numerator, p) - vp(q.denominator, p)


def to_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, Rational)):
        return Fraction(q)
    if isinstance(q, str):
        try:
            return Fraction(q.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {q!r}", 0) from exc
    raise TypeError(f"cannot interpret {type(q).__name__} as a rational")


@dataclass(frozen=True)
class PadicNumber:
    prime: int
    valuation: int
    unit: int
    precision: int

    def __post_init__(self):
        p = self.prime
        if self.unit == 0:
            if self.precision != 0:
                raise DomainError("a zero must be stored with precision 0")
        else:
            if self.precision < 1:
                raise DomainError("precision must be positive")
            if not 0 < self.unit < p**self.precision or self.unit % p == 0:
                raise DomainError("unit is not in canonical form")

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, p: int, absprec: int) -> PadicNumber:
        return cls(p, absprec, 0, 0)

    @classmethod
    def from_scaled(cls, p: int, v: int, n: int, absprec: int) -> PadicNumber:
        """The value ``p**v * n`` known modulo ``p**absprec``, canonicalised."""
        if absprec <= v:
            return cls.zero(p, absprec)
        n %= p ** (absprec - v)
        if n == 0:
            return cls.zero(p, absprec)
        t = 0
        while n % p == 0:
            n //= p
            t += 1
        v += t
        return cls(p, v, n, absprec - v)

    # -- basic properties -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def absprec(self) -> int:
        return self.valuation + self.precision

    def digits(self) -> list[int]:
        """Little-endian base-p digits of the unit."""
        out, u = [], self.unit
        for _ in range(self.precision):
            u, d = divmod(u, self.prime)
            out.append(d)
        return out

    def lift(self) -> Fraction:
        """The rational ``p**v * unit`` (one representative of the class)."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.prime) ** self.valuation

    def residue(self, k: int) -> int:
        """The integer in ``[0, p**k)`` congruent to this value (requires val >= 0)."""
        if k > self.absprec:
            raise PrecisionError(f"only known modulo p^{self.absprec}", required=k)
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise DomainError("not a p-adic integer")
        return (self.unit * self.prime**self.valuation) % self.prime**k

    def with_absprec(self, absprec: int) -> PadicNumber:
        """Forget digits beyond ``absprec`` (never adds precision)."""
        if absprec >= self.absprec:
            return self
        if self.is_zero:
            return PadicNumber.zero(self.prime, absprec)
        return PadicNumber.from_scaled(self.prime, self.valuation, self.unit, absprec)

    def with_precision(self, precision: int) -> PadicNumber:
        if self.is_zero:
            return self
        return self.with_absprec(self.valuation + precision)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> PadicNumber:
        if isinstance(other, PadicNumber):
            if other.prime != self.prime:
                raise DomainError(f"mixed primes {self.prime} and {other.prime}")
            return other
        q = to_fraction(other)
        if q == 0:
            return PadicNumber.zero(self.prime, EXACT)
        if self.absprec >= EXACT // 2:
            n = max(self.precision, DEFAULT_PRECISION)
        else:
            n = max(self.precision, self.absprec - vp_rational(q, self.prime), 1)
        return from_rational(q, self.prime, n)

    def __add__(self, other):
        try:
            y = self._coerce(other)
        except TypeError:
            return NotImplemented
        p = self.prime
        a = min(self.absprec, y.absprec)
        if self.is_zero and y.is_zero:
            return PadicNumber.zero(p, a)
        if self.is_zero:
            return y.with_absprec(a)
        if y.is_zero:
            return self.with_absprec(a)
        v = min(self.valuation, y.valuation)
        if v >= a:
            return PadicNumber.zero(p, a)
        n = self.unit * p ** (self.valuation - v) + y.unit * p ** (y.valuation - v)
        return PadicNumber.from_scaled(p, v, n, a)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        return PadicNumber(self.prime, self.valuation,
                           (-self.unit) % self.prime**self.precision, self.precision)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            y = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other):
        try:
            y = self._coerce(other)
        except TypeError:
            return NotImplemented
        return y + (-self)

    def __mul__(self, other):
        try:
            y = self._coerce(other)
        except TypeError:
            return NotImplemented
        p = self.prime
        if self.is_zero and y.is_zero:
            return PadicNumber.zero(p, min(self.absprec + y.absprec, EXACT))
        if self.is_zero:
            return PadicNumber.zero(p, min(self.absprec + y.valuation, EXACT))
        if y.is_zero:
            return PadicNumber.zero(p, min(y.absprec + self.valuation, EXACT))
        n = min(self.precision, y.precision)
        return PadicNumber(p, self.valuation + y.valuation,
                           (self.unit * y.unit) % p**n, n)

    __rmul__ = __mul__

    def inverse(self) -> PadicNumber:
        if self.is_zero:
            raise PrecisionError(
                f"cannot invert a value indistinguishable from 0 modulo "
                f"{self.prime}^{self.absprec}; absolute precision above "
                f"{self.absprec} is required", required=self.absprec + 1)
        n = self.precision
        return PadicNumber(self.prime, -self.valuation,
                           pow(self.unit, -1, self.prime**n), n)

    def __truediv__(self, other):
        try:
            y = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * y.inverse()

    def __rtruediv__(self, other):
        try:
            y = self._coerce(other)
        except TypeError:
            return NotImplemented
        return y * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        p = self.prime
        if k == 0:
            return from_rational(1, p, max(self.precision, 1))
        if k < 0:
            return self.inverse() ** (-k)
        if self.is_zero:
            return PadicNumber.zero(p, min(k * self.absprec, EXACT))
        n = self.precision
        return PadicNumber(p, k * self.valuation, pow(self.unit, k, p**n), n)

    # -- comparison -------------------------------------------------------

    def agreement(self, other) -> int:
        """Absolute precision to which two values are known to coincide."""
        d = self - other
        return d.absprec if d.is_zero else d.valuation

    def rel_agreement(self, other) -> int:
        """Number of significant digits of ``self`` confirmed by ``other``."""
        a = self.agreement(other)
        if self.is_zero:
            return 0
        return a - self.valuation

    def __str__(self):
        return format_padic(self)

    def __repr__(self):
        return f"PadicNumber({format_padic(self)})"


def from_rational(q, p: int = DEFAULT_PRIME, N: int = DEFAULT_PRECISION) -> PadicNumber:
    """Image of a rational in Q_p to ``N`` significant digits."""
    check_prime(p)
    if not isinstance(N, int) or N < 1:
        raise DomainError(f"precision must be a positive integer, got {N!r}")
    q = to_fraction(q)
    if q == 0:
        return PadicNumber.zero(p, N)
    num, den = q.numerator, q.denominator
    a, b = vp(num, p), vp(den, p)
    num //= p**a
    den //= p**b
    mod = p**N
    return PadicNumber(p, a - b, (num * pow(den, -1, mod)) % mod, N)


def as_padic(x, p: int, N: int = DEFAULT_PRECISION) -> PadicNumber:
    if isinstance(x, PadicNumber):
        if x.prime != p:
            raise DomainError(f"mixed primes {x.prime} and {p}")
        return x
    if isinstance(x, str) and not _RATIONAL_RE.fullmatch(x.strip()):
        return parse_padic(x, p, N)
    return from_rational(x, p, N)


# -- spec-named conveniences -------------------------------------------------

def add(x, y):
    return x + y


def mul(x, y):
    return x * y


def neg(x):
    return -x


def inv(x):
    return x.inverse()


def pow_int(x, k: int):
    return x**k


def val(x: PadicNumber) -> int:
    if x.is_zero:
        raise DomainError("the valuation of zero is undefined")
    return x.valuation


def norm(x: PadicNumber) -> Fraction:
    if x.is_zero:
        return Fraction(0)
    return Fraction(x.prime) ** (-x.valuation)


# -- literals -----------------------------------------------------------------

def format_padic(x: PadicNumber, mode: str = "digits") -> str:
    """Render ``x`` as a literal.

    ``digits``:   ``5^-1*(1 + 3*5 + 0*5^2) + O(5^2)``
    ``integer``:  ``7 + O(5^2)`` (falls back to ``digits`` for negative valuation)
    ``compact``:  ``5:-1:1,3,0``
    ``json``:     ``{"p": 5, "v": -1, "digits": [1, 3, 0], "prec": 3}``
    """
    p = x.prime
    if mode == "compact":
        return f"{p}:{x.valuation}:" + ",".join(map(str, x.digits()))
    if mode == "json":
        return json.dumps(to_json(x))
    tail = f"O({p}^{x.absprec})"
    if x.is_zero:
        return f"0 + {tail}"
    if mode == "integer" and x.valuation >= 0:
        return f"{x.unit * p**x.valuation} + {tail}"
    if mode not in ("digits", "integer"):
        raise DomainError(f"unknown literal mode {mode!r}")
    terms = []
    for i, d in enumerate(x.digits()):
        if i == 0:
            terms.append(str(d))
        elif i == 1:
            terms.append(f"{d}*{p}")
        else:
            terms.append(f"{d}*{p}^{i}")
    return f"{p}^{x.valuation}*(" + " + ".join(terms) + f") + {tail}"


def to_json(x: PadicNumber) -> dict:
    return {"p": x.prime, "v": x.valuation, "digits": x.digits(), "prec": x.precision}


def from_json(obj) -> PadicNumber:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        p, v, digits = int(obj["p"]), int(obj["v"]), [int(d) for d in obj["digits"]]
        prec = int(obj.get("prec", len(digits)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed p-adic JSON object: {exc}", 0) from exc
    check_prime_at(p, 0)
    if any(not 0 <= d < p for d in digits) or len(digits) > prec:
        raise ParseError("digit out of range or more digits than precision", 0)
    unit = sum(d * p**i for i, d in enumerate(digits))
    return PadicNumber.from_scaled(p, v, unit, v + prec)


_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(.))")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                break
            start = m.start(1) if m.group(1) is not None else m.start(2)
            tok = m.group(1) if m.group(1) is not None else m.group(2)
            self.tokens.append((tok, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input, expected {expected or 'token'}",
                             self.pos())
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", self.pos())
        self.i += 1
        return tok

    def integer(self, signed=False):
        sign = 1
        if signed and self.peek() in ("-", "+"):
            sign = -1 if self.take() == "-" else 1
        tok = self.peek()
        if tok is None or not tok.isdigit():
            raise ParseError(f"expected an integer, found {tok!r}", self.pos())
        self.i += 1
        return sign * int(tok)

    def done(self):
        if self.peek() is not None:
            raise ParseError(f"unexpected trailing input {self.peek()!r}", self.pos())


def parse_padic(text: str, p: int | None = None, N: int | None = None) -> PadicNumber:
    """Parse any literal produced by :func:`format_padic`, or a plain rational.

    A plain rational (``-1/2``) needs ``p`` and takes precision ``N``.
    """
    s = text.strip()
    if s.startswith("{"):
        x = from_json(s)
        return _check_prime_match(x, p, 0)
    sc = _Scanner(text)
    if not sc.tokens:
        raise ParseError("empty literal", 0)
    # compact form  p:v:d0,d1,...
    if len(sc.tokens) > 1 and sc.tokens[1][0] == ":":
        q = sc.integer()
        sc.take(":")
        v = sc.integer(signed=True)
        sc.take(":")
        digits = []
        if sc.peek() is not None:
            digits.append(sc.integer())
            while sc.peek() == ",":
                sc.take(",")
                digits.append(sc.integer())
        sc.done()
        return _check_prime_match(
            from_json({"p": q, "v": v, "digits": digits, "prec": len(digits)}), p, 0)
    # digit form  p^v*( ... ) + O(p^M)
    if len(sc.tokens) > 1 and sc.tokens[1][0] == "^":
        start = sc.pos()
        q = sc.integer()
        check_prime_at(q, start)
        sc.take("^")
        v = sc.integer(signed=True)
        sc.take("*")
        sc.take("(")
        terms = {}
        while True:
            at = sc.pos()
            d = sc.integer()
            k = 0
            if sc.peek() == "*":
                sc.take("*")
                at_base = sc.pos()
                if sc.integer() != q:
                    raise ParseError(f"expected base {q}", at_base)
                k = 1
                if sc.peek() == "^":
                    sc.take("^")
                    k = sc.integer()
            if not 0 <= d < q:
                raise ParseError(f"digit {d} out of range for p = {q}", at)
            if k in terms:
                raise ParseError(f"repeated digit position {k}", at)
            terms[k] = d
            if sc.peek() == "+":
                sc.take("+")
                continue
            break
        sc.take(")")
        sc.take("+")
        m = _error_term(sc, q)
        sc.done()
        if terms and max(terms) >= m - v:
            raise ParseError("digit beyond the stated precision", len(text))
        unit = sum(d * q**k for k, d in terms.items())
        return _check_prime_match(PadicNumber.from_scaled(q, v, unit, m), p, 0)
    # integer / rational form, optionally with an error term
    value = Fraction(sc.integer(signed=True))
    if sc.peek() == "/":
        sc.take("/")
        at = sc.pos()
        den = sc.integer()
        if den == 0:
            raise ParseError("zero denominator", at)
        value /= den
    if sc.peek() == "+":
        sc.take("+")
        at = sc.pos()
        if p is None:
            # infer the prime from the error term
            save = sc.i
            sc.take("O")
            sc.take("(")
            p = sc.integer()
            sc.i = save
        check_prime_at(p, at)
        m = _error_term(sc, p)
        sc.done()
        if value == 0:
            return PadicNumber.zero(p, m)
        v = vp_rational(value, p)
        if v >= m:
            return PadicNumber.zero(p, m)
        return from_rational(value, p, m - v)
    sc.done()
    if p is None:
        raise ParseError("a plain rational literal needs an explicit prime", 0)
    return from_rational(value, p, N or DEFAULT_PRECISION)


def check_prime_at(q, position):
    if not is_odd_prime(q):
        raise ParseError(f"{q} is not an odd prime", position)


def _error_term(sc: _Scanner, q: int) -> int:
    sc.take("O")
    sc.take("(")
    at = sc.pos()
    if sc.integer() != q:
        raise ParseError(f"error term must be a power of {q}", at)
    sc.take("^")
    m = sc.integer(signed=True)
    sc.take(")")
    return m


def _check_prime_match(x: PadicNumber, p, position) -> PadicNumber:
    if p is not None and x.prime != p:
        raise ParseError(f"literal is {x.prime}-adic, expected {p}-adic", position)
    return x
