from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padic_zeta.errors import DomainError, ParseError, PrecisionError
from padic_zeta.padic import (PadicNumber, add, format_padic, from_json, from_rational, inv,
                              mul, neg, norm, parse_padic, pow_int, to_json, val)

PRIMES = st.sampled_from([3, 5, 7, 11])
RATIONALS = st.fractions(max_denominator=10**6).filter(lambda q: abs(q.numerator) < 10**12)


def test_from_rational_examples():
    z = from_rational(0, 5, 3)
    assert z.is_zero and z.absprec == 3
    x = from_rational(Fraction(-1, 2), 5, 2)
    assert (x.valuation, x.unit) == (0, 12)
    y = from_rational(Fraction(1, 5), 5, 2)
    assert (y.valuation, y.unit) == (-1, 1)


def test_arithmetic_examples():
    s = add(from_rational(2, 5, 2), from_rational(3, 5, 2))
    assert (s.valuation, s.unit) == (1, 1)
    assert inv(from_rational(2, 5, 2)).unit == 13
    one = mul(from_rational(Fraction(1, 5), 5, 2), from_rational(5, 5, 2))
    assert (one.valuation, one.unit) == (0, 1)


def test_norm_and_val():
    assert norm(from_rational(Fraction(1, 5), 5)) == 5 and val(from_rational(Fraction(1, 5), 5)) == -1
    assert norm(from_rational(10, 5)) == Fraction(1, 5) and val(from_rational(10, 5)) == 1
    assert norm(from_rational(3, 5)) == 1 and val(from_rational(3, 5)) == 0


def test_format_examples():
    assert format_padic(from_rational(Fraction(1, 5), 5, 1)) == "5^-1*(1) + O(5^0)"
    assert format_padic(from_rational(7, 5, 2), "integer") == "7 + O(5^2)"


def test_zero_and_inverse_errors():
    with pytest.raises(PrecisionError) as err:
        inv(from_rational(0, 5, 4))
    assert err.value.required == 5
    with pytest.raises(DomainError):
        from_rational(1, 5) + from_rational(1, 7)
    with pytest.raises(DomainError):
        from_rational(1, 4)
    with pytest.raises(DomainError):
        from_rational(1, 2)


def test_precision_tracking():
    x = from_rational(Fraction(1, 5), 5, 4)
    y = from_rational(1, 5, 10)
    assert (x + y).absprec == 3
    assert (x * y).precision == 4
    # cancellation loses relative precision, never invents digits
    a = from_rational(1 + 5**6, 5, 10)
    b = from_rational(1, 5, 10)
    assert (a - b).valuation == 6 and (a - b).absprec == 10


@pytest.mark.parametrize("mode", ["digits", "integer", "compact", "json"])
@pytest.mark.parametrize("q", [Fraction(-1, 2), Fraction(3, 25), Fraction(0), Fraction(250, 7)])
def test_format_parse_round_trip(mode, q):
    x = from_rational(q, 5, 4)
    assert parse_padic(format_padic(x, mode), 5, 4) == x


def test_json_round_trip():
    x = from_rational(Fraction(-7, 3), 7, 9)
    assert from_json(to_json(x)) == x


@pytest.mark.parametrize("text,pos", [("5^-1*(1 + 3*5", 13), ("1/0", 2), ("abc", 0),
                                      ("5^-1*(1 + 3*7) + O(5^2)", 12)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_padic(text, 5, 4)
    assert err.value.position == pos
    assert f"position {pos}" in str(err.value)


def test_parse_prime_mismatch():
    with pytest.raises(ParseError):
        parse_padic("7:0:1,2", 5, 4)


@given(PRIMES, RATIONALS, RATIONALS, RATIONALS)
def test_ring_laws(p, a, b, c):
    x, y, z = (from_rational(q, p, 12) for q in (a, b, c))
    assert ((x + y) + z).agreement(x + (y + z)) >= min(((x + y) + z).absprec, (x + (y + z)).absprec)
    assert (x * (y + z)).agreement(x * y + x * z) >= min((x * (y + z)).absprec, (x * y + x * z).absprec)
    assert x + y == y + x and x * y == y * x
    assert (x + neg(x)).is_zero


@given(PRIMES, RATIONALS.filter(lambda q: q != 0))
def test_inverse(p, a):
    x = from_rational(a, p, 12)
    one = x * inv(x)
    assert one.valuation == 0 and one.residue(one.absprec) == 1 % p**one.absprec


@given(PRIMES, RATIONALS, RATIONALS)
def test_ultrametric(p, a, b):
    if a + b == 0:
        return
    x, y = from_rational(a, p, 30), from_rational(b, p, 30)
    assert val(x + y) >= min(val(x), val(y))
    if val(x) != val(y):
        assert val(x + y) == min(val(x), val(y))


@given(PRIMES, RATIONALS, st.integers(-3, 5))
def test_residue_matches_rational(p, a, k):
    x = from_rational(a, p, 15)
    if a == 0 or a.denominator % p == 0:
        return
    assert x.residue(k % 8 + 1) == a.numerator * pow(a.denominator, -1, p**(k % 8 + 1)) % p**(k % 8 + 1)


@given(PRIMES, RATIONALS.filter(lambda q: q != 0), st.integers(-4, 6))
def test_pow_int(p, a, k):
    x = from_rational(a, p, 12)
    assert pow_int(x, k).rel_agreement(from_rational(a**k, p, 12)) >= 12


def test_lift_is_a_representative():
    x = from_rational(Fraction(-1, 2), 5, 6)
    assert from_rational(x.lift(), 5, 6) == x


def test_padicnumber_validates():
    with pytest.raises(DomainError):
        PadicNumber(5, 0, 10, 3)
    with pytest.raises(DomainError):
        PadicNumber(5, 0, 0, 2)
