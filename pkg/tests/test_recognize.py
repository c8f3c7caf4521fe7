from fractions import Fraction

from hypothesis import given, strategies as st

from padic_zeta.padic import PadicNumber, from_rational
from padic_zeta.recognize import icbrt, rational_recognition


def test_examples():
    assert rational_recognition(PadicNumber(5, 0, 14, 2), 10) == Fraction(3, 2)
    assert rational_recognition(PadicNumber(5, 0, 12, 2), 10) == Fraction(-1, 2)
    assert rational_recognition(PadicNumber(5, 0, 7, 2), 3) is None


def test_zero_and_valuation():
    assert rational_recognition(from_rational(0, 5, 5)) == 0
    assert rational_recognition(from_rational(Fraction(3, 50), 5, 20)) == Fraction(3, 50)


@given(st.integers(0, 10**40))
def test_icbrt(n):
    r = icbrt(n)
    assert r**3 <= n < (r + 1) ** 3


@given(st.sampled_from([5, 7]), st.integers(-300, 300), st.integers(1, 300))
def test_small_rationals_are_recovered(p, a, b):
    q = Fraction(a, b)
    if q == 0 or q.denominator % p == 0:
        return
    assert rational_recognition(from_rational(q, p, 20)) == q
