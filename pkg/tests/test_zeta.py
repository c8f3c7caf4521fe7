from fractions import Fraction

import pytest

from oracles import bernoulli_poly, euler_poly, poly_power, euler_zero, residue_class_zeta
from padic_zeta.errors import DomainError, GuardError, HypothesisError, PoleError
from padic_zeta.functions import omega_v
from padic_zeta.padic import from_rational
from padic_zeta.spectra import IDENTITY, OSCILLATOR, SQUARE
from padic_zeta.zeta import (EULER, HURWITZ, ZetaQuery, euler_zeta, hurwitz_zeta,
                             lambda_derivative, positive_value_series, shifted_series,
                             special_value, zeta)

LAM = Fraction(1, 5)


def q(x, p=5, n=30):
    return from_rational(x, p, n)


def agrees(x, y, digits):
    """x and y share at least ``digits`` significant digits of the larger precision."""
    return x.agreement(y) - min(x.valuation, y.valuation) >= digits


def test_hurwitz_examples():
    res = hurwitz_zeta(0, LAM)
    assert res.value == q(Fraction(3, 2), 5, 20)
    assert res.route == "auto" and res.agreement >= 20
    w = omega_v(LAM, 5, 30)
    expected = q(-bernoulli_poly(2, LAM) / 2) / w**2
    assert agrees(hurwitz_zeta(-1, LAM).value, expected, 20)


def test_euler_examples():
    assert euler_zeta(0, LAM).value == q(Fraction(-3, 2), 5, 20)
    assert euler_zeta(1, LAM).value == q(1, 5, 20)
    w = omega_v(LAM, 5, 30)
    e2 = LAM**2 + 2 * LAM * euler_zero(2) + euler_zero(4)
    assert agrees(euler_zeta(-1, LAM, SQUARE).value, q(e2) / w**2, 20)


def test_special_value_examples():
    assert special_value(HURWITZ, 1, LAM) == q(Fraction(3, 2), 5, 20)
    assert special_value(EULER, 1, LAM) == q(Fraction(-3, 2), 5, 20)
    # E_1 of a + 1/2 at lambda is lambda + E_1(1/2) = lambda
    assert special_value(EULER, 1, LAM, OSCILLATOR) == q(1, 5, 20)


def test_positive_value_series():
    assert agrees(positive_value_series(HURWITZ, 2, LAM), hurwitz_zeta(2, LAM).value, 18)
    assert positive_value_series(EULER, 1, LAM, SQUARE) == q(1, 5, 20)
    assert agrees(positive_value_series(EULER, 2, LAM), euler_zeta(2, LAM).value, 18)
    with pytest.raises(PoleError):
        positive_value_series(HURWITZ, 1, LAM)


def test_shifted_series_examples():
    assert agrees(shifted_series(HURWITZ, 0, LAM, 0), hurwitz_zeta(0, LAM).value, 20)
    assert agrees(shifted_series(HURWITZ, 0, LAM, 1), hurwitz_zeta(0, LAM + 1).value, 18)
    lam, u = Fraction(1, 25), Fraction(1, 5)
    assert agrees(shifted_series(EULER, 0, lam, u), euler_zeta(0, lam + u).value, 18)
    with pytest.raises(HypothesisError):
        shifted_series(HURWITZ, 0, Fraction(1, 5), Fraction(1, 25))


def test_lambda_derivative_examples():
    w = omega_v(LAM, 5, 30)
    # n = 1, s = 0: d/dlam of -B_1(lam)/omega_v is -1/omega_v, finite
    assert agrees(lambda_derivative(HURWITZ, 1, 0, LAM), -1 / w, 18)
    # n = 1, s = -1: (s)_1 = -1 gives zeta(0, lam) / omega_v
    assert agrees(lambda_derivative(HURWITZ, 1, -1, LAM), hurwitz_zeta(0, LAM).value / w, 18)
    # n = 2, s = -2 (euler): (s - 1)_2 = 6
    expected = euler_zeta(0, LAM).value * 6 / w**2
    assert agrees(lambda_derivative(EULER, 2, -2, LAM), expected, 18)
    with pytest.raises(PoleError):
        lambda_derivative(HURWITZ, 1, 1, LAM)


@pytest.mark.parametrize("kind", [HURWITZ, EULER])
@pytest.mark.parametrize("p,lam", [(5, 2), (5, 3), (7, 1), (7, 2)])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_direct_route_against_residue_class_oracle(kind, p, lam, k):
    # |lam| = M here, so only the Riemann-sum route applies
    res = zeta(ZetaQuery(1 - k, lam, SQUARE, kind, p, 16))
    assert res.route == "direct" and not res.certificates["guard_trivial"]
    oracle = residue_class_zeta(kind, k, lam, [0, 0, 1], p)
    assert res.value.agreement(oracle) >= res.value.absprec
    assert res.value.precision >= (14 if p == 5 else 8)


def test_non_integer_s_routes_agree():
    for s in (Fraction(1, 3), Fraction(-7, 2)):
        for kind in (HURWITZ, EULER):
            res = zeta(ZetaQuery(s, LAM, OSCILLATOR, kind, 5, 16, fast_path=False))
            assert res.agreement - res.value.valuation >= 12


def test_errors():
    with pytest.raises(PoleError):
        hurwitz_zeta(1, LAM)
    with pytest.raises(GuardError):
        hurwitz_zeta(0, 3)                      # -3 = f(-3)
    with pytest.raises(HypothesisError) as err:
        zeta(ZetaQuery(0, 2, SQUARE, route="series"))
    assert "|lambda|_p > M" in str(err.value)
    with pytest.raises(DomainError):
        hurwitz_zeta(0, LAM, p=9)
    with pytest.raises(DomainError):
        hurwitz_zeta(Fraction(1, 5), LAM)       # s outside Z_5


def test_certificates():
    res = hurwitz_zeta(Fraction(1, 3), LAM, OSCILLATOR)
    assert res.certificates["M"] == "1" and res.certificates["guard_trivial"]
    assert res.certificates["tail_valuation"] >= 20
    assert set(res.routes) == {"direct", "series"}


def test_lambda_given_as_padic_caps_precision():
    lam = from_rational(LAM, 5, 8)
    res = hurwitz_zeta(0, lam)
    assert res.value.precision <= 8
    assert res.value.agreement(q(Fraction(3, 2))) >= res.value.absprec
