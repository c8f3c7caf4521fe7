"""Difference quotients in lambda against the closed-form derivative.

Prints, for each step valuation, the digits shared by the first difference
quotient and two candidate prefactors for the Hurwitz kind: (s)_1, which the
package uses, and (s - 1)_1, which drops the 1/(s - 1) normalisation.

    python3 scripts/derivative_check.py --s 1/3
"""

import argparse
from fractions import Fraction

from padic_zeta.functions import omega_v
from padic_zeta.padic import from_rational
from padic_zeta.zeta import ZetaQuery, lambda_derivative, zeta


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--s", type=Fraction, default=Fraction(1, 3))
    ap.add_argument("--lambda", dest="lam", type=Fraction, default=None)
    ap.add_argument("--prec", type=int, default=40)
    args = ap.parse_args()
    p, s, prec = args.p, args.s, args.prec
    lam = args.lam if args.lam is not None else Fraction(1, p)

    def z(x, t=s):
        return zeta(ZetaQuery(t, x, p=p, prec=prec, route="series")).value

    def shared(x, ref):
        return x.agreement(ref) - ref.valuation

    w = omega_v(lam, p, prec)
    closed = lambda_derivative("hurwitz", 1, s, lam, p=p, prec=prec)
    other = -z(lam, s + 1) * (s - 1) / w
    print(f"p={p} s={s} lambda={lam}")
    print(f"{'val(h)':>6} {'(s)_1':>6} {'(s-1)_1':>8}")
    for vh in (2, 4, 6, 8, 10):
        h = Fraction(p) ** vh
        dq = (z(lam + h) - z(lam)) / from_rational(h, p, prec)
        print(f"{vh:>6} {shared(dq, closed):>6} {shared(dq, other):>8}")


if __name__ == "__main__":
    main()
