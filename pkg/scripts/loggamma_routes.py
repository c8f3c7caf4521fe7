"""Compare the three log-Gamma routes (integral, Stirling, s-derivative).

    python3 scripts/loggamma_routes.py --p 5 7
"""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from padic_zeta.loggamma import ROUTE_NAMES, log_gamma
from padic_zeta.recognize import rational_recognition
from padic_zeta.spectra import parse_function
from padic_zeta.zeta import KINDS


@dataclass
class RoutesConfig:
    primes: list = field(default_factory=lambda: [5, 7])
    functions: list = field(default_factory=lambda: ["identity", "square", "oscillator"])
    prec: int = 20


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, nargs="+", default=[5, 7])
    ap.add_argument("--prec", type=int, default=20)
    args = ap.parse_args()
    cfg = RoutesConfig(primes=args.p, prec=args.prec)
    print(f"{'p':>3} {'kind':<8} {'f':<11} {'lambda':<7} " +
          " ".join(f"{k:>24}" for k in ("integral/stirling", "integral/s-derivative",
                                         "stirling/s-derivative")) + "  value")
    for p in cfg.primes:
        for kind in KINDS:
            for name in cfg.functions:
                f = parse_function(name, p)
                for lam in (Fraction(1, p), Fraction(1, p * p)):
                    res = log_gamma(kind, lam, f, ROUTE_NAMES, p, cfg.prec)
                    agree = " ".join(f"{v:>24}" for v in res.pairwise_agreement.values())
                    q = rational_recognition(res.value)
                    shown = str(q) if q is not None else f"{res.value.digits()[:4]}... v={res.value.valuation}"
                    print(f"{p:>3} {kind:<8} {name:<11} {str(lam):<7} {agree}  {shown}")


if __name__ == "__main__":
    main()
