"""Sweep the direct (Riemann-sum) and series routes over a grid and report agreement.

    python3 scripts/route_sweep.py --p 5 7 --prec 20
"""

import argparse
import time
from dataclasses import dataclass, field
from fractions import Fraction

from padic_zeta.spectra import parse_function
from padic_zeta.zeta import KINDS, ZetaQuery, zeta


@dataclass
class SweepConfig:
    primes: list = field(default_factory=lambda: [5, 7])
    functions: list = field(default_factory=lambda: ["identity", "square", "oscillator"])
    s_values: list = field(default_factory=lambda: [0, -1, -2, -3, 2, 3, Fraction(1, 3)])
    prec: int = 20


def sweep(cfg: SweepConfig):
    for p in cfg.primes:
        lams = [Fraction(1, p), Fraction(2, p), Fraction(1, p * p), Fraction(3, p)]
        for kind in KINDS:
            for name in cfg.functions:
                f = parse_function(name, p)
                worst = None
                for lam in lams:
                    for s in cfg.s_values:
                        direct = zeta(ZetaQuery(s, lam, f, kind, p, cfg.prec, route="direct",
                                                fast_path=False)).value
                        series = zeta(ZetaQuery(s, lam, f, kind, p, cfg.prec,
                                                route="series")).value
                        d = direct.agreement(series) - (0 if series.is_zero else series.valuation)
                        worst = d if worst is None else min(worst, d)
                yield p, kind, name, worst


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, nargs="+", default=[5, 7])
    ap.add_argument("--prec", type=int, default=20)
    args = ap.parse_args()
    cfg = SweepConfig(primes=args.p, prec=args.prec)
    t0 = time.perf_counter()
    print(f"{'p':>3} {'kind':<8} {'f':<11} min digits")
    for p, kind, name, worst in sweep(cfg):
        print(f"{p:>3} {kind:<8} {name:<11} {worst}")
    print(f"elapsed {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
