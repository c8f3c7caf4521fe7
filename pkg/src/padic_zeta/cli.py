"""Command-line interface: ``padic-zeta <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 domain or hypothesis violation,
3 route disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import DomainError, ParseError, PrecisionError, RouteDisagreement
from .functions import angle, angle_pow, angle_pow_binomial, teichmuller
from .integration import (FERMIONIC, HAAR, MomentIntegrand, default_levels, integrate,
                          parse_levels)
from .loggamma import DEFAULT_ROUTES, ROUTE_NAMES, log_gamma
from .padic import (DEFAULT_PRECISION, DEFAULT_PRIME, PadicNumber, as_padic, check_prime,
                    format_padic, to_json)
from .recognize import rational_recognition
from .spectra import (analyticity_test, catalog, catalog_names, mahler_coeffs,
                      parse_function, read_spectrum_file)
from .zeta import (KINDS, ROUTES, ZetaQuery, as_exponent, as_lambda, lambda_derivative,
                   special_value, zeta)

LITERAL_HELP = ("rationals like -1/2, or p-adic literals '5^-1*(1 + 3*5) + O(5^2)', "
                "'5:-1:1,3' or JSON")
F_HELP = ("identity | square | oscillator | integer | barrier | hydrogen | "
          "poly:c0,c1,... | recip-poly:c0,c1,... | mahler:<spectrum file>")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=DEFAULT_PRIME, help="odd prime (default 5)")
    common.add_argument("--prec", type=int, default=DEFAULT_PRECISION,
                        help="significant p-adic digits (default 20)")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--levels", default=None,
                        help="Riemann-sum levels a..b (default 1..N with p^N <= 20000, N <= 6)")
    common.add_argument("--m-max", type=int, default=None,
                        help="series truncation order (default: enough for --prec, at least 24)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="padic-zeta",
                     description="p-adic spectral zeta functions, log-Gamma functions and "
                                 "Mahler interpolation over Q_p.",
                     epilog="Exit codes: 0 ok, 1 usage, 2 domain/hypothesis violation, "
                            "3 route disagreement. Literals: " + LITERAL_HELP)
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    z = sub.add_parser("zeta", parents=[common], help="zeta value at (s, lambda)")
    z.add_argument("--kind", choices=KINDS, default="hurwitz")
    z.add_argument("--f", default="identity", help=F_HELP)
    z.add_argument("--s", required=True, help="s in Z_p")
    z.add_argument("--lambda", dest="lam", required=True, help="lambda with -lambda not in f(Z_p)")
    z.add_argument("--route", choices=ROUTES, default="auto")
    z.add_argument("--no-fast-path", action="store_true",
                   help="always use Riemann sums on the direct route")

    g = sub.add_parser("loggamma", parents=[common], help="log-Gamma function at lambda")
    g.add_argument("--kind", choices=KINDS, default="hurwitz")
    g.add_argument("--f", default="identity", help=F_HELP)
    g.add_argument("--lambda", dest="lam", required=True)
    g.add_argument("--routes", default=",".join(DEFAULT_ROUTES),
                   help="comma list from " + ",".join(ROUTE_NAMES))

    i = sub.add_parser("integrate", parents=[common], help="moment int (lambda + f(a))^m")
    i.add_argument("--measure", choices=(HAAR, FERMIONIC), default=HAAR)
    i.add_argument("--f", default="identity", help=F_HELP)
    i.add_argument("--moment", type=int, default=1)
    i.add_argument("--lambda", dest="lam", default="0")
    i.add_argument("--riemann", action="store_true",
                   help="use extrapolated Riemann sums even for polynomial f")

    m = sub.add_parser("interpolate", parents=[common], help="Mahler coefficients of a spectrum")
    src = m.add_mutually_exclusive_group(required=True)
    src.add_argument("--spectrum-file", help="one rational per line, index from 0")
    src.add_argument("--model", choices=catalog_names())
    m.add_argument("--n-max", type=int, default=16)
    m.add_argument("--radius", default=None, help="radius r for the analyticity test (default 1/p)")

    t = sub.add_parser("teichmuller", parents=[common], help="omega(a), <a> for a unit a")
    t.add_argument("--a", required=True)

    a = sub.add_parser("angle-pow", parents=[common], help="<lambda>^s")
    a.add_argument("--lambda", dest="lam", required=True)
    a.add_argument("--s", required=True)

    sv = sub.add_parser("special-value", parents=[common], help="closed form at s = 1 - n")
    sv.add_argument("--kind", choices=KINDS, default="hurwitz")
    sv.add_argument("--n", type=int, required=True)
    sv.add_argument("--f", default="identity", help=F_HELP)
    sv.add_argument("--lambda", dest="lam", required=True)

    d = sub.add_parser("derivative", parents=[common], help="n-th lambda-derivative of zeta")
    d.add_argument("--kind", choices=KINDS, default="hurwitz")
    d.add_argument("--order", type=int, default=1)
    d.add_argument("--s", required=True)
    d.add_argument("--f", default="identity", help=F_HELP)
    d.add_argument("--lambda", dest="lam", required=True)
    return parser


# -- output ----------------------------------------------------------------------

def _rational_text(q) -> str | None:
    return None if q is None else str(q)


def value_json(x: PadicNumber) -> dict:
    out = {"literal": format_padic(x)}
    out.update(to_json(x))
    out["absprec"] = x.absprec
    out["rational"] = _rational_text(rational_recognition(x))
    return out


def _value_lines(x: PadicNumber) -> list[str]:
    lines = [f"value:     {format_padic(x)}"]
    q = rational_recognition(x)
    lines.append(f"rational:  {q if q is not None else '(none recognised)'}")
    return lines


def _emit(args, header: str, value: PadicNumber | None, extra: dict, text_extra: list[str]):
    if args.json:
        doc = {"command": args.command, "p": args.p, "prec": args.prec}
        if value is not None:
            doc["value"] = value_json(value)
        doc.update(extra)
        print(json.dumps(doc, indent=2, sort_keys=True, default=str))
        return
    print(header)
    if value is not None:
        for line in _value_lines(value):
            print(line)
    for line in text_extra:
        print(line)


def _levels(args):
    return parse_levels(args.levels) if args.levels else None


# -- commands ----------------------------------------------------------------------

def cmd_zeta(args):
    f = parse_function(args.f, args.p, args.prec)
    q = ZetaQuery(args.s, args.lam, f, args.kind, args.p, args.prec, args.route,
                  args.m_max, _levels(args), not args.no_fast_path)
    res = zeta(q)
    routes = {k: format_padic(v) for k, v in res.routes.items()}
    reports = res.report if isinstance(res.report, dict) else {res.route: res.report}
    methods = {k: _describe(r) for k, r in reports.items()}
    cert = dict(res.certificates)
    text = [f"route:     {res.route} ({', '.join(f'{k}: {v}' for k, v in methods.items())})"]
    if res.agreement is not None:
        text.append(f"agreement: O({args.p}^{res.agreement})")
    text.append("certificates: " + ", ".join(f"{k}={v}" for k, v in cert.items()))
    _emit(args, f"zeta kind={args.kind} f={f.name} s={args.s} lambda={args.lam} "
                f"p={args.p} prec={args.prec}",
          res.value, {"kind": args.kind, "f": f.name, "s": args.s, "lambda": args.lam,
                      "route": res.route, "routes": routes, "methods": methods,
                      "agreement": res.agreement, "certificates": cert}, text)


def _describe(report) -> str:
    if hasattr(report, "m_max"):
        if report.tail_valuation is None:
            return f"series terminates after m={report.m_max}"
        return f"series m_max={report.m_max}, tail O(p^{report.tail_valuation})"
    if report.method == "exact":
        return "exact moments"
    return (f"Riemann sums at levels {report.levels_used[0]}..{report.levels_used[-1]}, "
            f"extrapolants agree to O(p^{report.agreement_digits[-1]})")


def cmd_loggamma(args):
    f = parse_function(args.f, args.p, args.prec)
    routes = tuple(r.strip() for r in args.routes.split(",") if r.strip())
    res = log_gamma(args.kind, args.lam, f, routes, args.p, args.prec, _levels(args))
    text = [f"routes:    {', '.join(res.routes_run)}"]
    for k, v in res.values.items():
        text.append(f"  {k}: {format_padic(v)}")
    for k, v in res.pairwise_agreement.items():
        text.append(f"agreement {k}: O({args.p}^{v})")
    _emit(args, f"loggamma kind={args.kind} f={f.name} lambda={args.lam} "
                f"p={args.p} prec={args.prec}",
          res.value, {"kind": args.kind, "f": f.name, "lambda": args.lam,
                      "routes": {k: format_padic(v) for k, v in res.values.items()},
                      "agreement": res.pairwise_agreement,
                      "certificates": res.certificates}, text)


def cmd_integrate(args):
    f = parse_function(args.f, args.p, args.prec)
    lam, _ = as_lambda(args.lam, args.p)
    rep = integrate(MomentIntegrand(f, lam, args.moment), args.measure, args.p, args.prec,
                    _levels(args), fast_path=not args.riemann)
    text = [f"method:    {_describe(rep)}", f"converged: {rep.converged}"]
    _emit(args, f"integrate measure={args.measure} f={f.name} moment={args.moment} "
                f"lambda={args.lam} p={args.p} prec={args.prec}",
          rep.value, {"measure": args.measure, "f": f.name, "moment": args.moment,
                      "lambda": args.lam, "method": rep.method,
                      "levels": list(rep.levels_used),
                      "agreement_digits": list(rep.agreement_digits),
                      "converged": rep.converged}, text)


def cmd_interpolate(args):
    if args.spectrum_file:
        spec = read_spectrum_file(args.spectrum_file)
        n_max = min(args.n_max, spec.length - 1)
    else:
        spec, _ = catalog(args.model)
        n_max = args.n_max
    exp = mahler_coeffs(spec, n_max, args.p, args.prec)
    radius = Fraction(args.radius) if args.radius else None
    verdict = analyticity_test(exp, radius)
    coeffs = [str(c) for c in exp.exact]
    norms = [str(n) for n in exp.norms]
    text = [f"coefficients: [{', '.join(coeffs)}]",
            f"norms:        [{', '.join(norms)}]",
            f"continuity:   {'ok' if exp.continuity_ok else 'failed (not interpolable)'}",
            f"analyticity:  {verdict.verdict} at r = {verdict.radius}"
            + (f" (witness n = {verdict.witness})" if verdict.witness is not None else "")]
    _emit(args, f"interpolate source={args.spectrum_file or args.model} n_max={n_max} "
                f"p={args.p} prec={args.prec}",
          None, {"coefficients": coeffs, "norms": norms,
                 "continuity_ok": exp.continuity_ok,
                 "analyticity": {"radius": str(verdict.radius), "verdict": verdict.verdict,
                                 "witness": verdict.witness}}, text)


def cmd_teichmuller(args):
    x = as_padic(args.a, args.p, args.prec)
    w = teichmuller(x)
    text = [f"angle:     {format_padic(angle(x))}"]
    _emit(args, f"teichmuller a={args.a} p={args.p} prec={args.prec}", w,
          {"a": args.a, "angle": value_json(angle(x))}, text)


def cmd_angle_pow(args):
    lam = as_padic(args.lam, args.p, args.prec)
    s = as_exponent(args.s, args.p, args.prec)
    value = angle_pow(lam, s)
    check = angle_pow_binomial(lam, s)
    agree = value.agreement(check)
    _emit(args, f"angle-pow lambda={args.lam} s={args.s} p={args.p} prec={args.prec}", value,
          {"lambda": args.lam, "s": args.s, "binomial_agreement": agree},
          [f"binomial series agrees to O({args.p}^{agree})"])


def cmd_special_value(args):
    f = parse_function(args.f, args.p, args.prec)
    value = special_value(args.kind, args.n, args.lam, f, args.p, args.prec)
    _emit(args, f"special-value kind={args.kind} n={args.n} f={f.name} lambda={args.lam} "
                f"p={args.p} prec={args.prec}", value,
          {"kind": args.kind, "n": args.n, "f": f.name, "lambda": args.lam, "s": 1 - args.n},
          [f"s:         {1 - args.n}"])


def cmd_derivative(args):
    f = parse_function(args.f, args.p, args.prec)
    value = lambda_derivative(args.kind, args.order, args.s, args.lam, f, args.p, args.prec)
    _emit(args, f"derivative kind={args.kind} order={args.order} s={args.s} f={f.name} "
                f"lambda={args.lam} p={args.p} prec={args.prec}", value,
          {"kind": args.kind, "order": args.order, "s": args.s, "f": f.name,
           "lambda": args.lam}, [])


COMMANDS = {"zeta": cmd_zeta, "loggamma": cmd_loggamma, "integrate": cmd_integrate,
            "interpolate": cmd_interpolate, "teichmuller": cmd_teichmuller,
            "angle-pow": cmd_angle_pow, "special-value": cmd_special_value,
            "derivative": cmd_derivative}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        check_prime(args.p)
        if args.prec < 1:
            raise UsageError("--prec must be >= 1")
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RouteDisagreement as exc:
        print(f"route disagreement: {exc}", file=sys.stderr)
        return 3
    except (DomainError, PrecisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
