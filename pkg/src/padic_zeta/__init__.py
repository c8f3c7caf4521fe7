"""Exact p-adic arithmetic and p-adic spectral zeta / log-Gamma functions over Q_p."""

from .errors import (DomainError, GuardError, HypothesisError, NotInterpolableError,
                     PadicError, ParseError, PoleError, PrecisionError, RouteDisagreement)
from .functions import (angle, angle_pow, angle_pow_binomial, binom, decompose, exp_p,
                        log_p, omega_v, pochhammer, teichmuller)
from .integration import (IntegralReport, bernoulli_f, euler_f, fermionic, integrate,
                          volkenborn)
from .loggamma import LogGammaResult, log_gamma, stirling_terms
from .padic import (PadicNumber, format_padic, from_rational, inv, norm, parse_padic,
                    pow_int, val)
from .recognize import rational_recognition
from .spectra import (AnalyticFunction, MahlerExpansion, Spectrum, analyticity_test, catalog,
                      mahler_coeffs, mahler_eval, parse_function)
from .zeta import (ZetaQuery, ZetaResult, euler_zeta, hurwitz_zeta, lambda_derivative,
                   positive_value_series, shifted_series, special_value, zeta)

__version__ = "0.1.0"
