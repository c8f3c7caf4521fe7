"""Exception hierarchy shared by every module of the package."""


class PadicError(Exception):
    """Base class for all errors raised by padic_zeta."""


class DomainError(PadicError, ValueError):
    """An input lies outside the domain of the requested operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole (e.g. the Hurwitz zeta function at s = 1)."""


class HypothesisError(DomainError):
    """A convergence hypothesis of a series expansion is violated.

    ``hypothesis`` names the violated condition in plain words, e.g.
    ``"|lambda|_p > M"``.
    """

    def __init__(self, message, hypothesis=None):
        super().__init__(message)
        self.hypothesis = hypothesis


class GuardError(DomainError):
    """-lambda could not be excluded from the value set of f at the guard depth."""

    def __init__(self, message, residue=None, depth=None):
        super().__init__(message)
        self.residue = residue
        self.depth = depth


class NotInterpolableError(DomainError):
    """A Mahler expansion failed its continuity test and cannot be evaluated."""


class PrecisionError(PadicError, ArithmeticError):
    """A value is indistinguishable from zero at its current precision.

    ``required`` is the absolute precision that would have been needed,
    when it can be stated.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class ParseError(PadicError, ValueError):
    def __init__(self, message, position=0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class RouteDisagreement(PadicError):
    """Two independent evaluation routes disagree beyond their declared precision."""

    def __init__(self, message, agreement=None, expected=None):
        super().__init__(message)
        self.agreement = agreement
        self.expected = expected
