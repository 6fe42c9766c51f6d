"""Exception hierarchy shared by every module of the package."""


class MathieuBoundsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(MathieuBoundsError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PrecisionExhausted(MathieuBoundsError, ArithmeticError):
    """The requested accuracy could not be reached within the iteration cap."""


class PrecisionInsufficient(PrecisionExhausted):
    """An enclosure is too wide for a downstream operation (e.g. a denominator straddles 0)."""


class IntervalDivisionError(MathieuBoundsError, ZeroDivisionError):
    """Division by an interval that contains zero."""


class MethodInapplicable(MathieuBoundsError, ValueError):
    """An evaluation method's hypotheses do not hold for the given input."""


class DegenerateTransform(MathieuBoundsError, ArithmeticError):
    """A rational-function transform produced an identically vanishing denominator."""
