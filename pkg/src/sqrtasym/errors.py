"""Exception types shared across the package."""


class SqrtAsymError(Exception):
    """Base class for all library errors."""


class DomainMismatchError(SqrtAsymError, TypeError):
    """Operands live over different scalar domains."""


class MixedPiPowerError(SqrtAsymError, ArithmeticError):
    """Addition of exact scalars carrying different powers of sqrt(pi)."""


class PreconditionError(SqrtAsymError, ValueError):
    """An operation was called outside its domain of validity."""


class TruncationError(PreconditionError):
    """A jet is not known to high enough order for the requested result."""


class DegenerateWarning(UserWarning):
    """Input is admissible but degenerate (e.g. vanishing leading constant)."""
