"""Exception hierarchy shared by every module of the package."""


class DiscountAxiomsError(Exception):
    """Base class for all package errors."""


class DomainError(DiscountAxiomsError, ValueError):
    """Operands live in incompatible spaces (prize sets, stream shapes, horizons)."""


class ArgumentError(DiscountAxiomsError, ValueError):
    """An argument is outside its admissible range."""


class ConstraintError(DiscountAxiomsError, ValueError):
    """A model parameter violates a structural constraint.

    Attributes:
        index: 1-based position of the offending parameter, when there is one.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class EssentialityError(DiscountAxiomsError):
    """A period carries no weight, so the requested construction is undefined."""

    def __init__(self, message: str, period: int | None = None):
        super().__init__(message)
        self.period = period


class OracleInconsistency(DiscountAxiomsError):
    """Oracle answers contradict the monotonicity a bisection relies on."""


class BudgetExhausted(DiscountAxiomsError):
    """The query budget of an elicitation session ran out."""


class InputError(DiscountAxiomsError):
    """Malformed input document (JSON syntax or schema)."""
