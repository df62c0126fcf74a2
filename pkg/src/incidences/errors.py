"""Exception hierarchy shared by all modules."""


class IncidenceError(Exception):
    """Base class for errors raised by this package."""


class DomainError(IncidenceError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateInputError(IncidenceError, ValueError):
    """Geometric input is degenerate (coincident points, identical lines, ...)."""


class FieldMismatchError(IncidenceError, TypeError):
    """Arithmetic between elements of different quadratic fields."""


class UnsupportedFieldError(IncidenceError, ValueError):
    """The requested exact construction needs numbers outside the supported fields."""


class BudgetExhausted(IncidenceError):
    """A search or enumeration ran out of its node budget."""
