"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree.

    This always indicates a bug, never bad input.
    """


class NumericError(ArithmeticError):
    """A floating-point routine produced a result outside its tolerance."""
