"""Shared exception types."""


class DomainError(ValueError):
    """Argument lies outside the supported domain (e.g. Re z <= 0)."""


class DivergentSumError(ArithmeticError):
    """The requested Matsubara sum diverges for this parameter dependence."""


class PreconditionError(ValueError):
    """Operation invoked outside its declared preconditions."""
