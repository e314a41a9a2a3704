"""Exception types raised by anovatk."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class SingularDesignError(DomainError):
    """The regression design matrix does not have full column rank."""


class InfeasibleSpecError(DomainError):
    """A family construction was requested for parameters where it cannot exist."""


class NumericalError(ArithmeticError):
    """An iterative numerical routine failed to converge."""
