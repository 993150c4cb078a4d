"""Exception types shared by the numerical modules."""


class DomainError(ValueError):
    """An argument lies outside the domain where the formula is defined."""


class NonConvergenceError(ArithmeticError):
    """A quadrature or series failed its self-consistency check.

    ``estimate`` is the best available value and ``discrepancy`` the size of
    the disagreement that triggered the failure.
    """

    def __init__(self, message, estimate=None, discrepancy=None):
        super().__init__(message)
        self.estimate = estimate
        self.discrepancy = discrepancy


class UnsupportedExpression(TypeError):
    """An expression lacks the closed-form rule an operation needs."""
