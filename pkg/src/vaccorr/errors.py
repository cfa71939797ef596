"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a function."""


class LightConeError(DomainError):
    """The separation lies on (or numerically at) the light cone."""


class NonConvergenceError(ArithmeticError):
    """A series or quadrature did not reach its tolerance within its budget."""


class UnknownPairError(KeyError):
    """A field pair that is not part of the correlation catalog."""
