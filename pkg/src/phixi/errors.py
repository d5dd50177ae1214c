"""Exception hierarchy shared by all numerical modules."""


class PhixiError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PhixiError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class RangeError(DomainError):
    """Argument inside the domain but outside the supported evaluation range."""


class SectorError(DomainError):
    """Complex argument outside the sector where the kernels are reliable."""


class NumericalError(PhixiError, ArithmeticError):
    """A numerical method could not reach its target.

    ``best`` carries the best available estimate, when there is one.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ToleranceNotMet(NumericalError):
    pass


class DepthExhausted(NumericalError):
    pass


class HintViolation(NumericalError):
    pass


class NonAlternatingPanels(NumericalError):
    pass
