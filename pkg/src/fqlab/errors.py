"""Exception types raised across fqlab."""


class FqlabError(Exception):
    """Base class for every error raised by this package."""


class NonPrime(FqlabError, ValueError):
    pass


class DegreeZero(FqlabError, ValueError):
    pass


class DivByZero(FqlabError, ZeroDivisionError):
    pass


class DimMismatch(FqlabError, ValueError):
    pass


class SingularForm(FqlabError, ValueError):
    """A bilinear form matrix that is not invertible."""


class BudgetExceeded(FqlabError, RuntimeError):
    """An enumeration would exceed the configured work budget."""


class ZeroDirection(FqlabError, ValueError):
    pass


class EmptyA(FqlabError, ValueError):
    pass


class NotDivisor(FqlabError, ValueError):
    pass


class SizeTooLarge(FqlabError, ValueError):
    pass


class WrongDim(FqlabError, ValueError):
    pass


class OriginInSupport(FqlabError, ValueError):
    pass


class RoundingUnsafe(FqlabError, ArithmeticError):
    """A floating character sum landed too far from an integer."""


class HypothesisViolated(FqlabError, ValueError):
    pass


class Unreached(FqlabError, LookupError):
    """No witness was found for a target value."""

    def __init__(self, t, msg=None):
        self.t = t
        super().__init__(msg or f"no witness found for target {t}")


class NoNonzeroMinor(FqlabError, ValueError):
    pass


class NotFound(FqlabError, LookupError):
    pass


class ConfigError(FqlabError, ValueError):
    pass
