"""Exception hierarchy.

Every domain failure derives from :class:`DomainError`, which the CLI maps
to exit code 2. :class:`NonIntegerCoefficient` is an internal consistency
failure and maps to exit code 3.
"""


class DomainError(ValueError):
    """Base class for errors caused by mathematically invalid input."""


class UnsupportedDimension(DomainError):
    pass


class InvalidIndex(DomainError):
    pass


class NotFiniteIndex(DomainError):
    pass


class NoSolution(DomainError):
    pass


class ZeroPolynomial(DomainError):
    pass


class ZeroArgument(DomainError):
    pass


class NotPrime(DomainError):
    pass


class EqualPrimes(DomainError):
    pass


class NotAUnit(DomainError):
    pass


class NotMixing(DomainError):
    """Raised with the violating exponent vector in ``witness``."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InfiniteFixedSet(DomainError):
    pass


class NotEntropyRankOne(DomainError):
    pass


class UnnormalizedImage(DomainError):
    pass


class NoDefiningPoly(DomainError):
    pass


class UnliftableInversion(DomainError):
    pass


class OutOfBudget(DomainError):
    pass


class SpecFormatError(DomainError):
    pass


class NonIntegerCoefficient(ArithmeticError):
    """A zeta coefficient failed to be an integer (implementation or spec bug)."""
