"""Exception types raised across the package."""


class FFExtError(Exception):
    """Base class for all package errors."""


class NotOddPrime(FFExtError, ValueError):
    pass


class DegreeZero(FFExtError, ValueError):
    pass


class NoSquareRoot(FFExtError, ValueError):
    pass


class NoRoot(FFExtError, ValueError):
    pass


class NotABasis(FFExtError, ValueError):
    pass


class EvenModulus(FFExtError, ValueError):
    pass


class ZeroLeadingCoefficient(FFExtError, ValueError):
    pass


class CostGuard(FFExtError, RuntimeError):
    """An exhaustive computation would exceed the desk-scale budget."""


class UnsupportedSurface(FFExtError, ValueError):
    pass


class UnsupportedCombination(FFExtError, ValueError):
    """No closed form is known for the requested (surface, exponent/fold, field)."""


class WrongResidueClass(FFExtError, ValueError):
    """The field size lies in the wrong residue class for this construction."""


class PrimeTooSmall(FFExtError, ValueError):
    pass


class ZeroFunction(FFExtError, ValueError):
    pass


class BoundViolation(FFExtError, AssertionError):
    """A computed ratio exceeded the claimed sharp constant."""
