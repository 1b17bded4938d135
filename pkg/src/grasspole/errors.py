"""Exception hierarchy shared by every grasspole module."""


class GrassPoleError(Exception):
    """Base class for all library errors."""


# fields
class NonPrimeCharacteristic(GrassPoleError, ValueError):
    pass


class ReducibleModulus(GrassPoleError, ValueError):
    pass


class FieldMismatch(GrassPoleError, TypeError):
    pass


class DivisionByZero(GrassPoleError, ZeroDivisionError):
    pass


class InfiniteField(GrassPoleError, ValueError):
    """Raised when an operation needs to enumerate a field that is not finite."""


# polynomials and matrices
class ZeroPolynomial(GrassPoleError, ValueError):
    pass


class NonSquare(GrassPoleError, ValueError):
    pass


class DimensionMismatch(GrassPoleError, ValueError):
    pass


class DegreeBoundExceeded(GrassPoleError, ArithmeticError):
    """No polynomial kernel basis was found within the degree bound."""


class RankDeficient(GrassPoleError, ValueError):
    pass


# grassmannian
class ZeroVector(GrassPoleError, ValueError):
    pass


class NotDecomposable(GrassPoleError, ValueError):
    pass


# systems
class NotObservable(GrassPoleError, ValueError):
    pass


class RankDeficientCompensator(GrassPoleError, ValueError):
    pass


class DependentAtInfinity(GrassPoleError, ValueError):
    """The K1 block of a projective compensator is singular."""


# constructions and pole placement
class DegreeLawViolation(GrassPoleError, ValueError):
    pass


class FieldTooSmall(GrassPoleError, ValueError):
    pass


class DegenerateSystem(GrassPoleError, ValueError):
    pass


class UnsupportedShape(GrassPoleError, ValueError):
    pass
