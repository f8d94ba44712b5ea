"""Exception hierarchy. Every domain error derives from ``ProjlineError`` so the
CLI can report the class name and exit with status 1."""


class ProjlineError(Exception):
    pass


class DivisionByZero(ProjlineError, ZeroDivisionError):
    pass


class ContextMismatch(ProjlineError):
    pass


class NotPrime(ProjlineError, ValueError):
    pass


class NotEnumerable(ProjlineError):
    pass


class BoundExceeded(ProjlineError):
    pass


class ParseError(ProjlineError, ValueError):
    pass


class ZeroVector(ProjlineError):
    pass


class VectorNotInSource(ProjlineError):
    pass


class InvalidArrow(ProjlineError):
    pass


class NotComposable(ProjlineError):
    pass


class UndefinedCrossRatio(ProjlineError):
    pass


class MalformedTable(ProjlineError):
    pass


class PointsNotDistinct(ProjlineError):
    pass


class TriplesNotDistinct(ProjlineError):
    pass


class FieldMismatch(ProjlineError):
    pass


class NoSolution(ProjlineError):
    pass


class PreconditionViolated(ProjlineError):
    pass


class SingularMatrix(ProjlineError):
    pass


class NotAProjectivity(ProjlineError):
    pass


class WeightsNotAffine(ProjlineError):
    pass


class PunctureInTerms(ProjlineError):
    pass


class ZeroEqualsPuncture(ProjlineError):
    pass


class BaseMismatch(ProjlineError):
    pass
