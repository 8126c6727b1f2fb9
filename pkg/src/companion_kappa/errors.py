"""Exception hierarchy.  Every error raised by the package derives from
:class:`CompanionError`, which itself is a :class:`ValueError`."""


class CompanionError(ValueError):
    pass


class SingularMatrixError(CompanionError):
    pass


class ZeroConstantTermError(CompanionError):
    pass


class NonUnitConstantTermError(CompanionError):
    pass


class DimensionTooLargeError(CompanionError):
    pass


class IndexOutOfRangeError(CompanionError, IndexError):
    pass


class NotFiedlerError(CompanionError):
    pass


class HypothesisNotMetError(CompanionError):
    pass


class InvalidTupleError(CompanionError):
    pass


class BadShapeError(CompanionError):
    pass


class BadEllError(CompanionError):
    pass


class ParseError(CompanionError):
    pass


class DegreeTooSmallError(ParseError):
    pass


class NoFeasibleFamilyError(CompanionError):
    pass
