"""Exception hierarchy.

``ValidationError`` covers bad inputs (CLI exit code 1) and
``NumericalError`` covers failures of the numerics themselves (exit code 2).
"""


class LowRankError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(LowRankError, ValueError):
    pass


class NumericalError(LowRankError, ArithmeticError):
    pass


class NotSquare(ValidationError):
    pass


class NotHermitian(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class BadRank(ValidationError):
    pass


class BadRange(ValidationError):
    pass


class InvalidSpec(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class MatrixParseError(ValidationError):
    pass


class EigensolverFailure(NumericalError):
    pass


class NonConvergence(NumericalError):
    def __init__(self, message, best_value=None):
        super().__init__(message)
        self.best_value = best_value


class NoSignChange(NumericalError):
    pass


class InternalInconsistency(NumericalError):
    pass
