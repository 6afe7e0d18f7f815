"""Exception hierarchy.

Every mathematical failure derives from :class:`VerdictError`; the CLI maps
those to exit code 1 and everything input-related to exit code 2.
"""


class IsospecError(Exception):
    """Base class for all errors raised by this package."""


class VerdictError(IsospecError):
    """A mathematical precondition or verification failed."""


class NotHermitian(VerdictError):
    pass


class NotInvertible(VerdictError):
    pass


class CommutatorViolation(VerdictError):
    pass


class DimensionMismatch(VerdictError):
    pass


class NotAFrame(VerdictError):
    pass


class NotTight(VerdictError):
    pass


class EigenResidualViolation(VerdictError):
    pass


class InvalidPartition(VerdictError):
    pass


class NotIsometryLike(VerdictError):
    pass


class InputError(IsospecError):
    """Malformed input file or argument."""


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ShapeError(InputError):
    pass
