"""Exception types shared across the package."""


class SuitableError(Exception):
    """Base class for all errors raised by this package."""


class TableFormatError(SuitableError, ValueError):
    """A table or its text representation is malformed."""


class SymbolError(SuitableError, ValueError):
    """A symbol is absent from a row or outside 1..v."""


class StrengthTooLarge(SuitableError, ValueError):
    """Array verification was asked for t > min(N, v)."""


class PreconditionError(SuitableError, ValueError):
    """An operation was called outside its domain."""


class NotSuitableError(PreconditionError):
    """The input table does not verify at the requested strength."""


class NormalizationError(SuitableError):
    """Normalization of a suitable array stalled.

    Raised only when the array has fewer symbols than rows; for v >= N the
    row-by-row leader repair always terminates.
    """
