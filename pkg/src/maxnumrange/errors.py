"""Exception hierarchy shared by every module."""


class MaxAlgebraError(ValueError):
    """Base class for invalid inputs to max-algebra routines."""


class ShapeError(MaxAlgebraError):
    pass


class NegativeEntryError(MaxAlgebraError):
    """Raised when an entry is negative or non-finite; names the entry."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class EnumerationLimitError(RuntimeError):
    """An exact enumeration would exceed its configured limit.

    The instance is too large for exact mode; use sampling instead.
    """

    def __init__(self, message, limit=None, flag="--limit"):
        super().__init__(message)
        self.limit = limit
        self.flag = flag
