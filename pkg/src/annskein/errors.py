"""Exception hierarchy shared by every layer."""


class SkeinError(Exception):
    """Base class for all errors raised by annskein."""


class ParseError(SkeinError, ValueError):
    """Malformed textual input (partitions, braid words, coefficients)."""


class BoundExceeded(SkeinError):
    """A size or degree budget was exceeded; raised instead of truncating."""


class NotAFieldError(SkeinError, TypeError):
    pass


class NotIdempotentError(SkeinError, ValueError):
    pass


class ConsistencyError(SkeinError, AssertionError):
    """Two independent computations that must agree did not.

    This always signals an implementation bug, never bad user input.
    """
