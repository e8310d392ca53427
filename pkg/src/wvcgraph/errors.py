"""Exception types raised by wvcgraph.

Everything derives from :class:`WvcError` (itself a ``ValueError``) so callers
can catch validation failures in one place; I/O problems surface as the usual
``OSError``.
"""


class WvcError(ValueError):
    """Base class for input-validation failures."""


class FormatError(WvcError):
    """A data file could not be parsed (bad cell, ragged row, missing column)."""


class NonUniformTimeError(FormatError):
    """The time column is not uniformly spaced."""


class ZeroVarianceError(WvcError):
    """A signal (or window) has zero variance where a variance is required."""


class DegeneratePositionError(WvcError):
    """A within-period position has (near) zero spread and cannot be normalized."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class WindowTooLongError(WvcError):
    """A window or period does not fit inside the series."""
