"""Exception hierarchy shared by every matcher."""

from __future__ import annotations


class GFMError(Exception):
    """Base class for all errors raised by :mod:`gfmatch`."""


class EmptyInput(GFMError, ValueError):
    pass


class InvalidPartition(GFMError, ValueError):
    pass


class EmptyRepetitionList(GFMError, ValueError):
    pass


class InvalidSpec(GFMError, ValueError):
    pass


class TooLarge(GFMError):
    """The brute-force search space exceeds the configured cap."""


class TooManySolutions(GFMError):
    """The no-repetition fallback would enumerate more compositions than allowed."""


class TimedOut(GFMError):
    """A cooperative deadline expired.

    ``partial`` holds the (verified) partitions found before the deadline.
    """

    def __init__(self, partial=(), message: str = "deadline exceeded"):
        super().__init__(message)
        self.partial = list(partial)


class Rejected(GFMError):
    """A candidate occurrence failed trimming or placement.

    ``reason`` is one of ``EMPTY_PIECE``, ``ADJACENCY`` or ``GAP_TOO_SMALL``.
    """

    EMPTY_PIECE = "EmptyPiece"
    ADJACENCY = "Adjacency"
    GAP_TOO_SMALL = "GapTooSmall"

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason
