"""Exception types shared across the package."""

from __future__ import annotations


class MdsLabError(Exception):
    """Base class for every error raised by mdslab."""


class CompositeCharacteristic(MdsLabError, ValueError):
    pass


class ReducibleModulus(MdsLabError, ValueError):
    pass


class FieldMismatch(MdsLabError, ValueError):
    pass


class DivisionByZero(MdsLabError, ZeroDivisionError):
    pass


class NonSquare(MdsLabError, ValueError):
    pass


class IndexOutOfRange(MdsLabError, IndexError):
    pass


class LengthMismatch(MdsLabError, ValueError):
    pass


class ZeroMatrix(MdsLabError, ValueError):
    pass


class BadDimension(MdsLabError, ValueError):
    pass


class BadInput(MdsLabError, ValueError):
    pass


class ShapeMismatch(MdsLabError, ValueError):
    pass


class NotNmds(MdsLabError, ValueError):
    pass


class PartitionViolation(MdsLabError, ValueError):
    pass


class MismatchDetected(MdsLabError, AssertionError):
    """An internal cross-check between two computation routes disagreed."""


class TooLarge(MdsLabError, RuntimeError):
    """A feasibility guard refused an enumeration that would not finish."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: {size} exceeds limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit


def guard(what: str, size: int, limit: int) -> None:
    if size > limit:
        raise TooLarge(what, size, limit)
