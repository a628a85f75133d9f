"""Exception types raised by polyrespace."""


class RespacingError(Exception):
    """Base class for all polyrespace errors."""


class OutOfRange(RespacingError, ValueError):
    """An arclength lies outside ``[0, L(C)]`` by more than the tolerance."""


class BadSampleSchedule(RespacingError, ValueError):
    pass


class DimensionMismatch(RespacingError, ValueError):
    pass


class DegenerateAngle(RespacingError, ValueError):
    pass


class BadSpec(RespacingError, ValueError):
    pass


class UnsupportedDimension(RespacingError, ValueError):
    pass


class TooFewVertices(RespacingError, ValueError):
    pass


class ParseError(RespacingError, ValueError):
    """Malformed curve file. ``line`` is 1-based, or None for whole-file errors."""

    def __init__(self, reason, line=None):
        self.reason = reason
        self.line = line
        msg = reason if line is None else f"line {line}: {reason}"
        super().__init__(msg)


class RowWidthMismatch(ParseError, DimensionMismatch):
    """A CSV row has a different number of columns than the first row."""
