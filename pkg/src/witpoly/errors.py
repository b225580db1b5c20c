"""Exception types shared across the package."""


class WitpolyError(Exception):
    pass


class PointOutside(WitpolyError):
    """A point that was required to lie in the polygon does not."""


class SegmentOutside(WitpolyError):
    """A segment that was required to lie in the polygon does not."""


class InvalidPolygon(WitpolyError):
    """Construction-time validation of a polygon failed."""


class NotAWitnessSet(WitpolyError):
    """An operation required a valid witness set and got something else."""


class NotAWindow(WitpolyError):
    """The given segment is not a window of the visibility polygon."""


class NotSimplicial(WitpolyError):
    """Replacement requested for a witness that is not simplicial."""


class NotVisible(WitpolyError):
    pass


class NotReflex(WitpolyError):
    pass


class TooLarge(WitpolyError):
    """Instance exceeds the brute-force size limit."""


class EmbeddingInvalid(WitpolyError):
    """A PMR3SAT embedding is not planar/monotone as required."""


class InvariantViolated(WitpolyError):
    """Generated reduction geometry failed a self-check; carries the offending pair."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ParseError(WitpolyError):
    """Document parsing failed; carries line and column."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}: {message}" if column is None else f"line {line}, col {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
