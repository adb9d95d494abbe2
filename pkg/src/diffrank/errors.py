"""Exception hierarchy shared by every module."""


class DiffRankError(Exception):
    """Base class for all errors raised by this package."""


class CrossChainComparison(DiffRankError):
    pass


class DomainMismatch(DiffRankError):
    pass


class UnknownOrientation(DiffRankError):
    pass


class UndecidedEquivalence(DiffRankError):
    pass


class UnsupportedShape(DiffRankError):
    pass


class NotFinite(DiffRankError):
    pass


class NotInvertible(DiffRankError):
    pass


class ZeroElement(DiffRankError):
    pass


class ZeroSeries(ZeroElement):
    pass


class NotInValuationRing(DiffRankError):
    pass


class NotInPK(DiffRankError):
    """Raised when an element is not positive and infinitely large."""


class HypothesisNotProven(DiffRankError):
    """Raised when sigma-equivalence is requested without proven square growth."""


class NoCanonicalQuotient(DiffRankError):
    pass


class InconsistentSegment(DiffRankError):
    pass


class TrivialEta(DiffRankError):
    pass


class PoolTooLarge(DiffRankError):
    pass


class QuotientTooLarge(DiffRankError):
    pass


class ParseError(DiffRankError):
    """Malformed command text; ``line`` and ``column`` are 1-based."""

    def __init__(self, position: int, line: int, column: int, expected: str, found: str = ""):
        self.position = position
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        where = f"line {line}, column {column}"
        got = f", found {found!r}" if found else ", found end of input"
        super().__init__(f"{where}: expected {expected}{got}")
