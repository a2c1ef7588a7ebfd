"""Exception hierarchy shared by all modules."""


class DistColorError(Exception):
    """Base class for every error raised by this package."""


class InvalidEdge(DistColorError, ValueError):
    pass


class InvalidVertex(DistColorError, ValueError):
    pass


class EmptyQuery(DistColorError, ValueError):
    pass


class SearchBudgetExceeded(DistColorError):
    """An exhaustive search gave up before finishing.

    ``partial`` carries whatever was established before the budget ran out,
    so callers can distinguish "not found" from "inconclusive".
    """

    def __init__(self, message: str, partial: dict | None = None):
        super().__init__(message)
        self.partial = dict(partial or {})


class ListingMismatch(DistColorError, ValueError):
    pass


class SizeOverflow(DistColorError, ValueError):
    pass


class InvalidIndex(DistColorError, ValueError):
    pass


class InvalidChain(DistColorError, ValueError):
    pass


class IncompatibleCoordinates(DistColorError, ValueError):
    pass


class InvalidSampleCount(DistColorError, ValueError):
    pass


class RadiusTooLarge(DistColorError, ValueError):
    pass


class NotBoundedAwayFromZero(DistColorError, ValueError):
    pass


class DegeneratePair(DistColorError, ValueError):
    pass


class GenericityFailure(DistColorError):
    pass


class DimensionError(DistColorError, ValueError):
    pass


class NotAGraphRelation(DistColorError, ValueError):
    pass


class DuplicateVertex(DistColorError, ValueError):
    pass


class ParseError(DistColorError, ValueError):
    """Malformed graph file, distance-set string, or predicate file."""
