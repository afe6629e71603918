"""Exception types raised by the library.

Every domain error derives from :class:`ChordWSError`; the CLI prints the
class name as the machine-readable error code.
"""


class ChordWSError(ValueError):
    """Base class for all domain errors."""


class DuplicateNode(ChordWSError):
    pass


class DegreeOverflow(ChordWSError):
    pass


class NotDoubleOccurrence(ChordWSError):
    pass


class CapExceeded(ChordWSError):
    pass


class NotAShare(ChordWSError):
    pass


class ChordNotFound(ChordWSError):
    pass


class EmptyDiagram(ChordWSError):
    pass


class PreconditionViolated(ChordWSError):
    pass


class NotAdjacent(ChordWSError):
    pass


class BadMarker(ChordWSError):
    pass


class Disconnected(ChordWSError):
    pass


class Unclassifiable(ChordWSError):
    pass


class NotRealizable(ChordWSError):
    pass


class NoMarkedChord(ChordWSError):
    pass


class ReductionStuck(ChordWSError):
    pass


class ParseError(ChordWSError):
    pass
