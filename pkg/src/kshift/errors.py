"""Exception hierarchy shared by all kshift modules."""


class KShiftError(ValueError):
    """Base class for domain errors (invalid input, ill-typed operation)."""


# k-graph construction and algebra

class SpecParseError(KShiftError):
    pass


class UnknownVertex(KShiftError):
    pass


class UnknownEdge(KShiftError):
    pass


class ColorOutOfRange(KShiftError):
    pass


class NotComposable(KShiftError):
    pass


class DegreeOutOfRange(KShiftError):
    pass


class MissingSquare(KShiftError):
    """Raised when a rewrite needs a commuting square the table does not have."""


# shift spaces and the Markov alphabet

class LengthMismatch(KShiftError):
    pass


class EmptyAlphabet(KShiftError):
    pass


class UnknownLetter(KShiftError):
    pass


# block codes

class InadmissibleWord(KShiftError):
    pass


class TooShort(KShiftError):
    pass


class InadmissibleIntermediate(KShiftError):
    pass


class OracleInconsistent(KShiftError):
    pass


class WordTooShort(KShiftError):
    pass


# groupoid

class NotComposableGerm(KShiftError):
    pass


class UnitsMismatch(KShiftError):
    pass
