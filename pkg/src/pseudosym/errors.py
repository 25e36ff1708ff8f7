"""Exception hierarchy shared by all modules."""


class PseudosymError(Exception):
    """Base class for every error raised by the package."""


class NotGCM(PseudosymError):
    pass


class NotSymmetrizable(PseudosymError):
    pass


class Decomposable(PseudosymError):
    pass


class NotFiniteType(PseudosymError):
    pass


class NotInWeylGroup(PseudosymError):
    pass


class BeyondBruteForce(PseudosymError):
    """A brute-force enumeration would exceed its configured budget."""


class NotCompatible(PseudosymError):
    pass


class NotGeneralizedSatake(PseudosymError):
    pass


class InvalidCharacter(PseudosymError):
    pass


class RankGuardExceeded(PseudosymError):
    pass


class OrderCapExceeded(PseudosymError):
    pass


class UnrecognizedRestrictedType(PseudosymError):
    """Raised with the raw data that failed to match the catalogue."""

    def __init__(self, message, gram=None, patterns=None):
        super().__init__(message)
        self.gram = gram
        self.patterns = patterns


class TruncationOverflow(PseudosymError):
    """An exact computation needed degrees beyond the realized window."""

    def __init__(self, message, suggested_height=None):
        super().__init__(message)
        self.suggested_height = suggested_height


class CaseMismatch(PseudosymError):
    pass


class ParseError(PseudosymError):
    """Malformed diagram or input text; ``position`` is a 0-based offset."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
