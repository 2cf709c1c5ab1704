"""Exception hierarchy shared by every module."""


class TotDomError(Exception):
    """Base class for all errors raised by this package."""


class IsolatedVertexError(TotDomError):
    """Total domination is undefined on graphs with isolated vertices."""


class LimitExceededError(TotDomError):
    """More optimal sets exist than the caller allowed for."""


class TooLargeError(TotDomError):
    """Instance exceeds a configured size guard."""


class HypothesisViolatedError(TotDomError):
    """A precondition of a checked statement does not hold."""


class NotMinimumTDSetError(TotDomError):
    pass


class NotInFamiliesError(TotDomError):
    pass


class Graph6Error(TotDomError):
    """Malformed graph6 input."""


class BadCharError(Graph6Error):
    pass


class BadLengthError(Graph6Error):
    pass


class UnsupportedSizeError(Graph6Error):
    pass
