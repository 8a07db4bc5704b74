"""Exception hierarchy shared by every module."""


class GradedverseError(Exception):
    """Base class for all errors raised by this package."""


class CyclicInput(GradedverseError, ValueError):
    """A directed cycle was found where an acyclic digraph is required."""


class TooLarge(GradedverseError, ValueError):
    """Input exceeds a brute-force size bound."""


class NotOrdered(GradedverseError, ValueError):
    pass


class Unsupported(GradedverseError, ValueError):
    pass


class InvalidPattern(GradedverseError, ValueError):
    """A pattern query violates its disjointness or value constraints."""


class RetryExhausted(GradedverseError, RuntimeError):
    """Rejection sampling failed to realize a pattern within the retry bound."""


class StageBoundExceeded(GradedverseError, ValueError):
    pass


class NotExtensional(GradedverseError, ValueError):
    """Two vertices share the same in-neighbour set."""


class NonInjectiveLabels(GradedverseError, ValueError):
    pass


class DayBoundExceeded(GradedverseError, ValueError):
    pass


class InvalidTerm(GradedverseError, ValueError):
    """A surreal term has a left option not strictly below a right option."""


class NotCompletelyDisjoint(GradedverseError, ValueError):
    pass


class ValueOutOfRange(GradedverseError, ValueError):
    pass


class NotPredecessorClosed(GradedverseError, ValueError):
    pass


class ParseError(GradedverseError, ValueError):
    """Malformed set, term, rational, or graph text."""
