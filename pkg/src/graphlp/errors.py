"""Exception types shared across the package."""


class GraphLPError(Exception):
    """Base class for all package-specific errors."""


class UnknownVertexError(GraphLPError, KeyError):
    """A vertex label was used that the graph does not contain."""

    def __init__(self, label):
        super().__init__(label)
        self.label = label

    def __str__(self):
        return f"unknown vertex: {self.label!r}"


class ContainmentError(GraphLPError, ValueError):
    """Multiset subtraction was attempted with a non-contained subtrahend."""


class UniverseMismatchError(GraphLPError, ValueError):
    """Two polynomials over different vertex universes were combined."""


class GraphFormatError(GraphLPError, ValueError):
    """The graph text format was malformed; carries a line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(GraphLPError, ValueError):
    """An operation was called outside its stated precondition."""


class NotATreeError(GraphLPError, ValueError):
    """The tree-only expansion was called on a graph that is not a
    bidirected tree."""


class NonTerminationError(GraphLPError, RuntimeError):
    """The decreasing measure of a rewriting procedure failed to decrease.

    This signals an implementation bug, never a property of the input.
    """


class VerificationError(GraphLPError, AssertionError):
    """A check of a proven statement failed; indicates an implementation
    bug, since the checked statements are theorems."""
