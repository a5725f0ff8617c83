"""Exception types raised by the library."""

from typing import Optional


class RaagError(ValueError):
    """Base class for domain errors."""


class GraphFormatError(RaagError):
    """A graph file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownVertexError(RaagError, KeyError):
    """A vertex name or index is not part of the graph."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown vertex"


class DisconnectedGraphError(RaagError):
    """The operation needs a connected defining graph."""


class WordSyntaxError(RaagError):
    """A word token is malformed or names an unknown generator."""


class MixedGraphError(RaagError):
    """Elements over different defining graphs were combined."""


class NonGeodesicError(RaagError):
    """A word (or a power of a ray period) is not geodesic."""

    def __init__(self, message: str, power: Optional[int] = None):
        self.power = power
        super().__init__(message)


class HypothesisError(RaagError):
    """A mathematical hypothesis of the operation does not hold."""


class GraphOfGroupsError(RaagError):
    """Invalid graph-of-groups data."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissingTraceError(RaagError):
    """A witness lacks the construction data needed for a check."""
