from typing import Optional


class GraphError(ValueError):
    """Base class for everything the library raises on bad input."""


class GraphFormatError(GraphError):
    """Malformed graph6 / edge-list text, or a graph the format cannot carry."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeLimitError(GraphError):
    """Input exceeds a desk-scale cap (exhaustive routines refuse instead of sampling)."""


class PreconditionError(GraphError):
    """An operation was called on a graph that does not satisfy its precondition."""
