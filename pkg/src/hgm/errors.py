"""Exception hierarchy shared by all modules."""


class HGMError(Exception):
    """Base class for every error raised by the library."""


class ParseError(HGMError, ValueError):
    """Malformed edge-list input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphValidationError(HGMError, ValueError):
    """Structurally invalid graph (self-loop, negative id, ...)."""


class DisconnectedGraphError(HGMError, ValueError):
    """Raised when an operation needs a connected graph and did not get one."""
