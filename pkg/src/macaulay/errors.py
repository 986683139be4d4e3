"""Shared exception types."""


class UsageError(Exception):
    """A precondition on a library operation was violated by the caller."""


class MembershipError(UsageError):
    """An element was required to lie in a subspace or submodule but does not."""


class ResourceLimitError(Exception):
    """An iteration or degree cap was exceeded; ``partial`` holds the state so far."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ParseError(Exception):
    """Syntax error in an input file, with 1-based line/column position."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)
