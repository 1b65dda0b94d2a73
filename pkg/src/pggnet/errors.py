"""Exception types shared across the package."""


class PggNetError(Exception):
    """Base class for all package errors."""


class ConfigError(PggNetError):
    """Invalid configuration value or malformed config document."""


class PreconditionError(PggNetError):
    """An operation was called outside its contract."""


class InvariantError(PggNetError):
    """Internal state violated a structural invariant."""


class SnapshotParseError(PggNetError):
    """A graph snapshot file could not be parsed."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number
