"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """Raised when a computation would exceed a configured size cap."""


class ValidationError(ValueError):
    """Raised when an input violates a documented invariant."""
