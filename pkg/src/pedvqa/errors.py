"""Exception types shared across the toolkit."""

from __future__ import annotations


class PedvqaError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(PedvqaError, ValueError):
    """Bad input data or configuration.

    ``field`` names the offending field when known, so callers (and the
    HTTP layer) can point at what to fix.
    """

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field


class InsufficientHistoryError(PedvqaError):
    """A track does not yet have enough detections to answer the query.

    Deliberately not a ValidationError: the input is well formed, there is
    just not enough of it yet. Callers may skip the frame.
    """


class ManifestError(ValidationError):
    """A manifest or corpus file failed to parse or validate.

    Carries the list of individual violations (each mentioning the frame
    and field concerned) and, for parse failures, a line number.
    """

    def __init__(self, message: str, *, line: int | None = None,
                 violations: list[str] | None = None):
        super().__init__(message)
        self.line = line
        self.violations = violations or []


class TransportError(PedvqaError):
    """A remote endpoint could not be reached after retries."""
