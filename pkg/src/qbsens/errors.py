"""Exception hierarchy shared across the package."""

from __future__ import annotations


class QBSensError(Exception):
    """Base class for every error raised by qbsens."""


class ParseError(QBSensError, ValueError):
    """A data row could not be parsed."""

    def __init__(self, message: str, row: int | None = None) -> None:
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class DuplicateKeyError(ParseError):
    """Two records share the same (season, team) key."""


class ValidationError(ParseError):
    """A stat line violates one of its invariants."""

    def __init__(self, message: str, field: str, row: int | None = None) -> None:
        self.field = field
        self.detail = message
        super().__init__(f"{field}: {message}", row)


class DegenerateLineError(QBSensError, ValueError):
    """A stat line lacks the denominator a computation needs (e.g. zero attempts)."""


class InfeasibleScenarioError(QBSensError, ValueError):
    """Applying a scenario would produce an inconsistent stat line."""


class InsufficientDataError(QBSensError, ValueError):
    """Too few observations for the requested statistic."""


class InputError(QBSensError, ValueError):
    """Caller asked for something the inputs cannot provide."""
