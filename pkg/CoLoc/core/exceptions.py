"""CoLoc exception hierarchy."""

from __future__ import annotations


class ColocError(Exception):
    """Base exception for all CoLoc errors."""


class UsageError(ColocError):
    """Raised when an operation is called outside its preconditions."""


class FieldError(ColocError):
    """Raised when a prime field cannot be built or used."""


class FieldTooSmallError(FieldError):
    """Raised when a construction needs more distinct field elements than exist."""

    def __init__(self, required: int, available: int, what: str = "construction") -> None:
        self.required = int(required)
        self.available = int(available)
        super().__init__(
            f"field too small for {what}: needs at least {self.required} elements, GF({self.available}) has {self.available}"
        )


class DivisionByZeroError(FieldError):
    """Raised when inverting the zero element."""


class DecodingError(ColocError):
    """Raised when worker responses cannot be decoded."""


class InconsistencyError(DecodingError):
    """Raised when extra samples disagree with the interpolated curve."""


class InsufficientResponsesError(DecodingError):
    """Raised when fewer responses arrived than the decoder needs."""


class BudgetExceededError(ColocError):
    """Raised when a brute-force search would exceed its configured budget."""


class ScenarioError(ColocError):
    """Raised when a scenario payload fails validation."""
