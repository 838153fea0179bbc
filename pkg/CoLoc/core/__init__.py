"""Core abstractions for CoLoc."""

from .exceptions import (
    BudgetExceededError,
    ColocError,
    DecodingError,
    DivisionByZeroError,
    FieldError,
    FieldTooSmallError,
    InconsistencyError,
    InsufficientResponsesError,
    ScenarioError,
    UsageError,
)
from .settings import RuntimeSettings, load_runtime_settings

__all__ = [
    "ColocError",
    "UsageError",
    "FieldError",
    "FieldTooSmallError",
    "DivisionByZeroError",
    "DecodingError",
    "InconsistencyError",
    "InsufficientResponsesError",
    "BudgetExceededError",
    "ScenarioError",
    "RuntimeSettings",
    "load_runtime_settings",
]
