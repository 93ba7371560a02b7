"""Exception and warning types shared across the package."""
from __future__ import annotations


class ValidationError(ValueError):
    """Invalid input value. ``field`` names the offending input."""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")

    def qualified(self, prefix: str) -> "ValidationError":
        return ValidationError(f"{prefix}.{self.field}", self.message)


class NegativeRealRateWarning(UserWarning):
    """Inflation exceeds the nominal interest rate."""


class PartialCycleWarning(UserWarning):
    """Project horizon is not a whole number of equipment lifetimes."""


class EmptyRankingWarning(UserWarning):
    """No approach survived the accuracy gate."""
