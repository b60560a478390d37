"""Exception hierarchy shared by every module."""


class GphaError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(GphaError, ValueError):
    """A parameter is outside the domain an operation accepts."""


class InvalidInputError(GphaError, ValueError):
    """Input data is malformed or violates a structural precondition."""


class BudgetExceededError(GphaError):
    """A computation would exceed its configured size budget."""

    def __init__(self, message: str, required: int, budget: int):
        super().__init__(message)
        self.required = required
        self.budget = budget


class InvariantViolation(GphaError, RuntimeError):
    """A mathematically forced identity failed: this signals a bug, not bad data."""
