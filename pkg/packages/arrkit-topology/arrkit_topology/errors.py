"""Exceptions raised by the topology package."""


class ArrangementError(ValueError):
    """Invalid arrangement data: proportional forms, bad flats, unsupported input."""


class GenericityError(RuntimeError):
    """A generic slice or projection could not be found within the retry budget."""


class PresentationError(ValueError):
    """Malformed group presentation or braid word."""


class BudgetExceededError(RuntimeError):
    """An enumeration or matrix would exceed the configured budget."""

    def __init__(self, what: str, requested: int, budget: int):
        super().__init__(f"{what}: {requested} exceeds budget {budget}")
        self.what = what
        self.requested = requested
        self.budget = budget
