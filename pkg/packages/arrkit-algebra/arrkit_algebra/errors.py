"""Exceptions raised by the algebra package."""


class FieldError(ValueError):
    """Invalid field specification, or operands from different fields."""


class MatrixSizeError(RuntimeError):
    """Matrix exceeds the configured entry cap."""

    def __init__(self, entries: int, cap: int):
        super().__init__(f"Matrix has {entries} entries, cap is {cap}")
        self.entries = entries
        self.cap = cap
