"""Field of rational numbers with Fraction elements."""

from fractions import Fraction
from typing import Optional

from arrkit_algebra.core.interfaces import FieldInterface


class RationalField(FieldInterface):
    """Q, with elements stored as fractions.Fraction."""

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def order(self) -> Optional[int]:
        return None

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def from_int(self, k: int) -> Fraction:
        return Fraction(k)

    def contains(self, a) -> bool:
        return isinstance(a, (Fraction, int)) and not isinstance(a, bool)

    def primitive_root_of_unity(self, order: int):
        if order == 1:
            return Fraction(1)
        if order == 2:
            return Fraction(-1)
        return super().primitive_root_of_unity(order)

    def __repr__(self) -> str:
        return "RationalField()"
