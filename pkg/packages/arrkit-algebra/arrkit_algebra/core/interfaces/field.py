"""
FieldInterface - Abstract contract for exact fields.

All concrete fields (rationals, number fields, prime fields, extension
fields) implement this interface so that rank computations and matrix
evaluation can be written once, independent of how elements are stored.
"""

from abc import ABC, abstractmethod
from typing import Any, Iterator, Optional


class FieldInterface(ABC):
    """
    Abstract base class for field handles.

    Elements are opaque, hashable Python values owned by the field that
    produced them. Never mix elements of two different fields; use
    `contains` to check membership before arithmetic.

    Example:
        field = FieldFactory.create_field(FieldSpec.prime(5))
        x = field.from_int(3)
        y = field.inv(x)          # 2, since 3 * 2 = 6 = 1 mod 5
        assert field.eq(field.mul(x, y), field.one)
    """

    # ----------------------------------------------------------------------
    # Identity
    # ----------------------------------------------------------------------

    @property
    @abstractmethod
    def characteristic(self) -> int:
        """Field characteristic (0 for characteristic-zero fields)."""
        pass

    @property
    @abstractmethod
    def order(self) -> Optional[int]:
        """Number of elements, or None for infinite fields."""
        pass

    @property
    @abstractmethod
    def zero(self) -> Any:
        pass

    @property
    @abstractmethod
    def one(self) -> Any:
        pass

    # ----------------------------------------------------------------------
    # Arithmetic
    # ----------------------------------------------------------------------

    @abstractmethod
    def add(self, a: Any, b: Any) -> Any:
        pass

    @abstractmethod
    def neg(self, a: Any) -> Any:
        pass

    @abstractmethod
    def mul(self, a: Any, b: Any) -> Any:
        pass

    @abstractmethod
    def inv(self, a: Any) -> Any:
        """
        Multiplicative inverse.

        Raises:
            ZeroDivisionError: If a is zero
        """
        pass

    @abstractmethod
    def from_int(self, k: int) -> Any:
        """Image of the integer k under the canonical ring map Z -> field."""
        pass

    @abstractmethod
    def contains(self, a: Any) -> bool:
        """True if a is a valid element representation for this field."""
        pass

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def div(self, a: Any, b: Any) -> Any:
        return self.mul(a, self.inv(b))

    def eq(self, a: Any, b: Any) -> bool:
        return a == b

    def is_zero(self, a: Any) -> bool:
        return self.eq(a, self.zero)

    def power(self, a: Any, k: int) -> Any:
        """a**k by square-and-multiply; negative k inverts first."""
        if k < 0:
            a = self.inv(a)
            k = -k
        result = self.one
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    # ----------------------------------------------------------------------
    # Enumeration
    # ----------------------------------------------------------------------

    def elements(self) -> Iterator[Any]:
        """
        Enumerate every element (finite fields only).

        Raises:
            TypeError: If the field is infinite
        """
        raise TypeError(f"{type(self).__name__} is infinite and cannot be enumerated")

    def primitive_root_of_unity(self, order: int) -> Any:
        """
        An element of exact multiplicative order `order`.

        Raises:
            ValueError: If the field has no such element
        """
        raise ValueError(
            f"{type(self).__name__} has no primitive root of unity of order {order}"
        )


class FiniteFieldInterface(FieldInterface):
    """
    Finite field whose elements are small non-negative integer codes.

    Besides the scalar contract, finite fields expose numpy-vectorized
    arithmetic on int64 code arrays. The batched rank kernels rely only on
    these `np_*` methods, so any finite field can drive them.
    """

    @abstractmethod
    def np_add(self, a, b):
        pass

    @abstractmethod
    def np_neg(self, a):
        pass

    @abstractmethod
    def np_mul(self, a, b):
        pass

    @abstractmethod
    def np_inv(self, a):
        """Elementwise inverse; zero entries map to zero."""
        pass

    def np_sub(self, a, b):
        return self.np_add(a, self.np_neg(b))

    @abstractmethod
    def np_from_int(self, k):
        """Elementwise image of an integer array under Z -> field."""
        pass
