"""Prime fields F_p with integer-code elements."""

from functools import cached_property
from typing import Iterator, Optional

import numpy as np

from arrkit_algebra.core.interfaces import FiniteFieldInterface
from arrkit_algebra.ntheory import root_of_unity_mod

# Inverse lookup tables are built up to this modulus; above it the
# vectorized inverse falls back to Fermat exponentiation.
INVERSE_TABLE_LIMIT = 1 << 22

# (p - 1)**2 must fit in int64 for the vectorized product.
VECTOR_MODULUS_LIMIT = 1 << 31


class PrimeField(FiniteFieldInterface):
    """
    F_p with elements the integers 0..p-1.

    Args:
        p: A prime (validated by the factory)
    """

    def __init__(self, p: int):
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> Optional[int]:
        return self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(a, -1, self.p)

    def from_int(self, k: int) -> int:
        return k % self.p

    def contains(self, a) -> bool:
        return isinstance(a, (int, np.integer)) and 0 <= a < self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def primitive_root_of_unity(self, order: int) -> int:
        try:
            return root_of_unity_mod(order, self.p)
        except ValueError:
            return super().primitive_root_of_unity(order)

    # ----------------------------------------------------------------------
    # Vectorized arithmetic
    # ----------------------------------------------------------------------

    @cached_property
    def inv_table(self) -> np.ndarray:
        """inv_table[a] = a^-1 mod p, inv_table[0] = 0."""
        p = self.p
        table = np.zeros(p, dtype=np.int64)
        if p == 2:
            table[1] = 1
            return table
        g = root_of_unity_mod(p - 1, p)
        powers = np.empty(p - 1, dtype=np.int64)
        x = 1
        for k in range(p - 1):
            powers[k] = x
            x = (x * g) % p
        # g^k * g^(p-1-k) = 1
        table[powers] = powers[(-np.arange(p - 1)) % (p - 1)]
        return table

    def np_add(self, a, b):
        return (a + b) % self.p

    def np_neg(self, a):
        return (-a) % self.p

    def np_sub(self, a, b):
        return (a - b) % self.p

    def np_mul(self, a, b):
        if self.p >= VECTOR_MODULUS_LIMIT:
            raise OverflowError(f"F_{self.p} is too large for int64 kernels")
        return (a * b) % self.p

    def np_inv(self, a):
        if self.p <= INVERSE_TABLE_LIMIT:
            return self.inv_table[a]
        result = np.ones_like(a)
        base = a.copy()
        k = self.p - 2
        while k:
            if k & 1:
                result = (result * base) % self.p
            base = (base * base) % self.p
            k >>= 1
        return result

    def np_from_int(self, k):
        return np.asarray(k, dtype=np.int64) % self.p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"
