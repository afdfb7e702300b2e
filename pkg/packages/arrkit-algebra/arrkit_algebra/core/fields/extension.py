"""
Extension fields F_{p^s} = F_p[x]/(m) with integer-code elements.

An element c_0 + c_1 x + ... + c_{s-1} x^{s-1} is stored as the integer
c_0 + c_1 p + ... + c_{s-1} p^{s-1}. Multiplication goes through
discrete log / antilog tables built from a primitive element, so the
field must stay small (q = p^s <= 2^16).
"""

from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint

from arrkit_algebra.core.interfaces import FiniteFieldInterface
from arrkit_algebra.errors import FieldError

MAX_ORDER = 1 << 16
ADD_TABLE_LIMIT = 1024


class ExtensionField(FiniteFieldInterface):
    """
    F_{p^s} built from a monic irreducible polynomial.

    Args:
        p: Characteristic (prime)
        min_poly: Ascending coefficients (c0, ..., c_s) with c_s = 1
    """

    def __init__(self, p: int, min_poly: Sequence[int]):
        self.p = p
        self.min_poly: Tuple[int, ...] = tuple(int(c) % p for c in min_poly)
        self.s = len(self.min_poly) - 1
        self.q = p**self.s
        if self.q > MAX_ORDER:
            raise FieldError(f"F_{p}^{self.s} has {self.q} elements, limit is {MAX_ORDER}")
        self._powers = np.array([p**i for i in range(self.s)], dtype=np.int64)
        self._build_tables()

    # ----------------------------------------------------------------------
    # Table construction
    # ----------------------------------------------------------------------

    def _digits(self, code: int) -> List[int]:
        out = []
        for _ in range(self.s):
            out.append(code % self.p)
            code //= self.p
        return out

    def _encode(self, digits: Sequence[int]) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + (d % self.p)
        return code

    def _poly_mul(self, a: Sequence[int], b: Sequence[int]) -> List[int]:
        p, s = self.p, self.s
        prod = [0] * (2 * s - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce using x^s = -(c_0 + ... + c_{s-1} x^{s-1})
        for k in range(len(prod) - 1, s - 1, -1):
            lead = prod[k]
            if lead:
                prod[k] = 0
                for i in range(s):
                    prod[k - s + i] = (prod[k - s + i] - lead * self.min_poly[i]) % p
        return prod[:s]

    def _element_order(self, digits: Sequence[int]) -> int:
        group_order = self.q - 1
        order = group_order
        for prime in factorint(group_order):
            while order % prime == 0 and self._power_digits(digits, order // prime) == self._unit_digits():
                order //= prime
        return order

    def _unit_digits(self) -> List[int]:
        return [1 % self.p] + [0] * (self.s - 1)

    def _power_digits(self, digits: Sequence[int], k: int) -> List[int]:
        result = self._unit_digits()
        base = list(digits)
        while k:
            if k & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            k >>= 1
        return result

    def _build_tables(self) -> None:
        q = self.q
        generator = None
        for code in range(1, q):
            digits = self._digits(code)
            if self._element_order(digits) == q - 1:
                generator = digits
                break
        if generator is None:
            raise FieldError(f"min_poly {list(self.min_poly)} does not define a field")

        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        current = self._unit_digits()
        for k in range(q - 1):
            code = self._encode(current)
            exp[k] = code
            log[code] = k
            current = self._poly_mul(current, generator)
        if (log[1:] < 0).any():
            raise FieldError(f"min_poly {list(self.min_poly)} is not irreducible")

        self.exp_table = exp
        self.log_table = log
        self.digit_table = np.array([self._digits(c) for c in range(q)], dtype=np.int64)
        self.neg_table = (((-self.digit_table) % self.p) @ self._powers).astype(np.int64)
        inv = np.zeros(q, dtype=np.int64)
        inv[exp] = exp[(-np.arange(q - 1)) % (q - 1)]
        self.inv_table = inv
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()

    @cached_property
    def add_table(self) -> Optional[np.ndarray]:
        """Full q x q addition table, only for q <= ADD_TABLE_LIMIT."""
        if self.q > ADD_TABLE_LIMIT:
            return None
        d = self.digit_table
        summed = (d[:, None, :] + d[None, :, :]) % self.p
        return (summed @ self._powers).astype(np.int64)

    # ----------------------------------------------------------------------
    # Scalar contract
    # ----------------------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> Optional[int]:
        return self.q

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    @property
    def generator(self) -> int:
        """The class of x."""
        return self.p if self.s > 1 else 0

    def add(self, a, b):
        return self._encode([x + y for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        return int(self.neg_table[a])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp_list[(self._log_list[a] + self._log_list[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.q}")
        return int(self.inv_table[a])

    def from_int(self, k: int) -> int:
        return k % self.p

    def contains(self, a) -> bool:
        return isinstance(a, (int, np.integer)) and 0 <= a < self.q

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def primitive_root_of_unity(self, order: int) -> int:
        if (self.q - 1) % order:
            return super().primitive_root_of_unity(order)
        return self._exp_list[(self.q - 1) // order]

    # ----------------------------------------------------------------------
    # Vectorized arithmetic
    # ----------------------------------------------------------------------

    def np_add(self, a, b):
        table = self.add_table
        if table is not None:
            return table[a, b]
        d = (self.digit_table[a] + self.digit_table[b]) % self.p
        return d @ self._powers

    def np_neg(self, a):
        return self.neg_table[a]

    def np_mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        nonzero = (a != 0) & (b != 0)
        logs = (self.log_table[a] + self.log_table[b]) % (self.q - 1)
        return np.where(nonzero, self.exp_table[logs], 0)

    def np_inv(self, a):
        return self.inv_table[a]

    def np_from_int(self, k):
        return np.asarray(k, dtype=np.int64) % self.p

    def __repr__(self) -> str:
        return f"ExtensionField({self.p}, {list(self.min_poly)})"
