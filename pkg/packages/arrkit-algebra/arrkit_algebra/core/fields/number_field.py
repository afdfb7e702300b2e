"""Number fields Q[x]/(m) with elements as coefficient tuples."""

from fractions import Fraction
from typing import Optional, Sequence, Tuple

from sympy import factorint

from arrkit_algebra.core.interfaces import FieldInterface

Element = Tuple[Fraction, ...]


class NumberField(FieldInterface):
    """
    Q[x]/(m) for a monic irreducible m of degree d.

    Elements are d-tuples of Fractions (ascending powers of x). Only small
    degrees are expected (Q(omega), Q(i), cyclotomic fields of degree <= 8).
    """

    def __init__(self, min_poly: Sequence[Fraction]):
        self.min_poly: Tuple[Fraction, ...] = tuple(Fraction(c) for c in min_poly)
        self.d = len(self.min_poly) - 1

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def order(self) -> Optional[int]:
        return None

    @property
    def zero(self) -> Element:
        return (Fraction(0),) * self.d

    @property
    def one(self) -> Element:
        return (Fraction(1),) + (Fraction(0),) * (self.d - 1)

    @property
    def generator(self) -> Element:
        """The class of x."""
        if self.d == 1:
            return (-self.min_poly[0],)
        return (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.d - 2)

    def element(self, coeffs: Sequence) -> Element:
        """Reduce an arbitrary-length ascending coefficient list."""
        return self._reduce([Fraction(c) for c in coeffs])

    def _reduce(self, coeffs) -> Element:
        coeffs = list(coeffs) + [Fraction(0)] * max(0, self.d - len(coeffs))
        for k in range(len(coeffs) - 1, self.d - 1, -1):
            lead = coeffs[k]
            if lead:
                coeffs[k] = Fraction(0)
                for i in range(self.d):
                    coeffs[k - self.d + i] -= lead * self.min_poly[i]
        return tuple(coeffs[: self.d])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        prod = [Fraction(0)] * (2 * self.d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        return self._reduce(prod)

    def inv(self, a):
        """Solve (multiplication by a) . v = 1 by exact elimination."""
        if not any(a):
            raise ZeroDivisionError("inverse of zero in a number field")
        d = self.d
        basis = [self._reduce([Fraction(0)] * k + [Fraction(1)]) for k in range(d)]
        columns = [self.mul(a, e) for e in basis]
        # augmented system rows: sum_k v_k * columns[k][i] = one[i]
        rows = [[columns[k][i] for k in range(d)] + [self.one[i]] for i in range(d)]
        for col in range(d):
            pivot = next(r for r in range(col, d) if rows[r][col] != 0)
            rows[col], rows[pivot] = rows[pivot], rows[col]
            scale = rows[col][col]
            rows[col] = [x / scale for x in rows[col]]
            for r in range(d):
                if r != col and rows[r][col] != 0:
                    factor = rows[r][col]
                    rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
        return tuple(rows[i][d] for i in range(d))

    def from_int(self, k: int) -> Element:
        return (Fraction(k),) + (Fraction(0),) * (self.d - 1)

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == self.d
            and all(isinstance(x, Fraction) for x in a)
        )

    def primitive_root_of_unity(self, order: int) -> Element:
        """
        Search +-x^j for an element of exact order `order`.

        Covers the cyclotomic presentations this package builds.
        """
        if order in (1, 2):
            return self.from_int(1 if order == 1 else -1)
        primes = list(factorint(order))
        for j in range(1, 2 * order + 1):
            for sign in (1, -1):
                candidate = self.power(self.generator, j)
                if sign < 0:
                    candidate = self.neg(candidate)
                if self.power(candidate, order) != self.one:
                    continue
                if all(self.power(candidate, order // r) != self.one for r in primes):
                    return candidate
        return super().primitive_root_of_unity(order)

    def __repr__(self) -> str:
        return f"NumberField({[str(c) for c in self.min_poly]})"
