"""
FieldFactory - Factory for creating field instances.

Provides a centralized way to build exact fields from a FieldSpec,
with lazy loading of the concrete implementations.
"""

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Optional, Tuple

from sympy import Poly, QQ, Rational, factorint, isprime, symbols

from arrkit_algebra.errors import FieldError

if TYPE_CHECKING:
    from arrkit_algebra.core.interfaces import FieldInterface

_X = symbols("x")


class FieldKind(Enum):
    """
    Available field kinds.

    - RATIONALS: Q, exact Fractions.
    - NUMBER_FIELD: Q[x]/(m) for a monic irreducible m of small degree.
    - PRIME_FIELD: F_p.
    - EXTENSION_FIELD: F_p[x]/(m), a field with p**s elements.
    """

    RATIONALS = "rationals"
    NUMBER_FIELD = "number-field"
    PRIME_FIELD = "prime-field"
    EXTENSION_FIELD = "extension-field"


@dataclass(frozen=True)
class FieldSpec:
    """
    Declarative description of a field.

    Coefficient tuples are in ascending degree order: (c0, c1, ..., cd)
    stands for c0 + c1*x + ... + cd*x**d, with cd = 1.
    """

    kind: FieldKind
    modulus: Optional[int] = None
    min_poly: Optional[Tuple[Fraction, ...]] = None

    @property
    def degree(self) -> int:
        if self.min_poly is None:
            return 1
        return len(self.min_poly) - 1

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME_FIELD, modulus=p)

    @classmethod
    def number_field(cls, min_poly) -> "FieldSpec":
        return cls(
            FieldKind.NUMBER_FIELD,
            min_poly=tuple(Fraction(c) for c in min_poly),
        )

    @classmethod
    def extension(cls, p: int, degree: int, min_poly=None) -> "FieldSpec":
        """
        F_{p^degree}. When min_poly is omitted, the first monic irreducible
        polynomial (in lexicographic coefficient order) having x as a
        primitive element is used, so the choice is reproducible.
        """
        if degree == 1:
            return cls.prime(p)
        if min_poly is None:
            min_poly = default_min_poly(p, degree)
        return cls(
            FieldKind.EXTENSION_FIELD,
            modulus=p,
            min_poly=tuple(Fraction(int(c) % p) for c in min_poly),
        )

    def validate(self) -> None:
        """
        Check the spec invariants.

        Raises:
            FieldError: If the modulus is not prime or min_poly is not
                monic irreducible over the base field
        """
        if self.kind in (FieldKind.PRIME_FIELD, FieldKind.EXTENSION_FIELD):
            if self.modulus is None or not isprime(self.modulus):
                raise FieldError(f"Field modulus {self.modulus} is not prime")
        if self.kind in (FieldKind.NUMBER_FIELD, FieldKind.EXTENSION_FIELD):
            if not self.min_poly or len(self.min_poly) < 2:
                raise FieldError("An extension needs a min_poly of degree >= 1")
            if self.min_poly[-1] != 1:
                raise FieldError(f"min_poly {list(self.min_poly)} is not monic")
            if self.degree > 8:
                raise FieldError(f"min_poly degree {self.degree} exceeds 8")
            if not _is_irreducible(self.min_poly, self.modulus):
                base = "Q" if self.modulus is None else f"F_{self.modulus}"
                raise FieldError(
                    f"min_poly {list(self.min_poly)} is reducible over {base}"
                )


def _to_poly(coeffs, modulus: Optional[int]) -> Poly:
    expr = sum(
        Rational(Fraction(c).numerator, Fraction(c).denominator) * _X**i
        for i, c in enumerate(coeffs)
    )
    if modulus is None:
        return Poly(expr, _X, domain=QQ)
    return Poly([int(c) % modulus for c in reversed(coeffs)], _X, modulus=modulus)


def _is_irreducible(coeffs, modulus: Optional[int]) -> bool:
    poly = _to_poly(coeffs, modulus)
    if poly.degree() == 1:
        return True
    return bool(poly.is_irreducible)


def _x_is_primitive(coeffs, p: int) -> bool:
    """True when x generates the multiplicative group of F_p[x]/(coeffs)."""
    degree = len(coeffs) - 1
    order = p**degree - 1
    modulus = _to_poly(coeffs, p)
    x = Poly(_X, _X, modulus=p)
    for prime in factorint(order):
        if (x ** (order // prime)).rem(modulus) == Poly(1, _X, modulus=p):
            return False
    return True


@lru_cache(maxsize=64)
def default_min_poly(p: int, degree: int) -> Tuple[int, ...]:
    """First monic irreducible of the given degree with x primitive."""
    for tail in itertools.product(range(p), repeat=degree):
        coeffs = tuple(reversed(tail)) + (1,)
        if coeffs[0] == 0:
            continue
        if _is_irreducible(coeffs, p) and _x_is_primitive(coeffs, p):
            return coeffs
    raise FieldError(f"No primitive polynomial of degree {degree} over F_{p}")


class FieldFactory:
    """
    Factory for creating field instances based on the spec kind.

    Uses lazy loading so that only the requested implementation is
    imported.

    Example:
        from arrkit_algebra.core.factory import FieldFactory, FieldSpec

        # F_4 as F_2[x]/(x^2 + x + 1)
        f4 = FieldFactory.create_field(FieldSpec.extension(2, 2, (1, 1, 1)))

        # Q(omega), omega a primitive cube root of unity
        q_omega = FieldFactory.create_field(FieldSpec.number_field((1, 1, 1)))
    """

    @staticmethod
    def create_field(spec: FieldSpec) -> "FieldInterface":
        """
        Build the field described by spec.

        Args:
            spec: A FieldSpec

        Returns:
            A field handle implementing FieldInterface

        Raises:
            FieldError: If the spec is invalid
        """
        spec.validate()
        return _create_cached(spec)


@lru_cache(maxsize=128)
def _create_cached(spec: FieldSpec) -> "FieldInterface":
    if spec.kind == FieldKind.RATIONALS:
        from arrkit_algebra.core.fields.rational import RationalField

        return RationalField()

    elif spec.kind == FieldKind.PRIME_FIELD:
        from arrkit_algebra.core.fields.prime import PrimeField

        return PrimeField(spec.modulus)

    elif spec.kind == FieldKind.EXTENSION_FIELD:
        from arrkit_algebra.core.fields.extension import ExtensionField

        return ExtensionField(spec.modulus, tuple(int(c) for c in spec.min_poly))

    elif spec.kind == FieldKind.NUMBER_FIELD:
        from arrkit_algebra.core.fields.number_field import NumberField

        return NumberField(spec.min_poly)

    else:
        raise FieldError(f"Unknown field kind: {spec.kind}")


def field_build(spec: FieldSpec) -> "FieldInterface":
    """Functional alias of FieldFactory.create_field."""
    return FieldFactory.create_field(spec)
