"""
LaurentPoly - Sparse multivariate Laurent polynomials over Z.

Elements of Z[t_1^{+-1}, ..., t_n^{+-1}] stored as a map from integer
exponent vectors (negative entries kept literally) to nonzero integer
coefficients. Values are immutable and hashable so they can live inside
frozen matrices and cache keys.
"""

from typing import Any, Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from arrkit_algebra.core.interfaces import FieldInterface

Exponent = Tuple[int, ...]


class LaurentPoly:
    """
    Immutable sparse Laurent polynomial with integer coefficients.

    Example:
        t1 = LaurentPoly.var(2, 0)
        t2 = LaurentPoly.var(2, 1)
        p = t1 * (t2 - 1)           # t1*t2 - t1
        p.evaluate(field, [2, 3])   # field element 2*3 - 2
    """

    __slots__ = ("n_vars", "_terms", "_hash")

    def __init__(self, n_vars: int, terms: Mapping[Exponent, int] = ()):
        cleaned: Dict[Exponent, int] = {}
        for exps, coeff in dict(terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n_vars:
                raise ValueError(f"Exponent {exps} has length {len(exps)}, expected {n_vars}")
            if coeff:
                cleaned[exps] = int(coeff)
        self.n_vars = n_vars
        self._terms = cleaned
        self._hash = None

    # ----------------------------------------------------------------------
    # Constructors
    # ----------------------------------------------------------------------

    @classmethod
    def zero(cls, n_vars: int) -> "LaurentPoly":
        return cls(n_vars)

    @classmethod
    def constant(cls, n_vars: int, c: int) -> "LaurentPoly":
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def one(cls, n_vars: int) -> "LaurentPoly":
        return cls.constant(n_vars, 1)

    @classmethod
    def var(cls, n_vars: int, index: int, power: int = 1) -> "LaurentPoly":
        """t_{index+1}**power (0-based index)."""
        exps = [0] * n_vars
        exps[index] = power
        return cls(n_vars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): coeff})

    # ----------------------------------------------------------------------
    # Inspection
    # ----------------------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Exponent, int]]:
        """Terms in canonical (sorted exponent) order."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_part(self) -> int:
        """Value at t = (1, ..., 1): the sum of all coefficients."""
        return sum(self._terms.values())

    def linear_part(self) -> Tuple[int, ...]:
        """
        Degree-1 part under t_i -> 1 - lambda_i.

        A term c*t^a contributes -c*a_k to the lambda_k coefficient; a
        negative power t_i^{-1} = 1 + lambda_i + ... agrees with the same
        rule, so no case split is needed.
        """
        out = [0] * self.n_vars
        for exps, coeff in self._terms.items():
            for k, e in enumerate(exps):
                if e:
                    out[k] -= coeff * e
        return tuple(out)

    # ----------------------------------------------------------------------
    # Arithmetic
    # ----------------------------------------------------------------------

    def _coerce(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.n_vars != self.n_vars:
                raise ValueError(
                    f"Cannot combine Laurent polynomials in {self.n_vars} and {other.n_vars} variables"
                )
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.n_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            terms[exps] = terms.get(exps, 0) + coeff
        return LaurentPoly(self.n_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.n_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                terms[exps] = terms.get(exps, 0) + c1 * c2
        return LaurentPoly(self.n_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        """Non-negative powers, or any power of a monomial."""
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("Only monomials are invertible in the Laurent ring")
            (exps, coeff), = self._terms.items()
            if abs(coeff) != 1:
                raise ValueError(f"Monomial with coefficient {coeff} is not a unit")
            return LaurentPoly(self.n_vars, {tuple(e * k for e in exps): coeff ** (-k)})
        result = LaurentPoly.one(self.n_vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(self.n_vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n_vars == other.n_vars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n_vars, frozenset(self._terms.items())))
        return self._hash

    # ----------------------------------------------------------------------
    # Evaluation
    # ----------------------------------------------------------------------

    def evaluate(self, field: FieldInterface, point: Sequence[Any]) -> Any:
        """
        Value at t = point in the given field.

        Args:
            field: Field handle
            point: n nonzero field elements

        Raises:
            ZeroDivisionError: If a zero coordinate meets a negative exponent
        """
        total = field.zero
        for exps, coeff in self._terms.items():
            value = field.from_int(coeff)
            for base, e in zip(point, exps):
                if e:
                    value = field.mul(value, field.power(base, e))
            total = field.add(total, value)
        return total

    def evaluate_exponents(self, exponents: Sequence[int], order: int) -> List[Tuple[int, int]]:
        """
        Collect the terms at t_i = xi**exponents[i] for xi of the given order.

        Returns (coefficient, power of xi mod order) pairs, merged by power.
        Used to assemble character evaluations without field arithmetic.
        """
        acc: Dict[int, int] = {}
        for exps, coeff in self._terms.items():
            power = sum(a * e for a, e in zip(exps, exponents)) % order
            acc[power] = acc.get(power, 0) + coeff
        return [(c, k) for k, c in sorted(acc.items()) if c]

    # ----------------------------------------------------------------------
    # Display / serialization
    # ----------------------------------------------------------------------

    def to_json(self) -> List[List[Any]]:
        return [[list(e), c] for e, c in self.items()]

    @classmethod
    def from_json(cls, n_vars: int, data: Iterable) -> "LaurentPoly":
        return cls(n_vars, {tuple(e): c for e, c in data})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, coeff in sorted(self._terms.items(), reverse=True):
            factors = []
            for k, e in enumerate(exps):
                if e == 1:
                    factors.append(f"t{k + 1}")
                elif e:
                    factors.append(f"t{k + 1}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"
