"""
Arrkit Algebra - exact arithmetic for arrangement invariants.

A small substrate of exact fields (Q, number fields, F_p, F_{p^s}),
sparse Laurent polynomials, ranks over fields and integer Smith
normal forms.

Example:
    from arrkit_algebra import FieldSpec, field_build, FieldMatrix, ff_rank

    f5 = field_build(FieldSpec.prime(5))
    ff_rank(FieldMatrix.from_ints(f5, [[1, 2], [2, 4]]))   # 1
"""

from arrkit_algebra.core import (
    FieldFactory,
    FieldInterface,
    FieldKind,
    FieldSpec,
    FiniteFieldInterface,
    field_build,
)
from arrkit_algebra.errors import FieldError, MatrixSizeError
from arrkit_algebra.laurent import LaurentPoly
from arrkit_algebra.linalg import (
    DEFAULT_SNF_CAP,
    FieldMatrix,
    SmithResult,
    batched_rank,
    ff_rank,
    rank_mod_prime,
    rank_over_field,
    snf,
)
from arrkit_algebra.ntheory import (
    divisors,
    euler_phi,
    is_prime,
    moebius,
    multiplicative_order,
    primes_congruent_one,
    root_of_unity_mod,
)

__version__ = "0.1.0"

__all__ = [
    # Fields
    "FieldFactory",
    "FieldInterface",
    "FiniteFieldInterface",
    "FieldKind",
    "FieldSpec",
    "field_build",
    # Errors
    "FieldError",
    "MatrixSizeError",
    # Polynomials
    "LaurentPoly",
    # Linear algebra
    "DEFAULT_SNF_CAP",
    "FieldMatrix",
    "SmithResult",
    "batched_rank",
    "ff_rank",
    "rank_mod_prime",
    "rank_over_field",
    "snf",
    # Number theory
    "divisors",
    "euler_phi",
    "is_prime",
    "moebius",
    "multiplicative_order",
    "primes_congruent_one",
    "root_of_unity_mod",
]
