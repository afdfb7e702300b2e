import random
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from arrkit_algebra import (
    FieldError,
    FieldMatrix,
    FieldSpec,
    MatrixSizeError,
    batched_rank,
    ff_rank,
    field_build,
    rank_mod_prime,
    rank_over_field,
    snf,
)


def test_identity_and_zero_ranks():
    f5 = field_build(FieldSpec.prime(5))
    assert ff_rank(FieldMatrix.from_ints(f5, np.eye(3, dtype=int).tolist())) == 3
    assert ff_rank(FieldMatrix.from_ints(f5, [[0] * 4, [0] * 4])) == 0


def test_rank_depends_on_characteristic():
    rows = [[1, 1], [1, -1]]
    f2 = field_build(FieldSpec.prime(2))
    f3 = field_build(FieldSpec.prime(3))
    assert ff_rank(FieldMatrix.from_ints(f2, rows)) == 1
    assert ff_rank(FieldMatrix.from_ints(f3, rows)) == 2


def test_mixed_field_entries_rejected(f4):
    f5 = field_build(FieldSpec.prime(5))
    with pytest.raises(FieldError):
        ff_rank(FieldMatrix(f4, ((1, 4), (2, 3))))
    with pytest.raises(FieldError):
        ff_rank(FieldMatrix(f5, ((Fraction(1, 2), 1),)))


def test_rank_over_extension_field(f4):
    xi = f4.generator
    xi2 = f4.mul(xi, xi)
    # rows (1, xi) and (xi, xi^2) are proportional
    m = FieldMatrix(f4, ((1, xi), (xi, xi2), (0, 1)))
    assert ff_rank(m) == 2
    assert ff_rank(FieldMatrix(f4, ((1, xi), (xi, xi2)))) == 1


def test_batched_rank_matches_scalar_elimination(f7):
    rng = np.random.default_rng(3)
    mats = rng.integers(0, 7, size=(40, 5, 4))
    mats[::3, 2] = mats[::3, 0]  # force some rank drops
    ranks = batched_rank(f7, mats)
    for k in range(len(mats)):
        assert ranks[k] == rank_over_field(f7, mats[k].tolist())


def test_rank_over_number_field():
    q_i = field_build(FieldSpec.number_field((1, 0, 1)))
    i = q_i.generator
    one = q_i.one
    # [[1, i], [i, -1]] has rank 1 since row2 = i*row1
    rows = [[one, i], [i, q_i.from_int(-1)]]
    assert ff_rank(FieldMatrix(q_i, tuple(map(tuple, rows)))) == 1


def test_reduction_never_raises_rank():
    """rank mod l <= rank over Q, with equality for almost all l"""
    rng = random.Random(11)
    q = field_build(FieldSpec.rationals())
    primes = [2, 3, 5, 7, 11, 13, 101]
    for _ in range(20):
        rows = [[rng.randint(-6, 6) for _ in range(5)] for _ in range(4)]
        rank_q = rank_over_field(q, [[Fraction(x) for x in r] for r in rows])
        mod_ranks = [rank_mod_prime(rows, field_build(FieldSpec.prime(p))) for p in primes]
        assert all(r <= rank_q for r in mod_ranks)
        assert mod_ranks[-1] == rank_q or mod_ranks[-2] == rank_q


def test_snf_examples():
    assert snf([[2, 0], [0, 3]]).factors == (1, 6)
    assert snf(np.eye(4, dtype=int).tolist()).factors == (1, 1, 1, 1)
    assert snf([[2, 4], [6, 8]]).factors == (2, 4)
    assert snf([[0, 0], [0, 0]]).factors == ()


def test_snf_sparse_input_and_cokernel():
    # Z^3 / <(2, 0, 0), (0, 4, 0)> = Z + Z2 + Z4
    result = snf({(0, 0): 2, (1, 1): 4}, shape=(2, 3))
    assert result.factors == (2, 4)
    assert result.cokernel() == (1, (2, 4))


def test_snf_size_cap():
    with pytest.raises(MatrixSizeError):
        snf([[1] * 10] * 10, cap=50)


def test_snf_cap_counts_stored_entries_and_remainder():
    # 10^6 cells but only 1000 stored, all unit pivots
    identity = {(i, i): 1 for i in range(1000)}
    assert snf(identity, shape=(1000, 1000), cap=5000).factors == (1,) * 1000
    # 100 stored, but no unit pivots leaves a 100x100 dense block
    doubled = {(i, i): 2 for i in range(100)}
    with pytest.raises(MatrixSizeError) as excinfo:
        snf(doubled, shape=(100, 100), cap=500)
    assert excinfo.value.entries == 100 * 100


def test_snf_against_sympy():
    rng = random.Random(5)
    for _ in range(25):
        rows = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        m = Matrix(rows)
        ours = snf(rows)
        if m.det() == 0:
            continue
        expected = tuple(int(abs(f)) for f in invariant_factors(m, domain=ZZ))
        assert ours.factors == expected
        assert abs(m.det()) == np.prod(ours.factors, dtype=object)


def test_snf_chain_and_rank_on_rectangular_matrices():
    """rank over Q equals the number of nonzero invariant factors"""
    rng = random.Random(8)
    q = field_build(FieldSpec.rationals())
    for _ in range(25):
        rows = [[rng.choice([0, 0, 1, -1, 2, 3, 6]) for _ in range(6)] for _ in range(4)]
        result = snf(rows)
        assert result.rank == rank_over_field(q, [[Fraction(x) for x in r] for r in rows])
        for a, b in zip(result.factors, result.factors[1:]):
            assert b % a == 0
        if result.factors:
            entries_gcd = 0
            for r in rows:
                for x in r:
                    entries_gcd = gcd(entries_gcd, x)
            assert result.factors[0] == entries_gcd
