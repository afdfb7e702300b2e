import random

import pytest

from arrkit_algebra import FieldSpec, LaurentPoly, field_build


def _random_poly(rng, n_vars=3, n_terms=4):
    terms = {}
    for _ in range(n_terms):
        exps = tuple(rng.randint(-2, 2) for _ in range(n_vars))
        terms[exps] = rng.randint(-3, 3)
    return LaurentPoly(n_vars, terms)


def test_ring_axioms_on_random_triples():
    rng = random.Random(7)
    for _ in range(50):
        a, b, c = (_random_poly(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == LaurentPoly.zero(3)


def test_no_zero_coefficients_are_stored():
    t1 = LaurentPoly.var(2, 0)
    p = (t1 + 1) - t1
    assert p.terms == {(0, 0): 1}
    assert len(t1 - t1) == 0
    assert LaurentPoly(2, {(1, 0): 0}).is_zero()


def test_negative_exponents_are_literal():
    t1 = LaurentPoly.var(2, 0)
    inv = t1**-1
    assert inv.terms == {(-1, 0): 1}
    assert t1 * inv == 1
    with pytest.raises(ValueError):
        (t1 + 1) ** -1


def test_evaluate_over_prime_field(f7):
    t1 = LaurentPoly.var(2, 0)
    t2 = LaurentPoly.var(2, 1)
    p = t1 * (t2 - 1) + t2**-1
    # 3*(5-1) + 5^-1 = 12 + 3 = 15 = 1 mod 7
    assert p.evaluate(f7, [3, 5]) == 1


def test_evaluate_over_number_field():
    q_omega = field_build(FieldSpec.number_field((1, 1, 1)))
    omega = q_omega.primitive_root_of_unity(3)
    t = LaurentPoly.var(1, 0)
    cyclotomic = t * t + t + 1
    assert cyclotomic.evaluate(q_omega, [omega]) == q_omega.zero


def test_constant_and_linear_parts():
    """1 - t2 linearizes to lambda_2, t1^-1 - 1 to lambda_1"""
    t1 = LaurentPoly.var(2, 0)
    t2 = LaurentPoly.var(2, 1)
    assert (1 - t2).constant_part() == 0
    assert (1 - t2).linear_part() == (0, 1)
    assert (t1**-1 - 1).linear_part() == (1, 0)
    # t1*(t2 - 1) has degree-1 part -lambda_2
    assert (t1 * (t2 - 1)).linear_part() == (0, -1)


def test_evaluate_exponents_merges_powers():
    t1 = LaurentPoly.var(2, 0)
    t2 = LaurentPoly.var(2, 1)
    p = t1 - t2 + t1 * t2
    # at t = (xi, xi) with xi of order 2: xi - xi + 1
    assert p.evaluate_exponents([1, 1], 2) == [(1, 0)]


def test_json_and_str():
    t1 = LaurentPoly.var(2, 0)
    t2 = LaurentPoly.var(2, 1)
    p = t1 * t2 - 1
    assert LaurentPoly.from_json(2, p.to_json()) == p
    assert str(p) == "t1*t2 - 1"
    assert hash(p) == hash(LaurentPoly.from_json(2, p.to_json()))
