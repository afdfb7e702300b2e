import itertools
from fractions import Fraction

import numpy as np
import pytest

from arrkit_algebra import (
    FieldError,
    FieldKind,
    FieldSpec,
    field_build,
    moebius,
    multiplicative_order,
    primes_congruent_one,
    root_of_unity_mod,
)

SMALL_SPECS = [
    FieldSpec.prime(2),
    FieldSpec.prime(3),
    FieldSpec.prime(5),
    FieldSpec.prime(7),
    FieldSpec.extension(2, 2),
    FieldSpec.extension(2, 3),
    FieldSpec.extension(3, 2),
]

VECTOR_SPECS = [
    FieldSpec.extension(5, 2),
    FieldSpec.extension(3, 3),
    FieldSpec.extension(7, 2),
    FieldSpec.extension(3, 4),
    FieldSpec.prime(79),
]


def test_f4_cube_roots_of_unity(f4):
    """F_4 = F_2[xi]/(xi^2+xi+1) has xi^3 = 1 and xi != 1"""
    xi = f4.generator
    assert xi != f4.one
    assert f4.power(xi, 3) == f4.one
    units_3 = {e for e in f4.elements() if e != 0 and f4.power(e, 3) == f4.one}
    assert units_3 == {f4.one, xi, f4.mul(xi, xi)}


def test_f2_has_trivial_unit_group():
    f2 = field_build(FieldSpec.prime(2))
    units = [e for e in f2.elements() if e != f2.zero]
    assert units == [f2.one]
    with pytest.raises(ValueError):
        f2.primitive_root_of_unity(2)


def test_multiplicative_orders():
    """ord_2(3) = 1 and ord_3(2) = 2, so S3 counts use F_3 and A4 counts F_4"""
    assert multiplicative_order(3, 2) == 1
    assert multiplicative_order(2, 3) == 2
    assert multiplicative_order(2, 7) == 3
    with pytest.raises(ValueError):
        multiplicative_order(6, 3)


def test_moebius_values():
    assert moebius(1) == 1
    assert moebius(4) == 0
    assert moebius(6) == 1
    assert moebius(30) == -1
    with pytest.raises(ValueError):
        moebius(0)


@pytest.mark.parametrize("spec", SMALL_SPECS, ids=repr)
def test_field_axioms_exhaustive(spec):
    """Scalar axioms on every triple of a small field"""
    field = field_build(spec)
    elements = list(field.elements())
    assert len(elements) == spec.modulus**spec.degree

    for a, b, c in itertools.product(elements, repeat=3):
        assert field.add(a, b) == field.add(b, a)
        assert field.mul(a, b) == field.mul(b, a)
        assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
        assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
        assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))

    for a in elements:
        assert field.add(a, field.neg(a)) == field.zero
        if a != field.zero:
            assert field.mul(a, field.inv(a)) == field.one
            assert field.power(a, len(elements) - 1) == field.one


@pytest.mark.parametrize("spec", VECTOR_SPECS, ids=repr)
def test_vectorized_axioms(spec):
    """numpy kernels agree with the axioms on all triples (|F| <= 81)"""
    field = field_build(spec)
    q = field.order
    a, b, c = (x.ravel() for x in np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij"))

    assert np.array_equal(field.np_add(a, b), field.np_add(b, a))
    assert np.array_equal(field.np_mul(a, b), field.np_mul(b, a))
    assert np.array_equal(field.np_add(field.np_add(a, b), c), field.np_add(a, field.np_add(b, c)))
    assert np.array_equal(field.np_mul(field.np_mul(a, b), c), field.np_mul(a, field.np_mul(b, c)))
    assert np.array_equal(
        field.np_mul(a, field.np_add(b, c)),
        field.np_add(field.np_mul(a, b), field.np_mul(a, c)),
    )

    nonzero = np.arange(1, q)
    assert (field.np_mul(nonzero, field.np_inv(nonzero)) == 1).all()
    assert (field.np_sub(nonzero, nonzero) == 0).all()


@pytest.mark.parametrize("spec", VECTOR_SPECS, ids=repr)
def test_scalar_and_vector_agree(spec):
    field = field_build(spec)
    q = field.order
    a, b = (x.ravel() for x in np.meshgrid(np.arange(q), np.arange(q), indexing="ij"))
    added = field.np_add(a, b)
    multiplied = field.np_mul(a, b)
    for k in range(0, len(a), 37):
        assert added[k] == field.add(int(a[k]), int(b[k]))
        assert multiplied[k] == field.mul(int(a[k]), int(b[k]))


def test_roots_of_unity_in_finite_fields():
    f9 = field_build(FieldSpec.extension(3, 2))
    for order in (2, 4, 8):
        root = f9.primitive_root_of_unity(order)
        assert f9.power(root, order) == f9.one
        assert all(f9.power(root, k) != f9.one for k in range(1, order))
    with pytest.raises(ValueError):
        f9.primitive_root_of_unity(3)

    r = root_of_unity_mod(4, 13)
    assert pow(r, 4, 13) == 1 and pow(r, 2, 13) != 1


def test_primes_congruent_one():
    primes = primes_congruent_one(6, 3)
    assert len(primes) == 3
    assert all(p > 10**6 and p % 6 == 1 for p in primes)
    assert list(primes) == sorted(set(primes))


def test_invalid_specs_are_rejected():
    with pytest.raises(FieldError):
        field_build(FieldSpec.prime(6))
    with pytest.raises(FieldError, match="reducible"):
        # x^2 + 1 = (x + 1)^2 over F_2
        field_build(FieldSpec.extension(2, 2, (1, 0, 1)))
    with pytest.raises(FieldError, match="monic"):
        field_build(FieldSpec.number_field((1, 0, 2)))
    with pytest.raises(FieldError, match="reducible"):
        field_build(FieldSpec.number_field((-1, 0, 1)))


def test_default_min_poly_has_primitive_x():
    spec = FieldSpec.extension(2, 4)
    assert spec.kind == FieldKind.EXTENSION_FIELD
    f16 = field_build(spec)
    x = f16.generator
    assert all(f16.power(x, k) != f16.one for k in (1, 3, 5))
    assert f16.power(x, 15) == f16.one


def test_number_field_arithmetic():
    """Q(i) and Q(omega)"""
    q_i = field_build(FieldSpec.number_field((1, 0, 1)))
    i = q_i.generator
    assert q_i.mul(i, i) == q_i.from_int(-1)
    one_plus_i = q_i.element([1, 1])
    assert q_i.inv(one_plus_i) == (Fraction(1, 2), Fraction(-1, 2))
    assert q_i.power(q_i.primitive_root_of_unity(4), 2) == q_i.from_int(-1)

    q_omega = field_build(FieldSpec.number_field((1, 1, 1)))
    omega = q_omega.primitive_root_of_unity(3)
    assert q_omega.power(omega, 3) == q_omega.one
    assert omega != q_omega.one
    zeta6 = q_omega.primitive_root_of_unity(6)
    assert q_omega.power(zeta6, 3) == q_omega.from_int(-1)
    with pytest.raises(ZeroDivisionError):
        q_omega.inv(q_omega.zero)


def test_rationals_are_infinite():
    q = field_build(FieldSpec.rationals())
    assert q.characteristic == 0 and q.order is None
    with pytest.raises(TypeError):
        list(q.elements())
    assert q.div(q.from_int(3), q.from_int(6)) == Fraction(1, 2)
