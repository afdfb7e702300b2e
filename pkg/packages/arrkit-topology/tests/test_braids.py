import itertools

import pytest

from arrkit_topology import (
    FreeWord,
    PureBraidWord,
    artin_act,
    delete_strand,
    full_twist,
    generic_slice,
    monodromy_factorization_holds,
    real_braid_monodromy,
)
from arrkit_topology.braids import acts_equally, commutator
from arrkit_topology.errors import PresentationError


def test_free_reduction_and_inverse():
    w = FreeWord(3, (1, 2, -2, 3))
    assert w.letters == (1, 3)
    assert str(w.inverse()) == "x3^-1*x1^-1"
    assert (w * w.inverse()).is_identity()
    assert w.exponent_sums() == (1, 0, 1)
    with pytest.raises(PresentationError):
        FreeWord(2, (3,))


def test_commutator_has_zero_exponent_sums():
    x1, x2 = FreeWord.generator(2, 1), FreeWord.generator(2, 2)
    assert commutator(x1, x2).letters == (1, 2, -1, -2)
    assert commutator(x1, x2).exponent_sums() == (0, 0)


def test_pure_braid_cancellation():
    a = PureBraidWord.generator(3, 1, 2)
    assert len(a * a.inverse()) == 0
    assert (a**3).letters == ((1, 2, 1),) * 3
    assert PureBraidWord.generator(3, 2, 1) == a
    with pytest.raises(PresentationError):
        PureBraidWord(3, ((2, 2, 1),))


def test_full_twist_word():
    assert str(full_twist([1, 2, 3], 3)) == "A(1,2) A(1,3) A(2,3)"
    with pytest.raises(PresentationError):
        full_twist([2], 3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pure_braids_fix_the_boundary_word(n):
    boundary = FreeWord(n, tuple(range(1, n + 1)))
    for i, j in itertools.combinations(range(1, n + 1), 2):
        for power in (1, -1):
            assert artin_act(PureBraidWord.generator(n, i, j, power), boundary) == boundary


@pytest.mark.parametrize("n", [3, 4])
def test_inverse_braid_undoes_the_action(n):
    beta = PureBraidWord(n, ((1, 3, 1), (2, 3, -1), (1, 2, 1)))
    for r in range(1, n + 1):
        x = FreeWord.generator(n, r)
        assert artin_act(beta.inverse(), artin_act(beta, x)) == x
        assert artin_act(beta, artin_act(beta.inverse(), x)) == x


def test_action_is_first_letter_first():
    a = PureBraidWord.generator(3, 1, 2)
    b = PureBraidWord.generator(3, 2, 3)
    w = FreeWord(3, (1, 2, -3))
    assert artin_act(a * b, w) == artin_act(b, artin_act(a, w))


def test_generator_images():
    # A_12 sends x1 to its conjugate by x1 x2 and x2 to its conjugate by x1
    a12 = PureBraidWord.generator(2, 1, 2)
    assert artin_act(a12, FreeWord.generator(2, 1)).letters == (1, 2, 1, -2, -1)
    assert artin_act(a12, FreeWord.generator(2, 2)).letters == (1, 2, -1)


def test_full_twist_is_central():
    n = 4
    twist = full_twist(range(1, n + 1), n)
    for i, j in itertools.combinations(range(1, n + 1), 2):
        a = PureBraidWord.generator(n, i, j)
        assert acts_equally(a * twist, twist * a)


def test_delete_strand():
    beta = PureBraidWord(3, ((1, 3, 1), (2, 3, 1), (1, 2, -1)))
    assert delete_strand(beta, 2).letters == ((1, 2, 1),)
    assert delete_strand(beta, 3).letters == ((1, 2, -1),)
    with pytest.raises(PresentationError):
        delete_strand(beta, 4)


def test_toy_slice_and_monodromy(toy):
    data = generic_slice(toy)
    assert data.order == (1, 2, 3, 4)
    assert [set(v.lines) for v in data.vertices] == [{2, 3}, {1, 3}, {1, 2, 4}, {3, 4}]

    monodromy = real_braid_monodromy(data)
    assert [m.alpha.letters for m in monodromy] == [
        ((2, 3, 1),),
        ((2, 3, -1), (1, 3, 1), (2, 3, 1)),
        ((1, 2, 1), (1, 4, 1), (2, 4, 1)),
        ((3, 4, 1),),
    ]
    assert monodromy_factorization_holds([m.alpha for m in monodromy], 4)


def test_factorization_detects_a_wrong_product():
    alphas = [PureBraidWord.generator(3, 1, 2), PureBraidWord.generator(3, 2, 3)]
    assert not monodromy_factorization_holds(alphas, 3)
    assert monodromy_factorization_holds([full_twist([1, 2, 3], 3)], 3)


def test_braid_arrangement_monodromy(braid):
    data = generic_slice(braid)
    monodromy = real_braid_monodromy(data)
    assert sorted(len(m.vertex) for m in monodromy) == [2, 2, 2, 3, 3, 3, 3]
    assert monodromy_factorization_holds([m.alpha for m in monodromy], 6)
