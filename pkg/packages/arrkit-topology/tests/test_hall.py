import pytest
from sympy import Rational, expand

from arrkit_topology import delta_symmetric, hall_homomorphism_counts, hall_subgroup_counts
from arrkit_topology.hall import SUBGROUPS, delta_symbol


def test_subgroup_tables_add_up():
    # every subgroup of S_k is listed once
    assert [sum(h.count for h in SUBGROUPS[k]) for k in (1, 2, 3, 4)] == [1, 2, 6, 30]


def test_free_group_of_rank_two():
    assert hall_homomorphism_counts(2, 3, {"S3": 3}) == 36
    counts = hall_subgroup_counts(2, 3, {"S3": 3})
    assert [counts[k] for k in (1, 2, 3)] == [1, 3, 13]


def test_index_four_for_rank_two():
    known = {"S3": 3, "D8": 3, "A4": 4, "S4": 9}
    assert hall_homomorphism_counts(2, 4, known) == 24**2
    assert hall_subgroup_counts(2, 4, known)[4] == 71


def test_integers_have_one_subgroup_per_index():
    known = {"S3": 0, "D8": 0, "A4": 0, "S4": 0}
    counts = hall_subgroup_counts(1, 4, known)
    assert [counts[k] for k in (1, 2, 3, 4)] == [1, 1, 1, 1]


def test_delta_symmetric():
    assert delta_symmetric(2, 1) == 1
    assert delta_symmetric(2, 2) == 3
    assert delta_symmetric(2, 3, 36) == 3
    assert delta_symmetric(2, 3, known={"S3": 3}) == 3
    assert delta_symmetric(2, 4, 576, {"S3": 3, "D8": 3, "A4": 4}) == 9


def test_delta_symmetric_needs_its_inputs():
    with pytest.raises(ValueError, match="Hom"):
        delta_symmetric(2, 3)
    with pytest.raises(ValueError, match="also needs"):
        delta_symmetric(2, 4, 576, {"S3": 3})
    with pytest.raises(ValueError):
        delta_symmetric(2, 3, 37)
    with pytest.raises(ValueError):
        delta_symmetric(2, 5, 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_index_four_closed_form(n):
    a4 = hall_subgroup_counts(n, 4)[4]
    nonabelian = delta_symbol("D8") + delta_symbol("A4") + delta_symbol("S4")
    closed = Rational(1, 3) * (2 ** (n + 1) - 1) * (2**n - 1) + 4 * nonabelian
    # delta_S3 drops out of a4
    assert expand(a4 - closed) == 0
