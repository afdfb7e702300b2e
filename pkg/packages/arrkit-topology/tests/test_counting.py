import pytest

from arrkit_topology import (
    JumpTable,
    compute_lattice,
    conjectural_ranks,
    delta_abelian_p,
    delta_metabelian,
    delta_metabelian_of,
    exponents_from_poincare,
    is_fiber_type_candidate,
    lcs_fibertype,
    lcs_series_check,
    rank_table,
    subgroup_counts,
    theta_cc,
    theta_free,
    witt,
)
from arrkit_topology.counting import (
    SOURCE_CONJECTURE,
    SOURCE_FIBER_TYPE,
    SOURCE_LATTICE,
    abelian_groups,
    abelian_normal_count,
)


@pytest.mark.parametrize("k, n, expected", [(1, 3, 3), (2, 2, 1), (3, 2, 2), (4, 2, 3), (4, 3, 18), (7, 2, 18)])
def test_witt(k, n, expected):
    assert witt(k, n) == expected


def test_theta():
    assert theta_free(1, 5) == 5
    assert [theta_free(k, 2) for k in (2, 3, 4)] == [1, 2, 3]
    with pytest.raises(ValueError):
        theta_free(0, 2)


def test_theta_cc(braid):
    mult = compute_lattice(braid).multiplicities()
    assert theta_cc(mult, 4) == 12
    with pytest.raises(ValueError):
        theta_cc(mult, 1)


def test_delta_abelian():
    # index-2 subgroups of a group with H1 = Z^n
    assert [delta_abelian_p(n, (1,), 2) for n in (1, 2, 6)] == [1, 3, 63]
    assert delta_abelian_p(2, (2,), 2) == 6
    assert delta_abelian_p(2, (1, 1), 2) == 1
    assert delta_abelian_p(3, (1, 1, 1, 1), 2) == 0
    assert delta_abelian_p(6, (1,), 3) == 364
    with pytest.raises(ValueError):
        delta_abelian_p(2, (0,), 2)


def test_abelian_normal_counts():
    assert len(abelian_groups(8)) == 3
    assert len(abelian_groups(12)) == 2
    assert abelian_normal_count(2, 4) == 7
    assert abelian_normal_count(6, 5) == (5**6 - 1) // 4


@pytest.mark.parametrize(
    "table, expected",
    [
        (JumpTable("beta", 2, 3, {1: 15}), 15),  # S3, braid arrangement
        (JumpTable("beta", 3, 2, {1: 20}), 20),  # A4, braid arrangement
        (JumpTable("beta", 2, 3, {1: 24, 2: 1}), 28),  # S3, non-Fano plane
        (JumpTable("beta", 2, 3, {1: 69, 2: 4, 3: 15, 5: 63}), 7903),  # S3, Ziegler pair
        (JumpTable("beta", 3, 2, {1: 111, 3: 40, 5: 364}), 125075),  # A4, Ziegler A1: 111 + 21*40 + 341*364
        (JumpTable("beta", 3, 2, {1: 110, 3: 40, 5: 364}), 125074),  # A4, Ziegler A2
    ],
)
def test_delta_metabelian(table, expected):
    assert delta_metabelian(table) == expected


def test_delta_metabelian_needs_a_finite_field():
    with pytest.raises(ValueError):
        delta_metabelian(JumpTable("beta", 2, 0, {1: 15}))
    with pytest.raises(ValueError):
        delta_metabelian(JumpTable("nu", 3, None, {1: 15}))


def test_braid_metabelian_invariants(braid_matrix):
    assert delta_metabelian_of(braid_matrix, 2, 3) == 15
    assert delta_metabelian_of(braid_matrix, 3, 2) == 20


def test_braid_subgroup_counts():
    report = subgroup_counts(6, 15, 20)
    assert (report.a2, report.a3) == (63, 409)
    assert report.normal[2] == 63
    assert report.normal[3] == 364
    assert report.normal[5] == 3906
    assert report.normal[6] == 63 * 364 + 15
    assert report.normal[7] == (7**6 - 1) // 6
    assert report.normal[8] is None
    assert report.unavailable["a8_normal"] == ("delta_D8", "delta_Q8")
    assert "a4" in report.unavailable
    assert report.to_json()["normal"]["8"] is None


def test_subgroup_counts_seven_lines():
    report = subgroup_counts(7, 15)
    assert (report.a2, report.normal[3], report.a3) == (127, 1093, 1138)
    with pytest.raises(ValueError):
        subgroup_counts(7, 15, kmax=9)


@pytest.mark.parametrize("n", range(3, 9))
def test_pencil_index_three_identity(n):
    delta_s3 = (2 ** (n - 1) - 1) * (3 ** (n - 2) - 1) // 2
    report = subgroup_counts(n, delta_s3, kmax=3)
    assert report.a3 == 3 * (3 ** (n - 2) - 1) * (2 ** (n - 2) + 1) + 4


def test_exponents_from_poincare():
    assert exponents_from_poincare((1, 6, 11, 6)) == (1, 2, 3)
    assert exponents_from_poincare((1, 4, 3)) == (1, 3)
    assert exponents_from_poincare((1,)) == ()
    assert exponents_from_poincare((1, 6, 12, 7)) is None
    # necessary only: the non-Fano polynomial factors too
    assert exponents_from_poincare((1, 7, 15, 9)) == (1, 3, 3)
    assert is_fiber_type_candidate((1, 7, 15, 9))
    with pytest.raises(ValueError):
        exponents_from_poincare((2, 1))


def test_fiber_type_lcs():
    assert lcs_fibertype((1, 2, 3), 4) == 21
    assert lcs_fibertype((1, 2, 3), 1) == 6
    assert lcs_series_check((1, 2, 3), 8)
    assert lcs_series_check((1, 3), 6)
    with pytest.raises(ValueError):
        lcs_fibertype((0, 2), 2)


def test_conjectural_ranks():
    low = conjectural_ranks({2: 3}, 3)
    assert not low.in_scope
    high = conjectural_ranks({2: 3}, 4)
    assert (high.theta, high.phi, high.in_scope) == (9, 9, True)


def test_braid_rank_table(braid):
    mult = compute_lattice(braid).multiplicities()
    table = rank_table(5, mult, h={2: 5}, exponents=(1, 2, 3))
    assert table[1].phi == 6 and table[1].phi_source == SOURCE_FIBER_TYPE
    assert table[2].phi == 4
    assert table[4].phi == 21 and table[4].phi_source == SOURCE_FIBER_TYPE
    assert table[4].theta == 15 and table[4].theta_source == SOURCE_CONJECTURE
    assert table.discrepancies() == []
    with pytest.raises(KeyError):
        table[6]


def test_x3_rank_table_flags_reference_values(x3):
    mult = compute_lattice(x3).multiplicities()
    table = rank_table(8, mult, h={2: 3}, literal={7: (90, 18), 8: (150, 21)}, phi4=9)
    assert table[2].phi == 3 and table[2].phi_source == SOURCE_LATTICE
    assert table[7].phi == 54 and table[7].phi_source == SOURCE_CONJECTURE
    assert table[7].discrepancy == ("phi",)
    assert table[8].phi == 90
    assert table[8].discrepancy == ("phi",)
    assert [e.k for e in table.discrepancies()] == [7, 8]
    assert table.to_json()["entries"][6]["phi"]["literal"] == 90


def test_lcs_conjecture_needs_phi4(x3):
    mult = compute_lattice(x3).multiplicities()
    table = rank_table(5, mult, h={2: 3})
    assert table[5].phi is None
    assert table[5].theta == 3 * theta_free(5, 2)
