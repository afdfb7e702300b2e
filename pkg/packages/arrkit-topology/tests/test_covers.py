import pytest

from arrkit_topology import (
    Arrangement,
    ArrangementError,
    alexander_matrix,
    arrangement_group,
    b1_abelian_cover,
    b1_congruence,
    b1_cyclic_cover,
    b1_hirzebruch,
    b1_hirzebruch_by_restriction,
    chern_numbers,
    compute_lattice,
    cover_report,
    detect_period,
    pencil_b1,
    pencil_chern_numbers,
    tayama_bound,
)
from arrkit_topology.jumping import DepthCache


@pytest.fixture(scope="module")
def x3_matrix(x3):
    return alexander_matrix(arrangement_group(x3).presentation)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_braid_congruence_covers(braid_matrix, N):
    assert b1_congruence(braid_matrix, N) == 5 * N**2 + 1


@pytest.mark.parametrize("N", [2, 3])
def test_braid_hirzebruch_surfaces(braid, braid_group, N):
    assert b1_hirzebruch(braid, N, group=braid_group) == 5 * (N - 1) * (N - 2)


@pytest.mark.parametrize("N", [2, 3])
def test_x3_covers(x3, x3_matrix, N):
    assert b1_congruence(x3_matrix, N) == 3 * (N**2 + 1)
    assert b1_hirzebruch(x3, N) == 3 * (N - 1) * (N - 2)


@pytest.mark.slow
def test_hirzebruch_by_restriction_agrees(braid):
    cache = DepthCache()
    assert b1_hirzebruch_by_restriction(braid, 3, cache=cache) == 10
    assert len(cache) > 0
    # the full support alone carries the non-local component
    assert b1_hirzebruch_by_restriction(braid, 3, supports=[range(1, 7)]) == 2


def test_hirzebruch_needs_a_central_arrangement(toy):
    with pytest.raises(ArrangementError):
        b1_hirzebruch(toy, 2)


def test_affine_lines_through_origin_are_not_central():
    arr = Arrangement.from_coefficients("two lines", [(1, 0, 0), (0, 1, 0)], ambient_dim=2)
    assert not arr.is_central
    lat = compute_lattice(arr)
    assert not lat.central
    assert lat.double_points == (frozenset({1, 2}),)
    with pytest.raises(ArrangementError):
        b1_hirzebruch(arr, 2)
    assert cover_report(arr, 2).chern is None


@pytest.mark.parametrize("N", [2, 3, 4])
def test_chern_numbers_closed_forms(braid, x3, N):
    braid_mult = compute_lattice(braid).multiplicities()
    assert chern_numbers(braid_mult, N) == (5 * N**3 * (N - 2) ** 2, N**3 * (2 * N**2 - 10 * N + 15))
    x3_mult = compute_lattice(x3).multiplicities()
    assert chern_numbers(x3_mult, N) == (6 * N**3 * (N - 2) ** 2, 3 * N**3 * (N**2 - 4 * N + 5))


def test_braid_chern_numbers_at_two(braid):
    assert chern_numbers(compute_lattice(braid).multiplicities(), 2) == (0, 24)


def test_pencils(pencil):
    arr = pencil(4)
    lat = compute_lattice(arr)
    matrix = alexander_matrix(arrangement_group(arr).presentation)
    for N in (2, 3):
        assert b1_congruence(matrix, N) == 2 * N**3 + 2
        assert b1_hirzebruch(arr, N) == pencil_b1(N, 4)
    assert pencil_b1(2, 4) == 2
    assert pencil_b1(3, 3) == 2
    with pytest.raises(ArrangementError):
        chern_numbers(lat.multiplicities(), 2)
    assert pencil_chern_numbers(4, 2) == cover_report(arr, 2, hirzebruch=False).chern
    with pytest.raises(ValueError):
        pencil_b1(2, 2)


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_tayama_bound(braid, x3, N):
    # sharp for the braid arrangement and X3
    assert tayama_bound(compute_lattice(braid), N) == 5 * (N - 1) * (N - 2)
    assert tayama_bound(compute_lattice(x3), N) == 3 * (N - 1) * (N - 2)


def test_cyclic_covers(braid_matrix):
    assert [b1_cyclic_cover(braid_matrix, N) for N in (1, 2, 3)] == [6, 6, 8]


def test_abelian_cover_projection_checked(braid_matrix):
    with pytest.raises(ValueError):
        b1_abelian_cover(braid_matrix, [[2, 0, 0, 0, 0, 0]], 3)
    with pytest.raises(ValueError):
        b1_abelian_cover(braid_matrix, [[1, 0, 0]], 3)
    identity = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
    assert b1_abelian_cover(braid_matrix, identity, 2) == b1_congruence(braid_matrix, 2)


def test_cover_report(braid, braid_group):
    report = cover_report(braid, 2, group=braid_group)
    assert (report.b1_congruence, report.b1_hirzebruch, report.chern) == (21, 0, (0, 24))
    assert report.csv_row() == [2, 21, 0, 0, 24]
    assert report.to_json()["profile"]["N"] == 2


def test_detect_period_on_parity():
    values = [9 * N**2 - (3 if N % 2 == 0 else 2) for N in range(1, 11)]
    result = detect_period(values)
    assert result.period == 2
    assert result.evaluate(12) == 9 * 144 - 3
    assert result.evaluate(11) == 9 * 121 - 2


def test_detect_period_polynomial_and_inconclusive():
    result = detect_period([5 * N**2 + 1 for N in range(1, 6)])
    assert result.period == 1
    assert str(result.polynomials[0]) == "5*N**2 + 1"
    noisy = detect_period([1, 7, 2, 9, 4, 4, 8, 1])
    assert not noisy.conclusive
    assert noisy.to_json()["status"] == "inconclusive"
    with pytest.raises(ValueError):
        noisy.evaluate(3)


@pytest.mark.slow
def test_deleted_b3_hirzebruch_period_four():
    from arrkit_topology import Arrangement

    forms = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1), (1, -1, -1), (1, -1, 1)]
    arr = Arrangement.from_coefficients("deleted B3", forms)
    group = arrangement_group(arr)
    # N odd: (N - 1)(2N^2 + 9N - 24)
    assert [b1_hirzebruch(arr, N, group=group) for N in (2, 3, 4, 5)] == [2, 42, 134, 284]
