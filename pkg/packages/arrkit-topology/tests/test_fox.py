import numpy as np
import pytest

from arrkit_algebra import LaurentPoly

from arrkit_topology import (
    Budget,
    BudgetExceededError,
    FreeWord,
    GroupPresentation,
    alexander_matrix,
    b1_congruence,
    compute_lattice,
    congruence_images,
    depth_char0,
    fox_derivative,
    gassner_alexander,
    kernel_homology,
    linearize,
    linearize_from_lattice,
    nu_invariants,
)
from arrkit_topology.braids import commutator
from arrkit_topology.fox import abelianize


def test_fox_derivative_of_a_commutator():
    x1, x2 = FreeWord.generator(2, 1), FreeWord.generator(2, 2)
    w = commutator(x1, x2)
    d1 = fox_derivative(w, 1)
    assert d1 == {FreeWord.identity(2): 1, FreeWord(2, (1, 2, -1)): -1}
    # 1 - t2 and t1 - 1
    assert abelianize(d1, 2) == LaurentPoly(2, {(0, 0): 1, (0, 1): -1})
    assert abelianize(fox_derivative(w, 2), 2) == LaurentPoly(2, {(1, 0): 1, (0, 0): -1})


def test_alexander_matrix_vanishes_at_one(braid_matrix):
    assert braid_matrix.n == 6
    assert braid_matrix.nrows == 11
    assert all(x == 0 for row in braid_matrix.at_one() for x in row)


def test_gassner_rows_match_fox_rows(toy_group):
    direct = alexander_matrix(toy_group.presentation)
    via_gassner = gassner_alexander(toy_group.monodromy, 4)
    # the toy slice carries the identity labeling, so rows line up
    assert toy_group.order == (1, 2, 3, 4)
    assert via_gassner.rows == direct.rows


def test_linearizations_agree_on_resonance(braid, braid_matrix):
    from_group = nu_invariants(linearize(braid_matrix), 2)
    from_lattice = nu_invariants(linearize_from_lattice(compute_lattice(braid)), 2)
    assert from_group.nonzero() == {1: 15}
    assert from_lattice.nonzero() == {1: 15}


def test_toy_alexander_matrix_entries(toy_group):
    matrix = alexander_matrix(toy_group.presentation)
    t1, t2, t3, t4 = (LaurentPoly.var(4, k) for k in range(4))
    zero = LaurentPoly.zero(4)
    expected = {
        "23:2": (zero, t2 * (t3 - 1), t2 * (1 - t2), zero),
        "13:1": (t1 * (t3 - 1), t1 * (1 - t1) * (1 - t3), t1 * t2 * (1 - t1), zero),
        "124:1": (t1 * (t2 * t4 - 1), t1 * (1 - t1), zero, t1 * t2 * (1 - t1)),
        "124:2": (1 - t2, t1 * t2 * (t4 - 1) + t1 - 1, zero, t1 * t2 * (1 - t2)),
        "34:3": (zero, zero, t3 * (t4 - 1), t3 * (1 - t3)),
    }
    assert matrix.tags == tuple(expected)
    for tag, row in zip(matrix.tags, matrix.rows):
        assert row == expected[tag], tag

    # alpha_2 = A23^-1 A13 A23; clearing the [x2, x3] row leaves the plain A13 row
    shift = t1 * t2**-1 * (1 - t1)
    cleaned = tuple(a + shift * b for a, b in zip(matrix.rows[1], matrix.rows[0]))
    assert cleaned == (t1 * (t3 - 1), zero, t1 * (1 - t1), zero)


def test_toy_linearized_matrix_both_routes(toy, toy_group):
    # entry (r, c) as its lambda_1..lambda_4 coefficients
    expected = [
        [[0, -1, 0, -1], [1, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]],
        [[0, 1, 0, 0], [-1, 0, 0, -1], [0, 0, 0, 0], [0, 1, 0, 0]],
        [[0, 0, -1, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]],
        [[0, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, 0]],
        [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
    ]
    from_lattice = linearize_from_lattice(compute_lattice(toy))
    assert from_lattice.coeffs.tolist() == expected
    from_group = linearize(alexander_matrix(toy_group.presentation))
    # group rows follow the monodromy: 23:2, 13:1, 124:1, 124:2, 34:3
    assert from_group.coeffs.tolist() == [expected[r] for r in (3, 2, 0, 1, 4)]


def test_lattice_linearization_shape(braid):
    linear = linearize_from_lattice(compute_lattice(braid))
    # 4 triple points with 2 rows each, 3 double points with 1
    assert linear.coeffs.shape == (11, 6, 6)
    lam = np.array([[1, -1, 0, 0, 0, 0]])
    assert linear.evaluate(lam).shape == (1, 11, 6)


def test_free_group_cover():
    free = GroupPresentation(2)
    result = kernel_homology(free, (2,), ((1,), (0,)))
    # Euler characteristic doubles: 1 - 2 = -1 becomes -2
    assert (result.free_rank, result.torsion, result.order) == (3, (), 2)


def test_double_cover_adds_character_depth(braid_group, braid_matrix):
    e = (1, 1, 0, 0, 0, 0)
    images = tuple((x,) for x in e)
    result = kernel_homology(braid_group.presentation, (2,), images)
    assert result.free_rank == 6 + depth_char0(braid_matrix, e, 2)
    assert result.free_rank == 7


def test_congruence_cover_two_ways(toy_group):
    pres = toy_group.presentation
    moduli, images = congruence_images(4, 2)
    direct = kernel_homology(pres, moduli, images)
    assert direct.free_rank == b1_congruence(alexander_matrix(pres), 2)


def test_kernel_homology_rejects_bad_maps(toy_group):
    pres = toy_group.presentation
    with pytest.raises(ValueError, match="surjective"):
        kernel_homology(pres, (2,), ((0,),) * 4)
    with pytest.raises(ValueError):
        kernel_homology(pres, (2,), ((1,),))
    with pytest.raises(BudgetExceededError):
        kernel_homology(pres, *congruence_images(4, 2), budget=Budget(snf_entries=10))


B3_FORMS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1), (1, -1, -1), (1, -1, 1), (1, 1, -1)]


@pytest.mark.parametrize(
    "forms, expected",
    [
        (B3_FORMS, {2: {1: 36, 2: 24}, 3: {1: 64, 2: 39}}),
        (B3_FORMS[:-1], {2: {1: 27, 2: 9}, 3: {1: 44, 2: 13}}),
    ],
    ids=["B3", "deleted B3"],
)
def test_jump_counts_from_the_lattice(forms, expected):
    from arrkit_topology import Arrangement

    linear = linearize_from_lattice(compute_lattice(Arrangement.from_coefficients("b3", forms)))
    for p, table in expected.items():
        assert nu_invariants(linear, p).nonzero() == table
