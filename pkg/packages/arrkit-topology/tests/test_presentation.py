import pytest

from arrkit_topology import (
    Arrangement,
    ArrangementError,
    FreeWord,
    GroupPresentation,
    PureBraidWord,
    arrangement_group,
    cone_presentation,
    presentation,
    semidirect_presentation,
    simplify,
)
from arrkit_topology.errors import PresentationError
from arrkit_topology.presentation import relabel, restrict_monodromy, word_group
from conftest import TOY_FORMS


def test_toy_presentation(toy_group):
    pres = toy_group.presentation
    assert toy_group.route == "slice"
    assert pres.rank == 4
    assert len(pres) == 5
    assert pres.tags == ("23:2", "13:1", "124:1", "124:2", "34:3")


def test_braid_presentation(braid_group):
    assert braid_group.rank == 6
    # 4 triple points with 2 relators each, 3 double points with 1
    assert len(braid_group.presentation) == 11


def test_cone_adds_a_central_generator(toy_group):
    coned = cone_presentation(toy_group.presentation)
    assert coned.rank == 5
    assert len(coned) == 5 + 4
    assert coned.tags[-1] == "center:4"


def test_semidirect_presentation():
    a12 = PureBraidWord.generator(3, 1, 2)
    a13 = PureBraidWord.generator(3, 1, 3)
    pres = semidirect_presentation([a12, a13])
    assert pres.rank == 5
    assert len(pres) == 6
    with pytest.raises(PresentationError):
        semidirect_presentation([a12, PureBraidWord.generator(2, 1, 2)])


def test_nonzero_exponent_sum_rejected():
    with pytest.raises(PresentationError, match="exponent sum"):
        GroupPresentation(2, (FreeWord(2, (1,)),))


def test_monodromy_strand_mismatch():
    with pytest.raises(PresentationError):
        presentation([({1, 2}, PureBraidWord.generator(3, 1, 2))], 2)


def test_relabel_and_simplify():
    x = FreeWord(2, (1, 2, -1, -2))
    other = FreeWord(2, (2, -1, -2, 1))
    pres = GroupPresentation(2, (x, x.inverse(), FreeWord(2, (1, -1)), other))
    cleaned = simplify(pres)
    # the inverse and the trivial relator are dropped
    assert cleaned.relators == (x, other)
    swapped = relabel(pres, (2, 1))
    assert swapped.relators[0].letters == (2, 1, -2, -1)
    with pytest.raises(PresentationError):
        relabel(pres, (1, 1))


def test_words_route_matches_slice_route(toy, toy_group):
    items = tuple(toy_group.monodromy)
    arr = Arrangement.from_coefficients("toy-words", TOY_FORMS, ambient_dim=2, monodromy_override=items)
    words = word_group(arr)
    assert words.route == "words"
    assert words.order == (1, 2, 3, 4)
    assert words.presentation == toy_group.presentation
    assert arrangement_group(arr, route="words").presentation == toy_group.presentation


def test_words_must_fit_the_lattice(toy_group):
    items = tuple(toy_group.monodromy)
    # four lines in general position: no triple point for the words to land on
    arr = Arrangement.from_coefficients(
        "generic", [(1, 0, 0), (0, 1, 0), (1, 1, 1), (1, 2, 3)], ambient_dim=2, monodromy_override=items
    )
    with pytest.raises(ArrangementError, match="does not match"):
        word_group(arr)


def test_no_words_supplied(toy):
    with pytest.raises(ArrangementError):
        word_group(toy)
    with pytest.raises(ValueError):
        arrangement_group(toy, route="nonsense")


def test_restricted_monodromy(toy_group):
    pres = restrict_monodromy(toy_group.monodromy, 4, [1, 2, 4])
    # only the triple point survives, as a pencil of three lines
    assert pres.rank == 3
    assert pres.tags == ("123:1", "123:2")
