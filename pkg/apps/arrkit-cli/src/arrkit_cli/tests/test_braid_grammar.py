import pytest

from arrkit_topology import PureBraidWord, full_twist

from arrkit_cli.braid_grammar import BraidSyntaxError, format_braid, parse_braid


def A(i, j, strands=3, power=1):
    return PureBraidWord.generator(strands, i, j, power)


def test_generators_and_powers():
    assert parse_braid("A(1,2)", 3) == A(1, 2)
    assert parse_braid("A(1,2)^-1", 3) == A(1, 2).inverse()
    assert parse_braid("A( 2 , 3 )^3", 3) == A(2, 3, power=3)
    assert parse_braid("1", 3) == PureBraidWord.identity(3)


def test_products_and_conjugation():
    assert parse_braid("A(2,3) A(1,3)", 3) == A(2, 3) * A(1, 3)
    conj = parse_braid("A(1,3)^[A(2,3)]", 3)
    assert conj.letters == ((2, 3, -1), (1, 3, 1), (2, 3, 1))
    assert parse_braid("(A(1,2) A(1,3))^2", 3) == (A(1, 2) * A(1, 3)) ** 2


def test_full_twist_shorthand():
    assert parse_braid("A(1,2,3)", 3) == full_twist([1, 2, 3], 3)
    assert parse_braid("A(2,3,4)", 5) == full_twist([2, 3, 4], 5)


def test_suffixes_apply_left_to_right():
    word = parse_braid("A(1,4)^[A(2,4) A(3,4)] A(2,5)", 5)
    by = A(2, 4, 5) * A(3, 4, 5)
    assert word == A(1, 4, 5).conjugate(by) * A(2, 5, 5)


@pytest.mark.parametrize("text", ["A(1,2)", "A(1,3)^[A(2,3)] A(2,3)^-1", "A(1,2,3)", "1"])
def test_format_parses_back(text):
    word = parse_braid(text, 3)
    assert parse_braid(format_braid(word), 3) == word


@pytest.mark.parametrize("text", ["A(1,2", "B(1,2)", "A(1)", "A(1,2)^", "A(1,2)^[A(1,3)"])
def test_syntax_errors(text):
    with pytest.raises(BraidSyntaxError):
        parse_braid(text, 3)


def test_strands_out_of_range():
    with pytest.raises(BraidSyntaxError, match="Invalid braid word"):
        parse_braid("A(1,5)", 3)
    with pytest.raises(BraidSyntaxError):
        parse_braid("A(2,2)", 3)
