"""
Braid words as written in arrangement files.

    A(1,2)            pure braid generator A_12
    A(1,2,3)          full twist A_I on the listed strands
    A(1,3)^-1         powers, any integer exponent
    A(1,3)^[A(2,3)]   conjugation: A(2,3)^-1 A(1,3) A(2,3)
    A(2,3) A(1,3)     juxtaposition is the product, first factor first
    (A(1,2) A(1,3))^2 parentheses group
    1                 identity
"""

from lark import Lark, Transformer
from lark.exceptions import LarkError, VisitError

from arrkit_topology import PureBraidWord, full_twist

GRAMMAR = r"""
    start: word

    word: factor*

    factor: base suffix*

    base: "A" "(" INT ("," INT)+ ")"   -> generator
        | "(" word ")"                 -> group
        | "1"                          -> identity

    suffix: "^" SIGNED_INT             -> power
          | "^" "[" word "]"           -> conjugation

    %import common.INT
    %import common.SIGNED_INT
    %import common.WS
    %ignore WS
"""

_parser = Lark(GRAMMAR, parser="lalr")


class BraidSyntaxError(ValueError):
    """A braid word that does not parse or names strands outside the braid group."""


class _BraidBuilder(Transformer):
    def __init__(self, strands: int):
        super().__init__()
        self.strands = strands

    def start(self, items):
        return items[0]

    def word(self, items):
        result = PureBraidWord.identity(self.strands)
        for factor in items:
            result = result * factor
        return result

    def factor(self, items):
        result = items[0]
        for kind, value in items[1:]:
            result = result**value if kind == "power" else result.conjugate(value)
        return result

    def generator(self, items):
        indices = [int(tok) for tok in items]
        if len(set(indices)) != len(indices):
            raise BraidSyntaxError(f"Repeated strand in A{tuple(indices)}")
        if len(indices) == 2:
            return PureBraidWord.generator(self.strands, *indices)
        return full_twist(indices, self.strands)

    def group(self, items):
        return items[0]

    def identity(self, items):
        return PureBraidWord.identity(self.strands)

    def power(self, items):
        return ("power", int(items[0]))

    def conjugation(self, items):
        return ("conjugation", items[0])


def parse_braid(text: str, strands: int) -> PureBraidWord:
    """
    Parse a braid word on the given number of strands.

    Raises:
        BraidSyntaxError: On a syntax error or an invalid strand index
    """
    try:
        tree = _parser.parse(text)
    except LarkError as e:
        raise BraidSyntaxError(f"Cannot parse braid word {text!r}: {e}") from e
    try:
        return _BraidBuilder(strands).transform(tree)
    except VisitError as e:
        raise BraidSyntaxError(f"Invalid braid word {text!r}: {e.orig_exc}") from e.orig_exc


def format_braid(word: PureBraidWord) -> str:
    """Inverse of parse_braid up to free reduction."""
    return str(word)
