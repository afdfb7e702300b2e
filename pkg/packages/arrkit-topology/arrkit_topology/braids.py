"""
Braids - free words, pure braid words and the Artin action.

Conventions:
    - Free letters are signed 1-based indices: 2 is x_2, -2 is x_2^-1.
    - Braids act on the right and the first letter acts first:
      artin_act(b1 * b2, w) == artin_act(b2, artin_act(b1, w)).
    - Conjugation a^b means b^-1 * a * b.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from arrkit_topology.errors import PresentationError

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Free groups
# ----------------------------------------------------------------------


def _reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    stack: List[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


@dataclass(frozen=True)
class FreeWord:
    """
    Freely reduced word in x_1..x_rank.

    Example:
        w = FreeWord.generator(3, 1) * FreeWord.generator(3, 2)
        str(w.inverse())   # "x2^-1*x1^-1"
    """

    rank: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise PresentationError(f"Letter {x} outside x_1..x_{self.rank}")
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def generator(cls, rank: int, i: int, power: int = 1) -> "FreeWord":
        letter = i if power > 0 else -i
        return cls(rank, (letter,) * abs(power))

    @classmethod
    def identity(cls, rank: int) -> "FreeWord":
        return cls(rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if self.rank != other.rank:
            raise PresentationError(f"Rank mismatch: {self.rank} vs {other.rank}")
        return FreeWord(self.rank, self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(self.rank, tuple(-x for x in reversed(self.letters)))

    def conjugate(self, by: "FreeWord") -> "FreeWord":
        """by * self * by^-1."""
        return by * self * by.inverse()

    def exponent_sum(self, i: int) -> int:
        return sum(1 if x == i else -1 for x in self.letters if abs(x) == i)

    def exponent_sums(self) -> Tuple[int, ...]:
        sums = [0] * self.rank
        for x in self.letters:
            sums[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(sums)

    def is_identity(self) -> bool:
        return not self.letters

    def substitute(self, images: Dict[int, Tuple[int, ...]], rank: int = None) -> "FreeWord":
        """Image under the endomorphism x_i -> images[i]; letters without an image map to themselves."""
        out: List[int] = []
        for x in self.letters:
            img = images.get(abs(x), (abs(x),))
            out.extend(img if x > 0 else (-y for y in reversed(img)))
        return FreeWord(rank or self.rank, tuple(out))

    def widen(self, rank: int) -> "FreeWord":
        return FreeWord(rank, self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(f"x{x}" if x > 0 else f"x{-x}^-1" for x in self.letters)

    def to_json(self) -> List[int]:
        return list(self.letters)


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    """[a, b] = a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()


# ----------------------------------------------------------------------
# Pure braids
# ----------------------------------------------------------------------

BraidLetter = Tuple[int, int, int]


@dataclass(frozen=True)
class PureBraidWord:
    """
    Word in the pure braid generators A_ij^{+-1}, 1 <= i < j <= strands.

    Letters are (i, j, sign) triples; adjacent inverse pairs cancel.
    """

    strands: int
    letters: Tuple[BraidLetter, ...] = ()

    def __post_init__(self):
        for i, j, e in self.letters:
            if not 1 <= i < j <= self.strands or e not in (1, -1):
                raise PresentationError(f"Invalid braid letter A({i},{j})^{e} on {self.strands} strands")
        stack: List[BraidLetter] = []
        for letter in self.letters:
            if stack and stack[-1] == (letter[0], letter[1], -letter[2]):
                stack.pop()
            else:
                stack.append(letter)
        object.__setattr__(self, "letters", tuple(stack))

    @classmethod
    def generator(cls, strands: int, i: int, j: int, power: int = 1) -> "PureBraidWord":
        if i > j:
            i, j = j, i
        sign = 1 if power > 0 else -1
        return cls(strands, ((i, j, sign),) * abs(power))

    @classmethod
    def identity(cls, strands: int) -> "PureBraidWord":
        return cls(strands)

    def __mul__(self, other: "PureBraidWord") -> "PureBraidWord":
        if self.strands != other.strands:
            raise PresentationError(f"Strand mismatch: {self.strands} vs {other.strands}")
        return PureBraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> "PureBraidWord":
        base = self if k >= 0 else self.inverse()
        return PureBraidWord(self.strands, base.letters * abs(k))

    def inverse(self) -> "PureBraidWord":
        return PureBraidWord(self.strands, tuple((i, j, -e) for i, j, e in reversed(self.letters)))

    def conjugate(self, by: "PureBraidWord") -> "PureBraidWord":
        """self^by = by^-1 * self * by."""
        return by.inverse() * self * by

    def widen(self, strands: int) -> "PureBraidWord":
        return PureBraidWord(strands, self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"A({i},{j})" + ("^-1" if e < 0 else "") for i, j, e in self.letters)


def full_twist(indices: Iterable[int], strands: int) -> PureBraidWord:
    """
    A_I = prod_{b=2}^{r} prod_{a<b} A_{i_a i_b} for I = {i_1 < ... < i_r}.

    Example:
        str(full_twist([1, 2, 3], 3))   # "A(1,2) A(1,3) A(2,3)"
    """
    idx = sorted(set(indices))
    if len(idx) < 2:
        raise PresentationError(f"A full twist needs at least two strands, got {idx}")
    letters = [(idx[a], idx[b], 1) for b in range(1, len(idx)) for a in range(b)]
    return PureBraidWord(strands, tuple(letters))


def delete_strand(beta: PureBraidWord, k: int) -> PureBraidWord:
    """Forget strand k: generators touching k vanish, higher indices shift down."""
    if not 1 <= k <= beta.strands:
        raise PresentationError(f"Strand {k} outside 1..{beta.strands}")

    def shift(x: int) -> int:
        return x - 1 if x > k else x

    letters = tuple((shift(i), shift(j), e) for i, j, e in beta.letters if k not in (i, j))
    return PureBraidWord(beta.strands - 1, letters)


def delete_strands(beta: PureBraidWord, removed: Iterable[int]) -> PureBraidWord:
    for k in sorted(set(removed), reverse=True):
        beta = delete_strand(beta, k)
    return beta


# ----------------------------------------------------------------------
# Artin action
# ----------------------------------------------------------------------


def _generator_images(n: int, i: int, j: int, sign: int) -> Dict[int, Tuple[int, ...]]:
    xi, xj = FreeWord.generator(n, i), FreeWord.generator(n, j)
    c = xi * xj
    images: Dict[int, FreeWord] = {}
    if sign > 0:
        images[i] = xi.conjugate(c)
        images[j] = xj.conjugate(xi)
        k = commutator(xi, xj)
        for r in range(i + 1, j):
            images[r] = FreeWord.generator(n, r).conjugate(k)
    else:
        c_inv = c.inverse()
        images[i] = xi.conjugate(c_inv)
        images[j] = xj.conjugate(c_inv)
        k = c_inv * commutator(xi, xj).inverse() * c
        for r in range(i + 1, j):
            images[r] = FreeWord.generator(n, r).conjugate(k)
    return {r: w.letters for r, w in images.items()}


_IMAGE_CACHE: Dict[Tuple[int, int, int, int], Dict[int, Tuple[int, ...]]] = {}


def artin_act(beta: PureBraidWord, w: FreeWord) -> FreeWord:
    """
    Image of w under the Artin action of beta, first letter first.

    Raises:
        PresentationError: If beta.strands != w.rank
    """
    if beta.strands != w.rank:
        raise PresentationError(f"Braid on {beta.strands} strands cannot act on F_{w.rank}")
    n = w.rank
    for i, j, e in beta.letters:
        key = (n, i, j, e)
        images = _IMAGE_CACHE.get(key)
        if images is None:
            images = _IMAGE_CACHE.setdefault(key, _generator_images(n, i, j, e))
        w = w.substitute(images)
    return w


def acts_equally(a: PureBraidWord, b: PureBraidWord) -> bool:
    """Whether two braids induce the same automorphism of the free group."""
    n = a.strands
    return all(
        artin_act(a, FreeWord.generator(n, r)) == artin_act(b, FreeWord.generator(n, r))
        for r in range(1, n + 1)
    )


# ----------------------------------------------------------------------
# Braid monodromy
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class MonodromyBraid:
    """alpha_q = A_{I_q}^{delta_q} for one vertex, labels in the slice order."""

    vertex: FrozenSet[int]
    alpha: PureBraidWord
    conjugator: PureBraidWord


def monodromy_factorization_holds(alphas: Sequence[PureBraidWord], strands: int) -> bool:
    """Whether alpha_1 * ... * alpha_s acts on F_n as the full twist A_[n]."""
    product = PureBraidWord.identity(strands)
    for a in alphas:
        product = product * a
    if strands < 2:
        return True
    return acts_equally(product, full_twist(range(1, strands + 1), strands))


def real_braid_monodromy(slice_data) -> List[MonodromyBraid]:
    """
    Braid monodromy of a real line picture.

    For each vertex q (by decreasing u) with lines I and lines I'' above it,
    J = {i in I'' : min I < i < max I} and
    delta = prod_{i in I} prod_{j in J, j < i} A_{ji}, alpha = A_I^delta.

    Raises:
        PresentationError: If the factorization check fails on an arrangement without parallels
    """
    n = slice_data.n
    result = []
    for vertex in slice_data.vertices:
        lines = sorted(vertex.lines)
        above = slice_data.above(vertex)
        between = sorted(i for i in above if lines[0] < i < lines[-1])
        delta = PureBraidWord(
            n, tuple((j, i, 1) for i in lines for j in between if j < i)
        )
        alpha = full_twist(lines, n).conjugate(delta)
        result.append(MonodromyBraid(vertex.lines, alpha, delta))

    if len(set(slice_data.slopes)) == n:
        if not monodromy_factorization_holds([m.alpha for m in result], n):
            raise PresentationError("Braid monodromy does not multiply to the full twist")
    else:
        logger.debug("Parallel lines present; factorization check skipped")
    return result
