"""
Presentation - finite presentations of arrangement groups.

Builds braid monodromy presentations (relators alpha(x_i) * x_i^-1), cones
them, assembles semidirect products F_m x| F_k, and resolves the group of
an Arrangement either from a generic real slice or from supplied braid
words relabeled onto the arrangement's lines.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from arrkit_topology.arrangement import (
    Arrangement,
    affine_lattice_from_points,
    compute_lattice,
    cone_lattice,
    lattice_isomorphism,
)
from arrkit_topology.braids import (
    FreeWord,
    MonodromyBraid,
    PureBraidWord,
    artin_act,
    commutator,
    delete_strands,
    real_braid_monodromy,
)
from arrkit_topology.budget import DEFAULT_SLICE_RETRIES
from arrkit_topology.errors import ArrangementError, PresentationError
from arrkit_topology.slicing import generic_slice

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupPresentation:
    """
    Presentation on generators x_1..x_rank.

    Every relator must have zero exponent sum in each generator, so that
    H1 of the group is free abelian on the meridians.

    Attributes:
        rank: Number of generators
        relators: Relator words
        tags: Provenance per relator, e.g. "124:1" for flat {1,2,4} and generator x_1
    """

    rank: int
    relators: Tuple[FreeWord, ...] = ()
    tags: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.tags:
            object.__setattr__(self, "tags", ("",) * len(self.relators))
        if len(self.tags) != len(self.relators):
            raise PresentationError("One tag per relator is required")
        for k, r in enumerate(self.relators):
            if r.rank != self.rank:
                raise PresentationError(f"Relator {k} lives in F_{r.rank}, expected F_{self.rank}")
            if any(r.exponent_sums()):
                raise PresentationError(f"Relator {k} = {r} has nonzero exponent sum")

    def __len__(self) -> int:
        return len(self.relators)

    def to_json(self):
        return {
            "rank": self.rank,
            "relators": [r.to_json() for r in self.relators],
            "tags": list(self.tags),
        }

    def __str__(self) -> str:
        gens = ", ".join(f"x{i}" for i in range(1, self.rank + 1))
        rels = ", ".join(str(r) for r in self.relators)
        return f"<{gens} | {rels}>"


def _tag(flat: Iterable[int], i: int) -> str:
    return f"{''.join(str(k) if k < 10 else f'({k})' for k in sorted(flat))}:{i}"


def _monodromy_items(monodromy) -> List[Tuple[frozenset, PureBraidWord]]:
    items = []
    for entry in monodromy:
        if isinstance(entry, MonodromyBraid):
            items.append((frozenset(entry.vertex), entry.alpha))
        else:
            vertex, alpha = entry
            items.append((frozenset(vertex), alpha))
    return items


def presentation(monodromy, n: int) -> GroupPresentation:
    """
    Braid monodromy presentation.

    Args:
        monodromy: MonodromyBraid values or (vertex, alpha) pairs on n strands
        n: Number of strands

    Returns:
        Relators alpha_q(x_i) * x_i^-1 for i in the vertex minus its largest line
    """
    relators, tags = [], []
    for vertex, alpha in _monodromy_items(monodromy):
        if alpha.strands != n:
            raise PresentationError(f"Braid on {alpha.strands} strands in a monodromy on {n}")
        for i in sorted(vertex)[:-1]:
            x = FreeWord.generator(n, i)
            relators.append(artin_act(alpha, x) * x.inverse())
            tags.append(_tag(vertex, i))
    return GroupPresentation(n, tuple(relators), tuple(tags))


def cone_presentation(pres: GroupPresentation) -> GroupPresentation:
    """
    Presentation of G = G* x Z on one more generator.

    The new generator x_{n+1} is the line at infinity; x_1 ... x_{n+1} is
    made central by the relators [x_1 ... x_{n+1}, x_i], i <= n.
    """
    n = pres.rank + 1
    relators = [r.widen(n) for r in pres.relators]
    tags = list(pres.tags)
    product = FreeWord(n, tuple(range(1, n + 1)))
    for i in range(1, n):
        relators.append(commutator(product, FreeWord.generator(n, i)))
        tags.append(f"center:{i}")
    return GroupPresentation(n, tuple(relators), tuple(tags))


def semidirect_presentation(braids: Sequence[PureBraidWord]) -> GroupPresentation:
    """
    F_m x| F_k with y_j acting on the fiber by braids[j-1].

    Generators are x_1..x_m followed by y_j = x_{m+j}; relators are
    y_j^-1 x_i y_j alpha_j(x_i)^-1.
    """
    if not braids:
        raise PresentationError("A semidirect product needs at least one braid")
    m = braids[0].strands
    k = len(braids)
    rank = m + k
    relators, tags = [], []
    for j, beta in enumerate(braids, start=1):
        if beta.strands != m:
            raise PresentationError("All braids must act on the same number of strands")
        y = FreeWord.generator(rank, m + j)
        for i in range(1, m + 1):
            image = artin_act(beta, FreeWord.generator(m, i)).widen(rank)
            x = FreeWord.generator(rank, i)
            relators.append(y.inverse() * x * y * image.inverse())
            tags.append(f"y{j}:{i}")
    return GroupPresentation(rank, tuple(relators), tuple(tags))


def relabel(pres: GroupPresentation, mapping: Sequence[int]) -> GroupPresentation:
    """Rename generator k to mapping[k-1]."""
    if sorted(mapping) != list(range(1, pres.rank + 1)):
        raise PresentationError(f"{list(mapping)} is not a permutation of 1..{pres.rank}")
    relators = tuple(
        FreeWord(pres.rank, tuple(mapping[abs(x) - 1] * (1 if x > 0 else -1) for x in r.letters))
        for r in pres.relators
    )
    return GroupPresentation(pres.rank, relators, pres.tags)


def _cyclic_reduce(letters: Tuple[int, ...]) -> Tuple[int, ...]:
    while len(letters) >= 2 and letters[0] == -letters[-1]:
        letters = letters[1:-1]
    return letters


def _shorten_commutator(letters: Tuple[int, ...]) -> Tuple[int, ...]:
    """w x_i w^-1 x_i^-1 -> w' x_i w'^-1 x_i^-1 with trailing x_i powers dropped from w."""
    if len(letters) < 4 or letters[-1] >= 0:
        return letters
    i = -letters[-1]
    half = (len(letters) - 2) // 2
    if len(letters) != 2 * half + 2 or letters[half] != i:
        return letters
    w = letters[:half]
    if letters[half + 1:-1] != tuple(-x for x in reversed(w)):
        return letters
    while w and abs(w[-1]) == i:
        w = w[:-1]
    return w + (i,) + tuple(-x for x in reversed(w)) + (-i,)


def simplify(pres: GroupPresentation) -> GroupPresentation:
    """
    Tietze cleanup that keeps the group: cyclic reduction, shortening of
    conjugate-commutation relators, and removal of trivial or repeated relators.
    """
    seen = set()
    relators, tags = [], []
    for r, tag in zip(pres.relators, pres.tags):
        letters = _cyclic_reduce(FreeWord(pres.rank, _shorten_commutator(r.letters)).letters)
        if not letters:
            continue
        inverse = tuple(-x for x in reversed(letters))
        if letters in seen or inverse in seen:
            continue
        seen.add(letters)
        relators.append(FreeWord(pres.rank, letters))
        tags.append(tag)
    logger.debug(f"simplify: {len(pres)} -> {len(relators)} relators")
    return GroupPresentation(pres.rank, tuple(relators), tuple(tags))


def restrict_monodromy(monodromy, n: int, subset: Iterable[int]) -> GroupPresentation:
    """
    Presentation of the sub-arrangement on `subset` by strand deletion.

    Vertices meeting the subset in fewer than two lines drop out; the rest
    keep their conjugated full twists with the other strands forgotten.
    """
    keep = sorted(set(subset))
    removed = [k for k in range(1, n + 1) if k not in keep]
    relabel_map = {old: new for new, old in enumerate(keep, start=1)}
    restricted = []
    for vertex, alpha in _monodromy_items(monodromy):
        inside = [relabel_map[k] for k in sorted(vertex) if k in relabel_map]
        if len(inside) < 2:
            continue
        restricted.append((frozenset(inside), delete_strands(alpha, removed)))
    return presentation(restricted, len(keep))


# ----------------------------------------------------------------------
# Arrangement groups
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ArrangementGroup:
    """
    A presentation of G(A) with its provenance.

    Attributes:
        presentation: The group; generators follow the arrangement's labels when `labeled`
        route: "slice", "words" or "semidirect"
        monodromy: (vertex, alpha) pairs the presentation was built from, in their own labels
        order: order[k-1] is the arrangement line carrying monodromy label k
        labeled: False when the generator order carries no line labels
    """

    presentation: GroupPresentation
    route: str
    monodromy: Optional[Tuple[Tuple[frozenset, PureBraidWord], ...]] = None
    order: Optional[Tuple[int, ...]] = None
    labeled: bool = True

    @property
    def rank(self) -> int:
        return self.presentation.rank


def slice_group(arr: Arrangement, seed: int = 0, retries: int = DEFAULT_SLICE_RETRIES) -> ArrangementGroup:
    """Group of a real arrangement from a generic slice, generators labeled like arr's lines."""
    data = generic_slice(arr, seed=seed, retries=retries)
    monodromy = real_braid_monodromy(data)
    pres = relabel(presentation(monodromy, data.n), data.order)
    logger.info(f"{arr.name}: slice presentation with {len(pres)} relators")
    return ArrangementGroup(
        pres, "slice", tuple((m.vertex, m.alpha) for m in monodromy), data.order
    )


def word_group(arr: Arrangement) -> ArrangementGroup:
    """
    Group from supplied braid words.

    Monodromy words describe the decone with line n at infinity (or the
    affine arrangement itself); the words' lattice is matched to the
    arrangement's lattice and the generators relabeled accordingly.
    Semidirect words give an unlabeled presentation.

    Raises:
        ArrangementError: If no words are present or their lattice does not match
    """
    if arr.monodromy_override:
        items = tuple(_monodromy_items(arr.monodromy_override))
        strands = items[0][1].strands
        points = [v for v, _ in items]
        if arr.is_central:
            pres = cone_presentation(presentation(items, strands))
            words_lattice = cone_lattice(affine_lattice_from_points(strands, points))
        else:
            pres = presentation(items, strands)
            words_lattice = affine_lattice_from_points(strands, points)
        if words_lattice.n != arr.n:
            raise ArrangementError(f"{arr.name}: braid words on {strands} strands do not fit {arr.n} lines")
        mapping = lattice_isomorphism(words_lattice, compute_lattice(arr))
        if mapping is None:
            raise ArrangementError(f"{arr.name}: lattice of the braid words does not match the arrangement")
        if list(mapping) != list(range(1, arr.n + 1)):
            logger.info(f"{arr.name}: relabeling braid-word generators by {mapping}")
        return ArrangementGroup(relabel(pres, mapping), "words", items, mapping)
    if arr.semidirect_override:
        pres = semidirect_presentation(list(arr.semidirect_override))
        if arr.is_central:
            pres = cone_presentation(pres)
        if pres.rank != arr.n:
            raise ArrangementError(f"{arr.name}: semidirect words give rank {pres.rank}, expected {arr.n}")
        return ArrangementGroup(pres, "semidirect", labeled=False)
    raise ArrangementError(f"{arr.name}: no braid words supplied")


def arrangement_group(
    arr: Arrangement, seed: int = 0, retries: int = DEFAULT_SLICE_RETRIES, route: str = "auto"
) -> ArrangementGroup:
    """
    Presentation of the complement's fundamental group.

    Args:
        arr: Arrangement
        seed: Slice seed
        retries: Slice attempts
        route: "slice", "words" or "auto" (slice for real arrangements, words otherwise)
    """
    if route == "slice" or (route == "auto" and arr.is_real):
        return slice_group(arr, seed=seed, retries=retries)
    if route in ("words", "auto"):
        return word_group(arr)
    raise ValueError(f"Unknown route {route!r}")
