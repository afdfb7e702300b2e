"""
Fox calculus - Jacobians, Alexander matrices and their linearizations.

Alexander matrices have one row per relator and one column per generator,
entries in Z[t_1^{+-1}, ..., t_n^{+-1}] (LaurentPoly, variable k = meridian
x_{k+1}). Linearized matrices replace each entry by the degree-1 part
under t_i -> 1 - lambda_i and are stored as integer coefficient vectors.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from arrkit_algebra import LaurentPoly, MatrixSizeError, snf

from arrkit_topology.arrangement import IntersectionLattice
from arrkit_topology.braids import FreeWord, PureBraidWord, artin_act
from arrkit_topology.budget import Budget
from arrkit_topology.errors import BudgetExceededError, PresentationError
from arrkit_topology.presentation import GroupPresentation, _monodromy_items

logger = logging.getLogger(__name__)

GroupRingElement = Dict[FreeWord, int]


# ----------------------------------------------------------------------
# Fox derivatives
# ----------------------------------------------------------------------


def fox_derivative(w: FreeWord, j: int) -> GroupRingElement:
    """
    Fox derivative d w / d x_j in Z[F_n].

    Each occurrence of x_j contributes +prefix and each x_j^-1 contributes
    -prefix * x_j^-1, where prefix is the subword before the occurrence.
    """
    out: GroupRingElement = {}
    for k, x in enumerate(w.letters):
        if abs(x) != j:
            continue
        prefix = FreeWord(w.rank, w.letters[:k] if x > 0 else w.letters[:k + 1])
        out[prefix] = out.get(prefix, 0) + (1 if x > 0 else -1)
    return {g: c for g, c in out.items() if c}


def abelianize(element: GroupRingElement, n: int) -> LaurentPoly:
    """Image of a group-ring element under x_i -> t_i."""
    terms: Dict[Tuple[int, ...], int] = {}
    for word, c in element.items():
        e = word.exponent_sums()
        terms[e] = terms.get(e, 0) + c
    return LaurentPoly(n, terms)


def _abelian_row(w: FreeWord) -> List[LaurentPoly]:
    """All abelianized Fox derivatives of one word in a single pass."""
    n = w.rank
    columns: List[Dict[Tuple[int, ...], int]] = [{} for _ in range(n)]
    prefix = [0] * n
    for x in w.letters:
        k = abs(x) - 1
        if x > 0:
            key = tuple(prefix)
            columns[k][key] = columns[k].get(key, 0) + 1
            prefix[k] += 1
        else:
            prefix[k] -= 1
            key = tuple(prefix)
            columns[k][key] = columns[k].get(key, 0) - 1
    return [LaurentPoly(n, c) for c in columns]


# ----------------------------------------------------------------------
# Alexander matrices
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class AlexanderMatrix:
    """
    Abelianized Fox Jacobian of a presentation.

    Attributes:
        n: Number of generators (= columns = Laurent variables)
        rows: One tuple of n LaurentPoly per relator
        tags: Relator provenance copied from the presentation
    """

    n: int
    rows: Tuple[Tuple[LaurentPoly, ...], ...]
    tags: Tuple[str, ...] = ()

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.rows[i][j]

    def at_one(self) -> List[List[int]]:
        return [[p.constant_part() for p in row] for row in self.rows]

    def to_json(self):
        return {
            "n": self.n,
            "tags": list(self.tags),
            "rows": [[p.to_json() for p in row] for row in self.rows],
        }


def alexander_matrix(pres: GroupPresentation) -> AlexanderMatrix:
    """
    Alexander matrix of a presentation with H1 free on the generators.

    Raises:
        PresentationError: If a relator has nonzero exponent sum
    """
    rows = []
    for k, r in enumerate(pres.relators):
        if any(r.exponent_sums()):
            raise PresentationError(f"Relator {k} has nonzero exponent sum")
        rows.append(tuple(_abelian_row(r)))
    return AlexanderMatrix(pres.rank, tuple(rows), pres.tags)


def gassner(beta: PureBraidWord) -> Tuple[Tuple[LaurentPoly, ...], ...]:
    """Gassner matrix: entry (i, j) is the abelianized d beta(x_i) / d x_j."""
    n = beta.strands
    return tuple(
        tuple(_abelian_row(artin_act(beta, FreeWord.generator(n, i))))
        for i in range(1, n + 1)
    )


def gassner_alexander(monodromy, n: int) -> AlexanderMatrix:
    """
    Alexander matrix of a braid monodromy presentation from Gassner matrices:
    the rows i of Theta(alpha_q) - id for i in the vertex minus its largest line.
    """
    rows, tags = [], []
    for vertex, alpha in _monodromy_items(monodromy):
        theta = gassner(alpha)
        for i in sorted(vertex)[:-1]:
            row = list(theta[i - 1])
            row[i - 1] = row[i - 1] - 1
            rows.append(tuple(row))
            tags.append(f"{''.join(map(str, sorted(vertex)))}:{i}")
    return AlexanderMatrix(n, tuple(rows), tuple(tags))


# ----------------------------------------------------------------------
# Linearization
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class LinearAlexanderMatrix:
    """
    Matrix of integer linear forms in lambda_1..lambda_n.

    coeffs has shape (rows, n, n): coeffs[r, c, k] is the lambda_{k+1}
    coefficient of entry (r, c).
    """

    n: int
    coeffs: np.ndarray

    @property
    def nrows(self) -> int:
        return int(self.coeffs.shape[0])

    def entry(self, r: int, c: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.coeffs[r, c])

    def evaluate(self, lams: np.ndarray, modulus: Optional[int] = None) -> np.ndarray:
        """Matrices at a batch of points, shape (B, rows, n), reduced mod `modulus` if given."""
        lams = np.atleast_2d(np.asarray(lams, dtype=np.int64))
        mats = np.einsum("rck,bk->brc", self.coeffs, lams)
        return mats % modulus if modulus else mats

    def row_set(self) -> set:
        return {tuple(map(tuple, self.coeffs[r].tolist())) for r in range(self.nrows)}

    def to_json(self):
        return {"n": self.n, "rows": self.coeffs.tolist()}


def linearize(matrix: AlexanderMatrix) -> LinearAlexanderMatrix:
    """
    Degree-1 part of an Alexander matrix under t_i -> 1 - lambda_i.

    Raises:
        PresentationError: If some entry has a nonzero constant part
    """
    n = matrix.n
    coeffs = np.zeros((matrix.nrows, n, n), dtype=np.int64)
    for r, row in enumerate(matrix.rows):
        for c, p in enumerate(row):
            if p.constant_part():
                raise PresentationError(f"Entry ({r}, {c}) is not in the augmentation ideal")
            coeffs[r, c] = p.linear_part()
    return LinearAlexanderMatrix(n, coeffs)


def linearize_from_lattice(lat: IntersectionLattice) -> LinearAlexanderMatrix:
    """
    Linearized Alexander matrix straight from the lattice.

    For each intersection point I (double points included) and i in I
    minus its largest line, the row has entry lambda_i - [i = j] sum_{k in I} lambda_k
    in each column j of I.
    """
    n = lat.n
    rows = []
    for point in lat.points():
        members = sorted(point)
        for i in members[:-1]:
            row = np.zeros((n, n), dtype=np.int64)
            for j in members:
                row[j - 1, i - 1] += 1
                if j == i:
                    for k in members:
                        row[j - 1, k - 1] -= 1
            rows.append(row)
    coeffs = np.stack(rows) if rows else np.zeros((0, n, n), dtype=np.int64)
    return LinearAlexanderMatrix(n, coeffs)


# ----------------------------------------------------------------------
# Homology of finite abelian covers
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class KernelHomology:
    """H1 of a finite abelian cover: Z^free_rank + sum Z_d over torsion."""

    free_rank: int
    torsion: Tuple[int, ...]
    order: int

    def betti_mod(self, q: int) -> int:
        """dim H1(cover; F_q)."""
        return self.free_rank + sum(1 for d in self.torsion if d % q == 0)

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "index": self.order}


def _group_elements(moduli: Sequence[int]) -> List[Tuple[int, ...]]:
    return list(itertools.product(*(range(m) for m in moduli)))


def _encode(moduli: Sequence[int], g: Sequence[int]) -> int:
    code = 0
    for m, x in zip(moduli, g):
        code = code * m + (x % m)
    return code


def _is_surjective(moduli: Sequence[int], images: Sequence[Sequence[int]]) -> bool:
    reached = {tuple(0 for _ in moduli)}
    frontier = list(reached)
    while frontier:
        nxt = []
        for g in frontier:
            for img in images:
                h = tuple((a + b) % m for a, b, m in zip(g, img, moduli))
                if h not in reached:
                    reached.add(h)
                    nxt.append(h)
        frontier = nxt
    total = 1
    for m in moduli:
        total *= m
    return len(reached) == total


def kernel_homology(
    pres: GroupPresentation,
    moduli: Sequence[int],
    images: Sequence[Sequence[int]],
    budget: Optional[Budget] = None,
) -> KernelHomology:
    """
    H1 of the cover defined by an epimorphism onto Gamma = sum Z_{moduli[i]}.

    Builds the Jacobian with each t_k replaced by the regular permutation
    action of images[k] and reads H1 off its Smith normal form.

    Args:
        pres: Presentation with H1 free on its generators
        moduli: Cyclic factors of Gamma
        images: images[k] is the image of x_{k+1}, one residue per factor
        budget: Limits on the matrix size

    Raises:
        ValueError: If the map is not onto Gamma
        BudgetExceededError: If the stored Jacobian entries, or the dense
            block left after unit elimination, exceed budget.snf_entries
    """
    budget = budget or Budget()
    n = pres.rank
    if len(images) != n:
        raise ValueError(f"Need {n} generator images, got {len(images)}")
    if not _is_surjective(moduli, images):
        raise ValueError("The map to Gamma is not surjective")
    order = 1
    for m in moduli:
        order *= m
    rows_total, cols_total = len(pres) * order, n * order
    matrix = alexander_matrix(pres)
    # each Laurent term spreads to one entry per element of Gamma
    terms = sum(len(poly) for row in matrix.rows for poly in row)
    budget.check_entries(terms * order, "kernel Jacobian entries")

    elements = _group_elements(moduli)

    def shift_of(exps: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(
            sum(e * img[f] for e, img in zip(exps, images)) % m for f, m in enumerate(moduli)
        )

    entries: Dict[Tuple[int, int], int] = {}
    for r, row in enumerate(matrix.rows):
        for j, poly in enumerate(row):
            for exps, c in poly.items():
                shift = shift_of(exps)
                for g in elements:
                    col = j * order + _encode(moduli, [a + b for a, b in zip(g, shift)])
                    key = (r * order + _encode(moduli, g), col)
                    value = entries.get(key, 0) + c
                    if value:
                        entries[key] = value
                    else:
                        entries.pop(key, None)
    try:
        result = snf(entries, shape=(rows_total, cols_total), cap=budget.snf_entries)
    except MatrixSizeError as e:
        raise BudgetExceededError("kernel Jacobian after unit elimination", e.entries, e.cap) from e
    free_rank = cols_total - (order - 1) - result.rank
    logger.info(f"kernel homology over |Gamma|={order}: rank {free_rank}, torsion {result.torsion}")
    return KernelHomology(free_rank, result.torsion, order)


def congruence_images(n: int, modulus: int) -> Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]:
    """Moduli and images of the reduction H1 = Z^n -> (Z_N)^n."""
    moduli = (modulus,) * n
    images = tuple(tuple(1 if f == k else 0 for f in range(n)) for k in range(n))
    return moduli, images
