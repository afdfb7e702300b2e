"""
Slicing - generic real affine pictures of real arrangements.

A real central arrangement is cut by a pseudo-random affine plane and an
affine one is sheared; the result is a list of real lines v = c + m*u
together with the vertices ordered by decreasing u. This is the input of
the real braid monodromy.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Tuple

from arrkit_topology.arrangement import Arrangement, IntersectionLattice, _geometric_lattice, compute_lattice
from arrkit_topology.budget import DEFAULT_SLICE_RETRIES
from arrkit_topology.errors import ArrangementError, GenericityError

logger = logging.getLogger(__name__)

COEFF_RANGE = 20


@dataclass(frozen=True)
class Vertex:
    u: Fraction
    v: Fraction
    lines: FrozenSet[int]


@dataclass(frozen=True)
class SliceData:
    """
    Real lines v = intercepts[k] + slopes[k]*u, labeled 1..n by increasing v
    to the right of every vertex.

    Attributes:
        slopes, intercepts: Indexed by label - 1
        vertices: Intersection points in decreasing u order, with the labels through them
        order: order[k-1] is the arrangement's index of the line labeled k
        u0: The base fiber u-value used for the labeling
    """

    slopes: Tuple[Fraction, ...]
    intercepts: Tuple[Fraction, ...]
    vertices: Tuple[Vertex, ...]
    order: Tuple[int, ...]
    u0: Fraction

    @property
    def n(self) -> int:
        return len(self.slopes)

    def height(self, label: int, u: Fraction) -> Fraction:
        return self.intercepts[label - 1] + self.slopes[label - 1] * u

    def above(self, vertex: Vertex) -> FrozenSet[int]:
        """Labels of the lines passing above the vertex."""
        return frozenset(
            k for k in range(1, self.n + 1)
            if k not in vertex.lines and self.height(k, vertex.u) > vertex.v
        )


def _affine_lines(rows: Sequence[Tuple[Fraction, Fraction, Fraction]]) -> Optional[List[Tuple[Fraction, Fraction]]]:
    """(slope, intercept) for each a*u + b*v + c = 0, or None if some line is vertical."""
    lines = []
    for a, b, c in rows:
        if b == 0:
            return None
        lines.append((-a / b, -c / b))
    return lines


def _vertices(lines: Sequence[Tuple[Fraction, Fraction]]) -> Optional[List[Tuple[Fraction, Fraction, FrozenSet[int]]]]:
    """Intersection points grouped exactly; None if two vertices share a u-value."""
    points = {}
    for (i, (m1, c1)), (j, (m2, c2)) in itertools.combinations(enumerate(lines, start=1), 2):
        if m1 == m2:
            continue
        u = (c2 - c1) / (m1 - m2)
        v = c1 + m1 * u
        points.setdefault((u, v), set()).update((i, j))
    us = [u for u, _ in points]
    if len(set(us)) != len(us):
        return None
    return [(u, v, frozenset(s)) for (u, v), s in points.items()]


def _build(lines, vertices, original: Sequence[int]) -> SliceData:
    u0 = max((u for u, _, _ in vertices), default=Fraction(0)) + 1
    ranked = sorted(range(len(lines)), key=lambda k: lines[k][1] + lines[k][0] * u0)
    label_of = {k + 1: pos + 1 for pos, k in enumerate(ranked)}
    verts = sorted(
        (Vertex(u, v, frozenset(label_of[k] for k in s)) for u, v, s in vertices),
        key=lambda x: x.u,
        reverse=True,
    )
    return SliceData(
        slopes=tuple(lines[k][0] for k in ranked),
        intercepts=tuple(lines[k][1] for k in ranked),
        vertices=tuple(verts),
        order=tuple(original[k] for k in ranked),
        u0=u0,
    )


def _random_vector(rng: random.Random, size: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-COEFF_RANGE, COEFF_RANGE)) for _ in range(size))


def _dot(form, vec) -> Fraction:
    return sum((a * b for a, b in zip(form, vec)), Fraction(0))


def generic_slice(arr: Arrangement, seed: int = 0, retries: int = DEFAULT_SLICE_RETRIES) -> SliceData:
    """
    Generic real affine picture of a real arrangement.

    Central arrangements are cut by the plane p0 + u*e1 + v*e2 with seeded
    random rational p0, e1, e2; the slice must keep every line visible,
    create no parallels and preserve the lattice. Affine arrangements are
    tried first as given and then under random shears (u, v) -> (u + r*v, v).

    Args:
        arr: Real arrangement
        seed: Extra seed mixed with the arrangement fingerprint
        retries: Attempts before giving up

    Raises:
        ArrangementError: If the arrangement is not real
        GenericityError: If no generic slice was found
    """
    if not arr.is_real:
        raise ArrangementError(f"{arr.name}: real slices need rational forms; supply braid words instead")
    rng = random.Random(f"{arr.fingerprint()}:{seed}")
    lattice = compute_lattice(arr)
    original = list(range(1, arr.n + 1))

    for attempt in range(retries):
        if arr.ambient_dim == 3:
            p0, e1, e2 = (_random_vector(rng, 3) for _ in range(3))
            rows = [(_dot(f, e1), _dot(f, e2), _dot(f, p0)) for f in arr.forms]
        else:
            shear = Fraction(0) if attempt == 0 else Fraction(rng.randint(-COEFF_RANGE, COEFF_RANGE), rng.randint(1, COEFF_RANGE))
            rows = [(a, a * shear + b, c) for a, b, c in arr.forms]

        lines = _affine_lines(rows)
        if lines is None:
            continue
        if arr.ambient_dim == 3:
            if len({m for m, _ in lines}) != len(lines):
                continue
            try:
                picture = _geometric_lattice(Arrangement("slice", tuple(rows), ambient_dim=2))
            except ArrangementError:
                continue
            if IntersectionLattice(arr.n, picture.flats) != lattice:
                continue
        vertices = _vertices(lines)
        if vertices is None:
            continue
        logger.debug(f"{arr.name}: generic slice after {attempt + 1} attempt(s)")
        return _build(lines, vertices, original)

    raise GenericityError(f"{arr.name}: no generic slice in {retries} attempts")
