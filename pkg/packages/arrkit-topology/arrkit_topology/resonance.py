"""
Resonance - components of the resonance varieties R_d over F_p and neighborly partitions.

Two independent routes:
    - resonance_strata enumerates R_d(G, F_p) from the linearized Alexander
      matrix and groups its points into linear subspaces greedily.
    - neighborly_components builds the subspaces L_P of neighborly
      partitions of sub-arrangements from the lattice alone and certifies
      each one at a random point modulo a large prime.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from arrkit_algebra import FieldSpec, batched_rank, field_build, rank_over_field

from arrkit_topology.arrangement import IntersectionLattice, braid_subarrangements
from arrkit_topology.budget import Budget
from arrkit_topology.fox import LinearAlexanderMatrix, linearize_from_lattice
from arrkit_topology.jumping import LinearEvaluator, orbit_representatives

logger = logging.getLogger(__name__)

CERTIFY_PRIME = 1_000_003
RESONANCE_PRIMES = (7, 5, 3)
DEFAULT_SIZE_BOUND = 9
GENERIC_FIELD_LIMIT = 1024
GENERIC_MAX_DEGREE = 8
GENERIC_TRIALS = 2

Point = Tuple[int, ...]
Flat = FrozenSet[int]


# ----------------------------------------------------------------------
# Components
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ResonanceComponent:
    """
    A linear subspace of R_1.

    Attributes:
        basis: Row vectors over F_prime (or primitive integer vectors when prime is None)
        kind: "local", "braid" or "other"
        flat: The multiple point of a local component
        certificate: Blocks of the partition (neighborly route) or the
            braid sub-arrangement's pairing of lines
        prime: Characteristic of the basis, None for Q
    """

    basis: Tuple[Point, ...]
    kind: str = "other"
    flat: Optional[Flat] = None
    certificate: Optional[Tuple[Flat, ...]] = None
    prime: Optional[int] = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def support(self) -> Flat:
        return frozenset(i + 1 for v in self.basis for i, x in enumerate(v) if x)

    @property
    def name(self) -> str:
        if self.kind == "local" and self.flat is not None:
            return "L_" + "".join(map(str, sorted(self.flat)))
        if self.certificate:
            blocks = "|".join("".join(map(str, sorted(b))) for b in self.certificate)
            return f"L_({blocks})"
        return "L_{" + ",".join(map(str, sorted(self.support))) + "}"

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "dim": self.dim,
            "kind": self.kind,
            "prime": self.prime,
            "basis": [list(v) for v in self.basis],
            "certificate": [sorted(b) for b in self.certificate] if self.certificate else None,
        }


def dimension_counts(components: Sequence[ResonanceComponent]) -> Dict[int, int]:
    """h_r: number of components of dimension r."""
    return dict(sorted(Counter(c.dim for c in components).items()))


@dataclass(frozen=True)
class ResonanceReport:
    """
    Points of R_d(G, F_p) and their grouping into linear components.

    Attributes:
        prime: p
        depth: d
        point_count: Number of nonzero points of R_d
        components: Maximal linear subspaces found
        unabsorbed: Lines of R_d lying on no subspace of dimension >= 2
    """

    prime: int
    depth: int
    point_count: int
    components: Tuple[ResonanceComponent, ...]
    unabsorbed: Tuple[Point, ...] = field(default=())

    @property
    def h(self) -> Dict[int, int]:
        return dimension_counts(self.components)

    def to_json(self) -> Dict[str, Any]:
        return {
            "prime": self.prime,
            "depth": self.depth,
            "points": self.point_count,
            "h": {str(r): c for r, c in self.h.items()},
            "components": [c.to_json() for c in self.components],
            "unabsorbed": [list(v) for v in self.unabsorbed],
        }


def default_prime(n: int, budget: Optional[Budget] = None) -> int:
    """Largest of 7, 5, 3 whose n-th power fits the point budget."""
    budget = budget or Budget()
    for p in RESONANCE_PRIMES:
        if p**n - 1 <= budget.points:
            return p
    return RESONANCE_PRIMES[-1]


# ----------------------------------------------------------------------
# Vectors over F_p
# ----------------------------------------------------------------------


def _normalize(v: Sequence[int], p: int) -> Point:
    """Scale so that the first nonzero coordinate is 1."""
    lead = next((x for x in v if x % p), 0)
    if not lead:
        return tuple(0 for _ in v)
    inv = pow(int(lead), -1, p)
    return tuple((int(x) * inv) % p for x in v)


def _span_points(basis: Sequence[Point], p: int) -> Set[Point]:
    """Normalized nonzero points of the span."""
    n = len(basis[0])
    out: Set[Point] = set()
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if not any(coeffs):
            continue
        v = [0] * n
        for c, b in zip(coeffs, basis):
            if c:
                for i, x in enumerate(b):
                    v[i] += c * x
        out.add(_normalize(v, p))
    return out


def _echelon_key(basis: Sequence[Point], p: Optional[int]) -> Tuple[Tuple, ...]:
    """Reduced row echelon form, used to compare spans."""
    rows = [[Fraction(x) for x in v] for v in basis]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if (rows[k][c] % p if p else rows[k][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        if p:
            inv = pow(int(rows[r][c]) % p, -1, p)
            rows[r] = [Fraction((int(x) * inv) % p) for x in rows[r]]
        else:
            lead = rows[r][c]
            rows[r] = [x / lead for x in rows[r]]
        for k in range(len(rows)):
            if k != r and (rows[k][c] % p if p else rows[k][c]):
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
                if p:
                    rows[k] = [Fraction(int(x) % p) for x in rows[k]]
        r += 1
    return tuple(tuple(x) for x in rows[:r])


# ----------------------------------------------------------------------
# Enumeration route
# ----------------------------------------------------------------------


def resonance_points(
    linear: LinearAlexanderMatrix, p: int, d: int = 1, budget: Optional[Budget] = None
) -> List[Point]:
    """
    Normalized points (one per line) of R_d(G, F_p) minus the origin.

    Raises:
        BudgetExceededError: If p^n - 1 exceeds the budget
    """
    budget = budget or Budget()
    n = linear.n
    total = p**n
    budget.check_points(total - 1, f"points of F_{p}^{n}")
    evaluate = LinearEvaluator(linear, p)
    units = tuple(range(1, p))
    step = max(1, budget.chunk)
    points: List[Point] = []
    for start in range(1, total, step):
        exps, _ = orbit_representatives(start, min(start + step, total), n, p, units)
        if len(exps) == 0:
            continue
        depths = evaluate(exps)
        points.extend(_normalize(v, p) for v in exps[depths >= d].tolist())
    logger.info(f"R_{d}(F_{p}): {len(points)} line(s) out of {(total - 1) // (p - 1)}")
    return points


class _GenericCheck:
    """
    Depth at random points of a span over F_{p^s}, the largest extension
    with at most GENERIC_FIELD_LIMIT elements (and degree at most 8).

    A subspace all of whose F_p-points are resonant can still straddle
    several components; its points over the extension then are not.
    """

    def __init__(self, linear: LinearAlexanderMatrix, p: int, depth: int, seed: int = 0):
        s = 1
        while s < GENERIC_MAX_DEGREE and p ** (s + 1) <= GENERIC_FIELD_LIMIT:
            s += 1
        self.field = field_build(FieldSpec.extension(p, s))
        self.linear = linear
        self.depth = depth
        self.coeffs = self.field.np_from_int(linear.coeffs)
        self.rng = np.random.default_rng(seed)

    def __call__(self, basis: Sequence[Point]) -> bool:
        fld = self.field
        if self.linear.nrows == 0:
            return self.linear.n - 1 >= self.depth
        vectors = fld.np_from_int(np.asarray(basis, dtype=np.int64))
        weights = self.rng.integers(1, fld.order, size=(GENERIC_TRIALS, len(basis)))
        lams = np.zeros((GENERIC_TRIALS, self.linear.n), dtype=np.int64)
        for j in range(len(basis)):
            lams = fld.np_add(lams, fld.np_mul(weights[:, j:j + 1], vectors[j][None, :]))
        mats = np.zeros((GENERIC_TRIALS, self.linear.nrows, self.linear.n), dtype=np.int64)
        for k in range(self.linear.n):
            mats = fld.np_add(mats, fld.np_mul(self.coeffs[None, :, :, k], lams[:, k][:, None, None]))
        ranks = batched_rank(fld, mats)
        return bool((self.linear.n - 1 - ranks >= self.depth).all())


def _grow(
    seed: Point,
    points: Set[Point],
    ordered: Sequence[Point],
    p: int,
    check: Optional[_GenericCheck] = None,
) -> List[Point]:
    basis = [seed]
    span = {seed}
    for cand in ordered:
        if cand in span:
            continue
        trial = _span_points(basis + [cand], p)
        if trial <= points and (check is None or check(basis + [cand])):
            basis.append(cand)
            span = trial
    return basis


def _classify(
    basis: Sequence[Point],
    p: Optional[int],
    lat: Optional[IntersectionLattice],
    braids: Sequence[Tuple[Flat, Tuple[Flat, ...]]],
) -> ResonanceComponent:
    comp = ResonanceComponent(tuple(tuple(v) for v in basis), prime=p)
    if lat is None:
        return comp
    support = comp.support
    for flat in lat.flats:
        sums_vanish = all((sum(v) % p if p else sum(v)) == 0 for v in comp.basis)
        if support <= flat and comp.dim == len(flat) - 1 and sums_vanish:
            return ResonanceComponent(comp.basis, "local", flat, prime=p)
    if comp.dim == 2:
        for s, pairing in braids:
            if support == s:
                return ResonanceComponent(comp.basis, "braid", certificate=pairing, prime=p)
    return comp


def group_components(
    points: Sequence[Point],
    p: int,
    lat: Optional[IntersectionLattice] = None,
    linear: Optional[LinearAlexanderMatrix] = None,
    depth: int = 1,
    seed: int = 0,
) -> Tuple[List[ResonanceComponent], List[Point]]:
    """
    Greedy linear closure: each unassigned point seeds the largest subspace
    through it that the point set contains.

    With `linear`, a subspace only grows while its generic points over an
    extension of F_p keep depth >= `depth`.

    Returns:
        (components of dimension >= 2, unabsorbed points)
    """
    pool = set(points)
    ordered = sorted(pool)
    assigned: Set[Point] = set()
    found: Dict[Tuple, List[Point]] = {}
    check = _GenericCheck(linear, p, depth, seed) if linear is not None else None
    for start in ordered:
        if start in assigned:
            continue
        basis = _grow(start, pool, ordered, p, check)
        if len(basis) < 2:
            continue
        assigned |= _span_points(basis, p)
        found.setdefault(_echelon_key(basis, p), basis)
    unabsorbed = [v for v in ordered if v not in assigned]
    if unabsorbed:
        logger.warning(f"{len(unabsorbed)} resonance line(s) over F_{p} lie on no plane of R")
    braids = braid_subarrangements(lat) if lat is not None else []
    components = [
        _classify([tuple(int(x) for x in row) for row in key], p, lat, braids) for key in found
    ]
    components.sort(key=lambda c: (-c.dim, c.kind != "local", sorted(c.support)))
    return components, unabsorbed


def resonance_strata(
    linear: LinearAlexanderMatrix,
    p: int,
    d: int = 1,
    lat: Optional[IntersectionLattice] = None,
    budget: Optional[Budget] = None,
) -> ResonanceReport:
    """R_d(G, F_p): its points and linear components."""
    points = resonance_points(linear, p, d, budget)
    components, unabsorbed = group_components(points, p, lat, linear, d)
    return ResonanceReport(p, d, len(points), tuple(components), tuple(unabsorbed))


def resonance_components(
    linear: LinearAlexanderMatrix,
    p: int,
    lat: Optional[IntersectionLattice] = None,
    budget: Optional[Budget] = None,
) -> ResonanceReport:
    """Components of R_1(G, F_p), classified against the lattice when given."""
    return resonance_strata(linear, p, 1, lat, budget)


# ----------------------------------------------------------------------
# Neighborly partitions
# ----------------------------------------------------------------------


def _set_partitions(items: Sequence[Any]) -> Iterator[List[List[Any]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def _atoms(subset: Sequence[int], points: Sequence[Flat]) -> List[Flat]:
    """Classes of lines joined by induced double points; they share a block."""
    parent = {i: i for i in subset}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    s = set(subset)
    for pt in points:
        inside = pt & s
        if len(inside) == 2:
            a, b = sorted(inside)
            parent[find(a)] = find(b)
    classes: Dict[int, Set[int]] = {}
    for i in subset:
        classes.setdefault(find(i), set()).add(i)
    return [frozenset(c) for c in classes.values()]


def is_neighborly(blocks: Sequence[Flat], points: Sequence[Flat]) -> bool:
    """|block & I| >= |I| - 1 forces I inside the block, for every induced point I."""
    for pt in points:
        for b in blocks:
            inside = len(pt & b)
            if inside >= len(pt) - 1 and inside < len(pt):
                return False
    return True


def _nullspace(rows: Sequence[Sequence[int]], n: int) -> List[Point]:
    """Basis of {x in Q^n : rows . x = 0} as primitive integer vectors."""
    work = [[Fraction(x) for x in r] for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(n):
        piv = next((k for k in range(r, len(work)) if work[k][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        lead = work[r][c]
        work[r] = [x / lead for x in work[r]]
        for k in range(len(work)):
            if k != r and work[k][c]:
                f = work[k][c]
                work[k] = [a - f * b for a, b in zip(work[k], work[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row, c in zip(work, pivots):
            v[c] = -row[free]
        denom = 1
        for x in v:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        ints = [int(x * denom) for x in v]
        g = 0
        for x in ints:
            g = gcd(g, x)
        basis.append(tuple(x // g for x in ints))
    return basis


def partition_subspace(lat: IntersectionLattice, blocks: Sequence[Flat]) -> List[Point]:
    """
    L_P inside Delta_n = {sum lambda_i = 0}: lambda vanishes off the
    blocks, and sum_{i in I} lambda_i = 0 for every induced point I not
    contained in a single block.
    """
    n = lat.n
    support = frozenset().union(*blocks)
    rows = [[1] * n]
    rows += [[1 if j == i else 0 for j in range(1, n + 1)] for i in range(1, n + 1) if i not in support]
    for pt in lat.points():
        inside = pt & support
        if len(inside) >= 2 and not any(inside <= b for b in blocks):
            rows.append([1 if j in inside else 0 for j in range(1, n + 1)])
    return _nullspace(rows, n)


def _certify(
    linear: LinearAlexanderMatrix, basis: Sequence[Point], rng: np.random.Generator
) -> bool:
    """Depth >= 1 at a random point of the span, modulo a large prime."""
    coeffs = rng.integers(1, CERTIFY_PRIME, size=len(basis))
    lam = (coeffs[None, :] @ (np.asarray(basis, dtype=np.int64) % CERTIFY_PRIME)) % CERTIFY_PRIME
    depth = LinearEvaluator(linear, CERTIFY_PRIME)(lam)
    return bool(depth[0] >= 1)


def _candidate_supports(lat: IntersectionLattice, size_bound: int) -> Iterator[Tuple[int, ...]]:
    """Sub-arrangements whose every line lies on two induced multiple points."""
    for size in range(3, min(size_bound, lat.n) + 1):
        for subset in itertools.combinations(range(1, lat.n + 1), size):
            s = set(subset)
            multiple = [f & s for f in lat.flats if len(f & s) >= 3]
            if all(sum(1 for f in multiple if i in f) >= 2 for i in subset):
                yield subset


def neighborly_components(
    lat: IntersectionLattice,
    size_bound: int = DEFAULT_SIZE_BOUND,
    budget: Optional[Budget] = None,
    seed: int = 0,
) -> List[ResonanceComponent]:
    """
    Components of R_1 over Q certified from neighborly partitions.

    Local components come from the one-block partitions of multiple
    points. Every other neighborly partition with at least three blocks
    of a sub-arrangement of at most size_bound lines gives L_P; it is kept
    when its generic point has depth >= 1, and only maximal subspaces are
    returned.

    Raises:
        BudgetExceededError: If the partitions examined exceed budget.points
    """
    budget = budget or Budget()
    linear = linearize_from_lattice(lat)
    rng = np.random.default_rng(seed)
    braids = {s: pairing for s, pairing in braid_subarrangements(lat)}
    found: Dict[Tuple, ResonanceComponent] = {}

    for flat in lat.flats:
        basis = partition_subspace(lat, [flat])
        comp = ResonanceComponent(tuple(basis), "local", flat, (flat,))
        found[_echelon_key(basis, None)] = comp

    examined = 0
    for subset in _candidate_supports(lat, size_bound):
        sub_points = [pt & set(subset) for pt in lat.points() if len(pt & set(subset)) >= 2]
        atoms = _atoms(subset, sub_points)
        if len(atoms) < 3:
            continue
        for part in _set_partitions(atoms):
            examined += 1
            budget.check_points(examined, "neighborly partitions")
            if len(part) < 3:
                continue
            blocks = [frozenset().union(*group) for group in part]
            if not is_neighborly(blocks, sub_points):
                continue
            basis = partition_subspace(lat, blocks)
            if len(basis) < 2:
                continue
            key = _echelon_key(basis, None)
            if key in found or not _certify(linear, basis, rng):
                continue
            s = frozenset(subset)
            kind = "braid" if len(basis) == 2 and s in braids else "other"
            blocks = tuple(sorted(blocks, key=lambda b: sorted(b)))
            found[key] = ResonanceComponent(tuple(basis), kind, certificate=blocks)
    logger.info(f"neighborly search examined {examined} partition(s)")

    comps = list(found.values())
    rationals = field_build(FieldSpec.rationals())

    def inside(a: ResonanceComponent, b: ResonanceComponent) -> bool:
        return a is not b and rank_over_field(rationals, list(b.basis) + list(a.basis)) == b.dim

    maximal = [c for c in comps if not any(inside(c, other) for other in comps)]
    maximal.sort(key=lambda c: (-c.dim, c.kind != "local", sorted(c.support)))
    return maximal


def cross_certify(
    report: ResonanceReport, certified: Sequence[ResonanceComponent]
) -> Dict[int, int]:
    """
    h_r agreed on by both routes.

    Raises:
        ValueError: If the enumerated and the neighborly tallies differ
    """
    enumerated = report.h
    neighborly = dimension_counts(certified)
    if enumerated != neighborly:
        raise ValueError(
            f"Resonance tallies disagree: F_{report.prime} enumeration {enumerated} vs neighborly {neighborly}"
        )
    return enumerated
