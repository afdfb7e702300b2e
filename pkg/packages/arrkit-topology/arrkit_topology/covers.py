"""
Covers - Betti numbers of finite abelian covers and Hirzebruch surfaces.

    b1(X_N)   = n + sum of depths over C of the t != 1 with t^N = 1
    b1(M_N)   = sum over the same t of the depth of t on its support
    b1(X_pi)  = n + sum over the nontrivial characters pulled back along pi

Chern numbers of M_N come from closed forms in the multiplicities; the
pencil formulas and Tayama's lower bound are closed forms too.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Rational, Symbol, expand, interpolate

from arrkit_algebra import snf

from arrkit_topology.arrangement import (
    Arrangement,
    IntersectionLattice,
    Multiplicities,
    compute_lattice,
    count_braid_subarrangements,
    restrict,
)
from arrkit_topology.budget import Budget
from arrkit_topology.errors import ArrangementError
from arrkit_topology.fox import AlexanderMatrix, alexander_matrix
from arrkit_topology.jumping import (
    Char0Evaluator,
    DepthCache,
    DepthProfile,
    characters_with_support,
    depth_profile,
    multiplier_group,
    tally_depths,
)
from arrkit_topology.presentation import ArrangementGroup, arrangement_group

logger = logging.getLogger(__name__)

N_SYMBOL = Symbol("N")


# ----------------------------------------------------------------------
# Congruence and abelian covers
# ----------------------------------------------------------------------


def b1_congruence(matrix: AlexanderMatrix, modulus: int, budget: Optional[Budget] = None) -> int:
    """
    b1 of the congruence cover X_N, the cover of (Z_N)^n.

    Raises:
        ValueError: If N < 1
        BudgetExceededError: If N^n - 1 exceeds the budget
    """
    if modulus < 1:
        raise ValueError(f"Need N >= 1, got {modulus}")
    if modulus == 1:
        return matrix.n
    profile = depth_profile(matrix, modulus, None, budget)
    return matrix.n + profile.depth_sum()


def _check_projection(projection: Sequence[Sequence[int]], n: int) -> np.ndarray:
    proj = np.asarray(projection, dtype=np.int64)
    if proj.ndim != 2 or proj.shape[1] != n:
        raise ValueError(f"Projection must be an m x {n} integer matrix, got shape {proj.shape}")
    rows = [[int(x) for x in r] for r in proj]
    result = snf(rows)
    if result.rank != len(rows) or any(d != 1 for d in result.factors):
        raise ValueError(f"Projection {rows} is not onto Z^{len(rows)}")
    return proj


def b1_abelian_cover(
    matrix: AlexanderMatrix,
    projection: Sequence[Sequence[int]],
    modulus: int,
    budget: Optional[Budget] = None,
) -> int:
    """
    b1 of the cover defined by H1(G) = Z^n -> Z^m -> (Z_N)^m.

    Args:
        matrix: Alexander matrix of G
        projection: m x n integer matrix of an epimorphism Z^n -> Z^m
        modulus: N >= 1
        budget: Enumeration limits

    Raises:
        ValueError: If the projection is not surjective
        BudgetExceededError: If N^m - 1 exceeds the budget
    """
    proj = _check_projection(projection, matrix.n)
    if modulus == 1:
        return matrix.n
    inner = Char0Evaluator(matrix, modulus)

    def evaluate(exps: np.ndarray, restrict: bool = False) -> np.ndarray:
        return inner((exps @ proj) % modulus, restrict)

    tally = tally_depths(
        evaluate,
        proj.shape[0],
        modulus,
        multiplier_group(modulus, 0),
        budget,
        desc=f"characters of (Z_{modulus})^{proj.shape[0]}",
    )
    profile = DepthProfile.from_tally(modulus, 0, tally)
    return matrix.n + profile.depth_sum()


def b1_cyclic_cover(matrix: AlexanderMatrix, modulus: int, budget: Optional[Budget] = None) -> int:
    """b1 of the N-fold cyclic cover for x_i -> 1 (the Milnor fiber for central arrangements)."""
    return b1_abelian_cover(matrix, [[1] * matrix.n], modulus, budget)


# ----------------------------------------------------------------------
# Hirzebruch covering surfaces
# ----------------------------------------------------------------------


def _require_central(arr: Arrangement) -> None:
    if not arr.is_central:
        raise ArrangementError(f"{arr.name}: Hirzebruch surfaces need a central 3-arrangement")


def b1_hirzebruch(
    arr: Arrangement,
    modulus: int,
    budget: Optional[Budget] = None,
    seed: int = 0,
    group: Optional[ArrangementGroup] = None,
) -> int:
    """
    b1 of the Hirzebruch covering surface M_N.

    Each character is evaluated on G / <<x_i : t_i = 1>>, the group of the
    sub-arrangement where it is supported; supports of at most two lines
    contribute nothing.

    Raises:
        ArrangementError: If arr is not central
        BudgetExceededError: If N^n - 1 exceeds the budget
    """
    _require_central(arr)
    if modulus == 1:
        return 0
    group = group or arrangement_group(arr, seed=seed)
    matrix = alexander_matrix(group.presentation)
    profile = depth_profile(matrix, modulus, None, budget, restrict=True)
    return profile.depth_sum()


def b1_hirzebruch_by_restriction(
    arr: Arrangement,
    modulus: int,
    budget: Optional[Budget] = None,
    seed: int = 0,
    cache: Optional[DepthCache] = None,
    supports: Optional[Sequence[Sequence[int]]] = None,
) -> int:
    """
    b1(M_N) from separate presentations of the sub-arrangements.

    Every support S with |S| >= 3 gets its own group from restrict(arr, S)
    and a generic slice; depths are memoized per (S, Galois class). With
    `supports` only those supports are summed, for spot checks.

    Raises:
        ArrangementError: If arr is not central or not real
    """
    _require_central(arr)
    if not arr.is_real:
        raise ArrangementError(f"{arr.name}: sub-arrangement slices need a real arrangement")
    budget = budget or Budget()
    budget.check_points(modulus**arr.n - 1)
    if modulus == 1:
        return 0
    cache = cache if cache is not None else DepthCache()
    multipliers = multiplier_group(modulus, 0)
    lat = compute_lattice(arr)
    if supports is None:
        supports = _supports(lat)
    total = 0
    for support in supports:
        s = tuple(sorted(support))
        if len(s) < 3:
            continue
        sub = arrangement_group(restrict(arr, s), seed=seed)
        evaluator = Char0Evaluator(alexander_matrix(sub.presentation), modulus)
        key_support = frozenset(s)
        classes: Dict[Tuple[int, ...], int] = {}
        for e in characters_with_support(len(s), modulus, range(1, len(s) + 1)):
            key = DepthCache.normalize(e, modulus, multipliers)
            classes[key] = classes.get(key, 0) + 1
        pending = [k for k in classes if cache.get((key_support, k)) is None]
        if pending:
            depths = evaluator(np.asarray(pending, dtype=np.int64))
            for k, d in zip(pending, depths.tolist()):
                cache.put((key_support, k), int(d))
        total += sum(cache.get((key_support, k)) * c for k, c in classes.items())
    logger.info(f"{arr.name}: b1(M_{modulus}) = {total} by restriction ({len(cache)} cached classes)")
    return total


def _supports(lat: IntersectionLattice) -> List[Tuple[int, ...]]:
    return [s for k in range(3, lat.n + 1) for s in itertools.combinations(range(1, lat.n + 1), k)]


def _is_pencil(mult: Multiplicities) -> bool:
    return mult.counts == ((mult.n, 1),)


def chern_numbers(mult: Multiplicities, modulus: int) -> Tuple[int, int]:
    """
    (c1^2, c2) of M_N for a central 3-arrangement that is not a pencil.

    Raises:
        ArrangementError: If the arrangement is a pencil (use pencil_chern_numbers)
    """
    if _is_pencil(mult):
        raise ArrangementError("Pencils have their own Chern numbers; use pencil_chern_numbers")
    n, s, m2, b2, N = mult.n, mult.s, mult.m(2), mult.b2, modulus
    scale = N ** (n - 3)
    c1sq = ((3 * b2 - s - 5 * n + 9) * N**2 - 4 * (b2 - n) * N + (b2 + n + m2)) * scale
    c2 = ((b2 - 2 * n + 3) * N**2 - 2 * (b2 - n) * N + (b2 + s - m2)) * scale
    return c1sq, c2


def pencil_chern_numbers(n: int, modulus: int) -> Tuple[int, int]:
    """(c1^2, c2) of M_N for a pencil of n >= 3 lines."""
    if n < 3:
        raise ValueError(f"A pencil needs n >= 3 lines, got {n}")
    N = modulus
    c1sq = N ** (n - 3) * ((n - 4) * N - n) * ((n - 2) * N - n)
    c2 = 2 * (2 - n) * N ** (n - 1) + N ** (n - 2) + 2 * n
    return c1sq, c2


def pencil_b1(modulus: int, n: int) -> int:
    """b(N, n) = b1(M_N) of a pencil of n lines."""
    if n < 3:
        raise ValueError(f"A pencil needs n >= 3 lines, got {n}")
    N = modulus
    return (N - 1) * ((n - 2) * N ** (n - 2) - 2 * sum(N**k for k in range(n - 2)))


def tayama_bound(lat: IntersectionLattice, modulus: int) -> int:
    """sum_{r >= 3} m_r b(N, r) + (number of braid sub-arrangements) b(N, 3)."""
    mult = lat.multiplicities()
    bound = sum(c * pencil_b1(modulus, r) for r, c in mult.counts if r >= 3)
    return bound + count_braid_subarrangements(lat) * pencil_b1(modulus, 3)


# ----------------------------------------------------------------------
# Polynomial periodicity
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodResult:
    """
    Outcome of detect_period.

    Attributes:
        period: Smallest T found, or None when inconclusive
        polynomials: polynomials[r-1] gives the values at N = r (mod T), r = 1..T
    """

    period: Optional[int]
    polynomials: Tuple[Any, ...] = ()

    @property
    def conclusive(self) -> bool:
        return self.period is not None

    def evaluate(self, modulus: int) -> int:
        if self.period is None:
            raise ValueError("No period was detected")
        r = (modulus - 1) % self.period
        return int(self.polynomials[r].subs(N_SYMBOL, modulus))

    def to_json(self) -> Dict[str, Any]:
        if self.period is None:
            return {"period": None, "status": "inconclusive"}
        return {"period": self.period, "polynomials": [str(p) for p in self.polynomials]}


def _fit(points: Sequence[Tuple[int, int]], deg_max: int):
    """Lowest-degree polynomial through every point, confirmed by one spare point."""
    for degree in range(deg_max + 1):
        if len(points) < degree + 2:
            return None
        poly = expand(interpolate([(x, Rational(y)) for x, y in points[: degree + 1]], N_SYMBOL))
        if all(poly.subs(N_SYMBOL, x) == y for x, y in points):
            return poly
    return None


def detect_period(values: Sequence[int], t_max: int = 6, deg_max: int = 6) -> PeriodResult:
    """
    Smallest T such that values[N-1] agrees with one polynomial on each residue class mod T.

    Args:
        values: Sequence indexed by N = 1..K
        t_max: Largest period tried
        deg_max: Largest polynomial degree tried

    Returns:
        PeriodResult; period None when no T <= t_max fits with a spare point per class
    """
    samples = [(k + 1, int(v)) for k, v in enumerate(values)]
    for period in range(1, t_max + 1):
        polys = []
        for r in range(1, period + 1):
            cls = [(x, y) for x, y in samples if (x - r) % period == 0]
            poly = _fit(cls, deg_max)
            if poly is None:
                break
            polys.append(poly)
        else:
            logger.info(f"period {period} detected on {len(samples)} samples")
            return PeriodResult(period, tuple(polys))
    return PeriodResult(None)


# ----------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CoverReport:
    """
    Covers at one N.

    Attributes:
        modulus: N
        b1_congruence: b1(X_N)
        b1_hirzebruch: b1(M_N) when computed
        chern: (c1^2, c2) of M_N when the arrangement is central
        profile: Depth tallies behind b1(X_N)
    """

    modulus: int
    b1_congruence: int
    b1_hirzebruch: Optional[int] = None
    chern: Optional[Tuple[int, int]] = None
    profile: Optional[DepthProfile] = field(default=None, compare=False)

    def csv_row(self) -> List[Any]:
        c1sq, c2 = self.chern if self.chern else ("", "")
        b1m = "" if self.b1_hirzebruch is None else self.b1_hirzebruch
        return [self.modulus, self.b1_congruence, b1m, c1sq, c2]

    def to_json(self) -> Dict[str, Any]:
        return {
            "N": self.modulus,
            "b1_X": self.b1_congruence,
            "b1_M": self.b1_hirzebruch,
            "c1_squared": self.chern[0] if self.chern else None,
            "c2": self.chern[1] if self.chern else None,
            "profile": self.profile.to_json() if self.profile else None,
        }


def cover_report(
    arr: Arrangement,
    modulus: int,
    budget: Optional[Budget] = None,
    seed: int = 0,
    hirzebruch: bool = True,
    group: Optional[ArrangementGroup] = None,
) -> CoverReport:
    """b1(X_N), and for central arrangements b1(M_N) and the Chern numbers."""
    group = group or arrangement_group(arr, seed=seed)
    matrix = alexander_matrix(group.presentation)
    if modulus == 1:
        profile = None
        b1x = matrix.n
    else:
        profile = depth_profile(matrix, modulus, None, budget)
        b1x = matrix.n + profile.depth_sum()
    b1m, chern = None, None
    if arr.is_central:
        mult = compute_lattice(arr).multiplicities()
        chern = pencil_chern_numbers(mult.n, modulus) if _is_pencil(mult) else chern_numbers(mult, modulus)
        if hirzebruch:
            b1m = b1_hirzebruch(arr, modulus, budget, seed, group)
    return CoverReport(modulus, b1x, b1m, chern, profile)
