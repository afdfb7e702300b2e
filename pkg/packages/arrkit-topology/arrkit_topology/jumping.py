"""
Jumping loci - depth of characters and the torsion-point counts built on it.

A character t of G is a point of the torus (K*)^n. Its depth is
dim H^1(G; K_t) = max(0, n - 1 - rank A(t)) for t != 1, with A the
Alexander matrix. Torsion characters t = xi^e (xi a primitive N-th root of
unity, e in (Z_N)^n) are enumerated in chunks, one representative per
orbit of a multiplier group acting by e -> k*e, and tallied by exact order
and depth.

Depth over C is computed on a prime field F_l with l = 1 (mod N) standing
in for Q(zeta_N): ranks at two or more such primes are compared and the
maximum is accepted once it is attained twice. Characters whose primes
keep disagreeing are evaluated exactly over the cyclotomic field. When
phi(N) <= 4 whole profiles also recheck every positive depth there.
"""

import logging
import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols
from tqdm import tqdm

from arrkit_algebra import (
    FieldInterface,
    FieldMatrix,
    FieldSpec,
    FiniteFieldInterface,
    batched_rank,
    euler_phi,
    ff_rank,
    field_build,
    multiplicative_order,
    primes_congruent_one,
    root_of_unity_mod,
)

from arrkit_topology.budget import Budget
from arrkit_topology.fox import AlexanderMatrix, LinearAlexanderMatrix

logger = logging.getLogger(__name__)

# Cells per numpy batch (matrix entries or term evaluations), ~32 MB of int64
BATCH_CELLS = 1 << 22

DEFAULT_PROXY_PRIMES = 2
MAX_PROXY_PRIMES = 6

Exponents = Tuple[int, ...]
Evaluator = Callable[[np.ndarray, bool], np.ndarray]


# ----------------------------------------------------------------------
# Single characters
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """
    A point t of (K*)^n.

    Attributes:
        field: Field the coordinates live in
        coordinates: t_1..t_n, all nonzero
        order: Least N with t^N = 1 when known
    """

    field: FieldInterface
    coordinates: Tuple[Any, ...]
    order: Optional[int] = None

    def __post_init__(self):
        for i, x in enumerate(self.coordinates, start=1):
            if not self.field.contains(x):
                raise ValueError(f"t_{i} = {x!r} is not an element of {self.field!r}")
            if self.field.is_zero(x):
                raise ValueError(f"t_{i} is zero; characters live in the torus")

    @classmethod
    def from_exponents(cls, fld: FieldInterface, exponents: Sequence[int], modulus: int) -> "Character":
        """t = xi^exponents for a primitive modulus-th root of unity xi of the field."""
        xi = fld.primitive_root_of_unity(modulus)
        coords = tuple(fld.power(xi, int(e) % modulus) for e in exponents)
        g = gcd(modulus, *[int(e) for e in exponents]) if exponents else modulus
        return cls(fld, coords, modulus // g)

    @property
    def n(self) -> int:
        return len(self.coordinates)

    def is_trivial(self) -> bool:
        return all(self.field.eq(x, self.field.one) for x in self.coordinates)

    def support(self) -> frozenset:
        """Labels i with t_i != 1."""
        return frozenset(
            i for i, x in enumerate(self.coordinates, start=1) if not self.field.eq(x, self.field.one)
        )


def _depth(size: int, rank: int) -> int:
    return max(0, size - 1 - rank)


def depth_at(matrix: AlexanderMatrix, t: Character, restrict: bool = False) -> int:
    """
    Depth of a nontrivial character.

    With `restrict`, the depth is that of t on the sub-arrangement where it
    is supported: columns of lines with t_i = 1 are dropped, which presents
    G / <<x_i : t_i = 1>>.

    Raises:
        ValueError: If t is trivial or has the wrong length
    """
    if t.n != matrix.n:
        raise ValueError(f"Character has {t.n} coordinates, matrix has {matrix.n} columns")
    if t.is_trivial():
        raise ValueError("depth is defined for t != 1; use b1 for the trivial character")
    fld = t.field
    support = t.support() if restrict else frozenset(range(1, matrix.n + 1))
    if restrict and len(support) <= 2:
        return 0
    rows = [
        [p.evaluate(fld, t.coordinates) if j + 1 in support else fld.zero for j, p in enumerate(row)]
        for row in matrix.rows
    ]
    rank = ff_rank(FieldMatrix.from_rows(fld, rows)) if rows else 0
    return _depth(len(support), rank)


def cyclotomic_field(modulus: int) -> FieldInterface:
    """Q(zeta_N) as a number field."""
    x = symbols("x")
    coeffs = [int(c) for c in reversed(Poly(cyclotomic_poly(modulus, x), x).all_coeffs())]
    return field_build(FieldSpec.number_field(coeffs))


def _cyclotomic_character(fld: FieldInterface, exponents: Sequence[int], modulus: int) -> Character:
    # x is a primitive root of unity in Q[x]/(Phi_N); Phi_2 is linear
    xi = fld.generator if modulus > 2 else fld.from_int(-1)
    coords = tuple(fld.power(xi, int(e) % modulus) for e in exponents)
    return Character(fld, coords, modulus)


def depth_char0(
    matrix: AlexanderMatrix,
    exponents: Sequence[int],
    modulus: int,
    method: str = "auto",
    restrict: bool = False,
) -> int:
    """
    Depth over C of the torsion character t = zeta_N^exponents.

    Args:
        matrix: Alexander matrix
        exponents: e in Z^n
        modulus: N >= 2
        method: "exact" (over Q(zeta_N)), "modular" (multi-prime proxy) or
            "auto" (exact when phi(N) <= 4)
        restrict: Evaluate on the supporting sub-arrangement

    Raises:
        ValueError: If N < 2 or t is trivial
    """
    if modulus < 2:
        raise ValueError(f"Need N >= 2, got {modulus}")
    e = np.asarray([[int(x) % modulus for x in exponents]], dtype=np.int64)
    if not e.any():
        raise ValueError("depth is defined for t != 1; use b1 for the trivial character")
    if method == "auto":
        method = "exact" if euler_phi(modulus) <= 4 else "modular"
    if method == "exact":
        t = _cyclotomic_character(cyclotomic_field(modulus), e[0].tolist(), modulus)
        return depth_at(matrix, t, restrict=restrict)
    if method == "modular":
        return int(Char0Evaluator(matrix, modulus)(e, restrict)[0])
    raise ValueError(f"Unknown method {method!r}")


# ----------------------------------------------------------------------
# Batched evaluation
# ----------------------------------------------------------------------


class _TermTable:
    """
    Nonzero terms of an Alexander matrix, flattened.

    Term k contributes coeffs[k] * t^exps[k] to entry (rows[k], cols[k]);
    slots[k] numbers the terms inside one entry so that every slot touches
    each entry at most once.
    """

    def __init__(self, matrix: AlexanderMatrix):
        rows, cols, coeffs, exps, slots = [], [], [], [], []
        for r, row in enumerate(matrix.rows):
            for c, poly in enumerate(row):
                for slot, (e, coeff) in enumerate(poly.items()):
                    rows.append(r)
                    cols.append(c)
                    coeffs.append(coeff)
                    exps.append(e)
                    slots.append(slot)
        self.shape = (matrix.nrows, matrix.n)
        self.flat = np.asarray(rows, dtype=np.int64) * matrix.n + np.asarray(cols, dtype=np.int64)
        self.coeffs = np.asarray(coeffs, dtype=np.int64)
        self.exps = np.asarray(exps, dtype=np.int64).reshape(len(coeffs), matrix.n)
        slots = np.asarray(slots, dtype=np.int64)
        self.by_slot = [np.nonzero(slots == s)[0] for s in range(int(slots.max()) + 1)] if len(slots) else []

    def __len__(self) -> int:
        return len(self.coeffs)


def _support_mask(exps: np.ndarray, modulus: int) -> np.ndarray:
    return (exps % modulus) != 0


def _depths(ranks: np.ndarray, support: Optional[np.ndarray], n: int) -> np.ndarray:
    if support is None:
        return np.maximum(0, n - 1 - ranks)
    size = support.sum(axis=1)
    depths = np.maximum(0, size - 1 - ranks)
    return np.where(size <= 2, 0, depths)


class CharacterEvaluator:
    """
    Ranks of A(xi^e) for batches of exponent vectors over a finite field.

    Args:
        matrix: Alexander matrix
        field: Finite field containing a primitive modulus-th root of unity
        modulus: N
        root: The root xi to use (defaults to field.primitive_root_of_unity(N))
    """

    def __init__(
        self,
        matrix: AlexanderMatrix,
        fld: FiniteFieldInterface,
        modulus: int,
        root: Optional[int] = None,
    ):
        self.matrix = matrix
        self.field = fld
        self.modulus = modulus
        self.terms = _TermTable(matrix)
        xi = fld.primitive_root_of_unity(modulus) if root is None else root
        table = [fld.one]
        for _ in range(modulus - 1):
            table.append(fld.mul(table[-1], xi))
        self.powers = np.asarray(table, dtype=np.int64)
        self.coeff_codes = fld.np_from_int(self.terms.coeffs)

    def _batch_size(self) -> int:
        m, n = self.terms.shape
        return max(1, BATCH_CELLS // max(1, len(self.terms), m * n))

    def ranks(self, exps: np.ndarray, restrict: bool = False) -> np.ndarray:
        exps = np.atleast_2d(np.asarray(exps, dtype=np.int64))
        out = np.empty(len(exps), dtype=np.int64)
        step = self._batch_size()
        for start in range(0, len(exps), step):
            out[start:start + step] = self._ranks(exps[start:start + step], restrict)
        return out

    def _ranks(self, exps: np.ndarray, restrict: bool) -> np.ndarray:
        m, n = self.terms.shape
        batch = len(exps)
        if m == 0 or len(self.terms) == 0:
            return np.zeros(batch, dtype=np.int64)
        fld = self.field
        powers = (exps @ self.terms.exps.T) % self.modulus
        values = fld.np_mul(self.coeff_codes[None, :], self.powers[powers])
        mats = np.zeros((batch, m * n), dtype=np.int64)
        for idx in self.terms.by_slot:
            cells = self.terms.flat[idx]
            mats[:, cells] = fld.np_add(mats[:, cells], values[:, idx])
        mats = mats.reshape(batch, m, n)
        if restrict:
            mats = np.where(_support_mask(exps, self.modulus)[:, None, :], mats, 0)
        return batched_rank(fld, mats)

    def __call__(self, exps: np.ndarray, restrict: bool = False) -> np.ndarray:
        exps = np.atleast_2d(np.asarray(exps, dtype=np.int64))
        support = _support_mask(exps, self.modulus) if restrict else None
        return _depths(self.ranks(exps, restrict), support, self.matrix.n)


class Char0Evaluator:
    """
    Depth over C of torsion characters through prime fields F_l, l = 1 (mod N).

    The rank over Q(zeta_N) is at least the rank modulo any prime above l,
    so the maximum over primes is taken; it is accepted once two primes
    attain it. Characters still in doubt after max_primes primes are
    evaluated exactly over Q(zeta_N).

    With `certify`, every character of positive proxy depth is also
    evaluated exactly; reduction never raises a rank, so proxy depth 0 is
    already exact.
    """

    def __init__(
        self,
        matrix: AlexanderMatrix,
        modulus: int,
        primes: int = DEFAULT_PROXY_PRIMES,
        max_primes: int = MAX_PROXY_PRIMES,
        certify: bool = False,
    ):
        self.matrix = matrix
        self.modulus = modulus
        self.certify = certify
        self.primes = max(2, primes)
        self.prime_list = primes_congruent_one(modulus, max(self.primes, max_primes))
        self._evaluators: Dict[int, CharacterEvaluator] = {}
        self._lock = threading.Lock()
        logger.debug(f"char-0 proxy for N={modulus} over primes {self.prime_list}")

    def _evaluator(self, k: int) -> CharacterEvaluator:
        with self._lock:
            ev = self._evaluators.get(k)
            if ev is None:
                ell = self.prime_list[k]
                ev = CharacterEvaluator(
                    self.matrix,
                    field_build(FieldSpec.prime(ell)),
                    self.modulus,
                    root=root_of_unity_mod(self.modulus, ell),
                )
                self._evaluators[k] = ev
        return ev

    def ranks(self, exps: np.ndarray, restrict: bool = False) -> np.ndarray:
        exps = np.atleast_2d(np.asarray(exps, dtype=np.int64))
        table = np.stack([self._evaluator(k).ranks(exps, restrict) for k in range(self.primes)])
        best = table.max(axis=0)
        hits = (table == best).sum(axis=0)
        k = self.primes
        while (hits < 2).any() and k < len(self.prime_list):
            doubtful = np.nonzero(hits < 2)[0]
            extra = self._evaluator(k).ranks(exps[doubtful], restrict)
            hits[doubtful] = np.where(extra == best[doubtful], hits[doubtful] + 1, hits[doubtful])
            raised = extra > best[doubtful]
            best[doubtful] = np.where(raised, extra, best[doubtful])
            hits[doubtful] = np.where(raised, 1, hits[doubtful])
            k += 1
        doubtful = np.nonzero(hits < 2)[0]
        if len(doubtful):
            logger.warning(
                f"{len(doubtful)} character(s) of order dividing {self.modulus} disagree across "
                f"{len(self.prime_list)} primes; evaluating exactly"
            )
        if self.certify:
            support = _support_mask(exps, self.modulus) if restrict else None
            positive = np.nonzero(_depths(best, support, self.matrix.n) > 0)[0]
            logger.debug(f"certifying {len(positive)} character(s) of positive depth over Q(zeta_{self.modulus})")
            doubtful = np.union1d(doubtful, positive)
        if len(doubtful):
            best[doubtful] = self._exact_ranks(exps[doubtful], restrict)
        return best

    def _exact_ranks(self, exps: np.ndarray, restrict: bool) -> np.ndarray:
        fld = cyclotomic_field(self.modulus)
        out = np.zeros(len(exps), dtype=np.int64)
        for i, e in enumerate(exps):
            t = _cyclotomic_character(fld, e.tolist(), self.modulus)
            rows = [[p.evaluate(fld, t.coordinates) for p in row] for row in self.matrix.rows]
            if restrict:
                mask = _support_mask(e, self.modulus)
                rows = [[x if mask[j] else fld.zero for j, x in enumerate(row)] for row in rows]
            out[i] = ff_rank(FieldMatrix.from_rows(fld, rows)) if rows else 0
        return out

    def __call__(self, exps: np.ndarray, restrict: bool = False) -> np.ndarray:
        exps = np.atleast_2d(np.asarray(exps, dtype=np.int64))
        support = _support_mask(exps, self.modulus) if restrict else None
        return _depths(self.ranks(exps, restrict), support, self.matrix.n)


class LinearEvaluator:
    """Depth of lambda in the resonance varieties: n - 1 - rank of the linearized matrix mod p."""

    def __init__(self, linear: LinearAlexanderMatrix, p: int):
        self.linear = linear
        self.p = p
        self.field = field_build(FieldSpec.prime(p))

    def ranks(self, lams: np.ndarray) -> np.ndarray:
        lams = np.atleast_2d(np.asarray(lams, dtype=np.int64))
        if self.linear.nrows == 0:
            return np.zeros(len(lams), dtype=np.int64)
        m, n = self.linear.nrows, self.linear.n
        step = max(1, BATCH_CELLS // max(1, m * n * n))
        out = np.empty(len(lams), dtype=np.int64)
        for start in range(0, len(lams), step):
            mats = self.linear.evaluate(lams[start:start + step], self.p)
            out[start:start + step] = batched_rank(self.field, mats)
        return out

    def __call__(self, lams: np.ndarray, restrict: bool = False) -> np.ndarray:
        return np.maximum(0, self.linear.n - 1 - self.ranks(lams))


# ----------------------------------------------------------------------
# Enumeration
# ----------------------------------------------------------------------


def multiplier_group(modulus: int, characteristic: int) -> Tuple[int, ...]:
    """
    Units k mod N such that t and t^k always have equal depth.

    Over a finite field of characteristic q these are the powers of q
    (Frobenius); in characteristic 0 every unit mod N is a Galois multiplier.
    """
    if modulus <= 2:
        return (1,)
    if characteristic == 0:
        return tuple(k for k in range(1, modulus) if gcd(k, modulus) == 1)
    group = {1}
    x = characteristic % modulus
    while x not in group:
        group.add(x)
        x = (x * characteristic) % modulus
    return tuple(sorted(group))


def _radix(n: int, modulus: int) -> np.ndarray:
    return modulus ** np.arange(n - 1, -1, -1, dtype=np.int64)


def _digits(codes: np.ndarray, n: int, modulus: int) -> np.ndarray:
    return (codes[:, None] // _radix(n, modulus)[None, :]) % modulus


def orbit_representatives(
    start: int, stop: int, n: int, modulus: int, multipliers: Sequence[int]
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Orbit representatives among the exponent codes start..stop-1.

    A code is kept when it is the smallest code in its orbit under
    e -> k*e (k in multipliers); its weight is the orbit size.

    Returns:
        (exponents of shape (B, n), weights of shape (B,))
    """
    codes = np.arange(start, stop, dtype=np.int64)
    exps = _digits(codes, n, modulus)
    if len(multipliers) == 1:
        return exps, np.ones(len(codes), dtype=np.int64)
    radix = _radix(n, modulus)
    images = np.stack([((exps * k) % modulus) @ radix for k in multipliers])
    keep = images.min(axis=0) == codes
    ordered = np.sort(images[:, keep], axis=0)
    weights = 1 + (np.diff(ordered, axis=0) != 0).sum(axis=0)
    return exps[keep], weights.astype(np.int64)


def _chunk_tally(
    evaluate: Evaluator,
    bounds: Tuple[int, int],
    n: int,
    modulus: int,
    multipliers: Sequence[int],
    restrict: bool,
) -> Counter:
    exps, weights = orbit_representatives(bounds[0], bounds[1], n, modulus, multipliers)
    tally: Counter = Counter()
    if len(exps) == 0:
        return tally
    depths = evaluate(exps, restrict)
    orders = modulus // np.gcd(np.gcd.reduce(exps, axis=1), modulus)
    keys = np.stack([orders, depths], axis=1)
    uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
    sums = np.bincount(inverse.ravel(), weights=weights, minlength=len(uniq))
    for (order, depth), total in zip(uniq.tolist(), sums.tolist()):
        tally[(order, depth)] += int(round(total))
    return tally


def tally_depths(
    evaluate: Evaluator,
    n: int,
    modulus: int,
    multipliers: Sequence[int] = (1,),
    budget: Optional[Budget] = None,
    restrict: bool = False,
    desc: str = "characters",
) -> Counter:
    """
    Weighted (exact order, depth) counts over all nonzero e in (Z_N)^n.

    Raises:
        BudgetExceededError: If N^n - 1 exceeds budget.points
    """
    budget = budget or Budget()
    total = modulus**n
    budget.check_points(total - 1, desc)
    step = max(1, budget.chunk)
    ranges = [(s, min(s + step, total)) for s in range(1, total, step)]
    logger.info(f"enumerating {total - 1} {desc} (N={modulus}, n={n}) in {len(ranges)} chunk(s)")

    def work(bounds):
        return _chunk_tally(evaluate, bounds, n, modulus, multipliers, restrict)

    tally: Counter = Counter()
    with tqdm(total=len(ranges), desc=desc, disable=not budget.progress) as pbar:
        if budget.jobs > 1 and len(ranges) > 1:
            with ThreadPoolExecutor(max_workers=budget.jobs) as pool:
                for part in pool.map(work, ranges):
                    tally.update(part)
                    pbar.update(1)
        else:
            for bounds in ranges:
                tally.update(work(bounds))
                pbar.update(1)
    return tally


# ----------------------------------------------------------------------
# Profiles and invariants
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DepthProfile:
    """
    Character counts by exact order and depth.

    Attributes:
        modulus: N; every counted character satisfies t^N = 1, t != 1
        characteristic: Characteristic of the coefficient field (0 for C)
        counts: order -> depth -> number of characters
    """

    modulus: int
    characteristic: int
    counts: Dict[int, Dict[int, int]] = field(default_factory=dict)

    @classmethod
    def from_tally(cls, modulus: int, characteristic: int, tally: Counter) -> "DepthProfile":
        counts: Dict[int, Dict[int, int]] = {}
        for (order, depth), c in sorted(tally.items()):
            counts.setdefault(int(order), {})[int(depth)] = int(c)
        return cls(modulus, characteristic, counts)

    def by_depth(self, order: Optional[int] = None) -> Dict[int, int]:
        """depth -> count, for one exact order or summed over all orders."""
        out: Counter = Counter()
        for o, row in self.counts.items():
            if order is None or o == order:
                out.update(row)
        return dict(sorted(out.items()))

    def total(self, order: Optional[int] = None) -> int:
        return sum(self.by_depth(order).values())

    def at_least(self, d: int, order: Optional[int] = None) -> int:
        return sum(c for depth, c in self.by_depth(order).items() if depth >= d)

    def depth_sum(self, order: Optional[int] = None) -> int:
        """Sum of depths over the counted characters."""
        return sum(depth * c for depth, c in self.by_depth(order).items())

    def to_json(self) -> Dict[str, Any]:
        return {
            "N": self.modulus,
            "characteristic": self.characteristic,
            "counts": {str(o): {str(d): c for d, c in row.items()} for o, row in self.counts.items()},
        }


def depth_profile(
    matrix: AlexanderMatrix,
    modulus: int,
    fld: Optional[FiniteFieldInterface] = None,
    budget: Optional[Budget] = None,
    restrict: bool = False,
    method: str = "auto",
) -> DepthProfile:
    """
    Depth profile of all characters with t^N = 1, t != 1.

    Args:
        matrix: Alexander matrix
        modulus: N >= 1
        fld: Finite field containing the N-th roots of unity; None for C
        budget: Enumeration limits
        restrict: Depth on the supporting sub-arrangement (Hirzebruch sums)
        method: Over C only: "exact" (proxy, then every positive depth
            rechecked over Q(zeta_N)), "modular" (proxy alone) or "auto"
            (exact when phi(N) <= 4)

    Raises:
        ValueError: If fld has no primitive N-th root of unity, or the method is unknown
        BudgetExceededError: If N^n - 1 exceeds the budget
    """
    if modulus == 1:
        return DepthProfile(1, fld.characteristic if fld else 0)
    if method not in ("auto", "exact", "modular"):
        raise ValueError(f"Unknown method {method!r}")
    if fld is None:
        if method == "auto":
            method = "exact" if euler_phi(modulus) <= 4 else "modular"
        evaluate: Evaluator = Char0Evaluator(matrix, modulus, certify=method == "exact")
        characteristic = 0
    else:
        if (fld.order - 1) % modulus:
            raise ValueError(f"{fld!r} has no primitive root of unity of order {modulus}")
        evaluate = CharacterEvaluator(matrix, fld, modulus)
        characteristic = fld.characteristic
    tally = tally_depths(
        evaluate,
        matrix.n,
        modulus,
        multiplier_group(modulus, characteristic),
        budget,
        restrict=restrict,
        desc=f"characters mod {modulus}",
    )
    return DepthProfile.from_tally(modulus, characteristic, tally)


Count = Union[int, Fraction]


def _per_line(count: int, p: int) -> Count:
    value = Fraction(count, p - 1)
    return int(value) if value.denominator == 1 else value


@dataclass(frozen=True)
class JumpTable:
    """
    beta_{p,d}^{(q)} or nu_{p,d}: counts per depth d, divided by p - 1.

    Attributes:
        kind: "beta" or "nu"
        p: Order of the characters (beta) or the prime field (nu)
        q: Characteristic of the coefficients (beta only; 0 for C)
        values: d -> count, d = 0 included
    """

    kind: str
    p: int
    q: Optional[int]
    values: Dict[int, Count]

    def __getitem__(self, d: int) -> Count:
        return self.values.get(d, 0)

    @property
    def max_depth(self) -> int:
        return max((d for d, v in self.values.items() if v), default=0)

    def total(self) -> Count:
        return sum(self.values.values())

    def nonzero(self) -> Dict[int, Count]:
        """Entries with d >= 1, as quoted in tables."""
        return {d: v for d, v in self.values.items() if d >= 1 and v}

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "p": self.p,
            "q": self.q,
            "values": {str(d): (v if isinstance(v, int) else str(v)) for d, v in sorted(self.values.items())},
        }


def beta_invariants(
    matrix: AlexanderMatrix, p: int, q: int, budget: Optional[Budget] = None
) -> JumpTable:
    """
    beta_{p,d}^{(q)}: characters of order p with depth exactly d over a field
    of characteristic q containing the p-th roots of unity, divided by p - 1.

    The field is F_{q^s}, s = ord_p(q); q = 0 uses the characteristic-0 proxy.

    Raises:
        ValueError: If p == q
        BudgetExceededError: If p^n - 1 exceeds the budget
    """
    if q == p:
        raise ValueError(f"Coefficient characteristic {q} must differ from p = {p}")
    if q == 0:
        fld = None
    else:
        s = multiplicative_order(q, p)
        fld = field_build(FieldSpec.extension(q, s))
        logger.info(f"beta_{p}^({q}) over F_{q}^{s}")
    profile = depth_profile(matrix, p, fld, budget)
    counts = profile.by_depth()
    return JumpTable("beta", p, q, {d: _per_line(c, p) for d, c in counts.items()})


def nu_invariants(
    linear: LinearAlexanderMatrix, p: int, budget: Optional[Budget] = None
) -> JumpTable:
    """
    nu_{p,d}: lines of F_p^n whose points have resonance depth exactly d.

    Raises:
        BudgetExceededError: If p^n - 1 exceeds the budget
    """
    units = tuple(range(1, p))
    tally = tally_depths(LinearEvaluator(linear, p), linear.n, p, units, budget, desc=f"points of F_{p}^{linear.n}")
    counts: Counter = Counter()
    for (_, depth), c in tally.items():
        counts[int(depth)] += c
    return JumpTable("nu", p, None, {d: _per_line(c, p) for d, c in sorted(counts.items())})


# ----------------------------------------------------------------------
# Depth cache
# ----------------------------------------------------------------------


class DepthCache:
    """
    Thread-safe memo of depths keyed by (support, normalized character).

    Inserts are idempotent: the first stored value for a key wins.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._values: Dict[Tuple[frozenset, Exponents], int] = {}
        self.hits = 0
        self.misses = 0

    @staticmethod
    def normalize(exponents: Sequence[int], modulus: int, multipliers: Iterable[int]) -> Exponents:
        """Smallest image of e under the multipliers, in lexicographic order."""
        return min(tuple((int(e) * k) % modulus for e in exponents) for k in multipliers)

    def get(self, key: Tuple[frozenset, Exponents]) -> Optional[int]:
        with self._lock:
            value = self._values.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def put(self, key: Tuple[frozenset, Exponents], depth: int) -> int:
        with self._lock:
            return self._values.setdefault(key, depth)

    def get_or_compute(self, key: Tuple[frozenset, Exponents], compute: Callable[[], int]) -> int:
        value = self.get(key)
        if value is not None:
            return value
        return self.put(key, compute())

    def __len__(self) -> int:
        with self._lock:
            return len(self._values)


def characters_with_support(
    n: int, modulus: int, support: Sequence[int]
) -> List[Exponents]:
    """All e in (Z_N)^n with e_i != 0 exactly on the given labels."""
    labels = sorted(support)
    out: List[Exponents] = []
    size = (modulus - 1) ** len(labels)
    for code in range(size):
        e = [0] * n
        for i in reversed(labels):
            e[i - 1] = code % (modulus - 1) + 1
            code //= modulus - 1
        out.append(tuple(e))
    return out
