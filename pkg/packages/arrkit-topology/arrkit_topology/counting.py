"""
Counting - Hall invariants, low-index subgroups and lower central series ranks.

delta_Gamma(G) is the number of epimorphisms G -> Gamma up to automorphisms
of Gamma. For an arrangement group H1(G) = Z^n, so abelian Gamma is handled
by a closed form, and the metabelian groups Z_q^s x| Z_p are read off the
beta_{p,d}^{(q)} jumping numbers.

Rank sequences: phi_k is the rank of the k-th lower central series quotient,
theta_k the rank of the k-th Chen group. Both have closed forms for free
groups and fiber-type arrangements; for everything else the resonance
formulas below are conjectural, stated for k >= 4.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import Poly, Symbol, factor_list, factorint
from sympy.utilities.iterables import partitions

from arrkit_algebra import divisors, moebius, multiplicative_order

from arrkit_topology.arrangement import Multiplicities
from arrkit_topology.budget import Budget
from arrkit_topology.fox import AlexanderMatrix
from arrkit_topology.jumping import JumpTable, beta_invariants

logger = logging.getLogger(__name__)

CONJECTURE_FROM = 4

SOURCE_FIBER_TYPE = "fiber-type"
SOURCE_LATTICE = "lattice"
SOURCE_CONJECTURE = "conjecture"

_T = Symbol("t")


# ----------------------------------------------------------------------
# Free groups
# ----------------------------------------------------------------------


def witt(k: int, n: int) -> int:
    """w_k(n) = (1/k) sum_{d | k} mu(d) n^{k/d}, the LCS ranks of F_n."""
    if k < 1 or n < 0:
        raise ValueError(f"witt needs k >= 1 and n >= 0, got k={k}, n={n}")
    total = sum(moebius(d) * n ** (k // d) for d in divisors(k))
    if total % k:
        raise ArithmeticError(f"Necklace sum for w_{k}({n}) is not divisible by {k}")
    return total // k


def theta_free(k: int, n: int) -> int:
    """Chen ranks of F_n: theta_1 = n, theta_k = C(n+k-2, k)(k-1) for k >= 2."""
    if k < 1 or n < 0:
        raise ValueError(f"theta_free needs k >= 1 and n >= 0, got k={k}, n={n}")
    if k == 1:
        return n
    return comb(n + k - 2, k) * (k - 1)


def theta_cc(mult: Multiplicities, k: int) -> int:
    """Lower bound (k-1) sum_{r>=3} m_r C(k+r-3, k) on theta_k, from the local components."""
    if k < 2:
        raise ValueError(f"theta_cc is defined for k >= 2, got {k}")
    return (k - 1) * sum(c * comb(k + r - 3, k) for r, c in mult.counts if r >= 3)


# ----------------------------------------------------------------------
# Hall invariants
# ----------------------------------------------------------------------


def _phi(m: int, x: Fraction) -> Fraction:
    out = Fraction(1)
    for i in range(1, m + 1):
        out *= 1 - x**i
    return out


def delta_abelian_p(n: int, nu: Sequence[int], p: int) -> int:
    """
    delta of an abelian p-group sum_i Z_{p^nu_i} for a group with H1 = Z^n.

    Args:
        n: First Betti number
        nu: Exponents nu_i >= 1 (any order)
        p: Prime

    Returns:
        0 when the group needs more than n generators
    """
    nu = sorted((int(v) for v in nu), reverse=True)
    if any(v < 1 for v in nu):
        raise ValueError(f"Partition parts must be positive, got {nu}")
    k = len(nu)
    if k > n:
        return 0
    size = sum(nu)
    weight = sum(i * v for i, v in enumerate(nu))
    x = Fraction(1, p)
    denominator = _phi(n - k, x)
    for r in set(nu):
        denominator *= _phi(nu.count(r), x)
    value = Fraction(p) ** (size * (n - 1) - 2 * weight) * _phi(n, x) / denominator
    if value.denominator != 1:
        raise ArithmeticError(f"delta for nu={nu}, p={p}, n={n} is not integral: {value}")
    return int(value)


def abelian_groups(order: int) -> List[Dict[int, Tuple[int, ...]]]:
    """Abelian groups of the given order, as {p: nu} maps of their primary parts."""
    groups: List[Dict[int, Tuple[int, ...]]] = [{}]
    for p, e in sorted(factorint(order).items()):
        parts = []
        for part in partitions(e):
            parts.append(tuple(sorted((r for r, c in part.items() for _ in range(c)), reverse=True)))
        groups = [{**g, p: nu} for g in groups for nu in parts]
    return groups


def delta_abelian(n: int, primary: Mapping[int, Sequence[int]]) -> int:
    """delta of a finite abelian group given by its primary parts; multiplicative over primes."""
    return prod(delta_abelian_p(n, nu, p) for p, nu in primary.items())


def abelian_normal_count(n: int, order: int) -> int:
    """Normal subgroups of index `order` with abelian quotient: sum of delta over abelian groups."""
    return sum(delta_abelian(n, g) for g in abelian_groups(order))


def delta_metabelian(beta: JumpTable) -> int:
    """
    delta of Z_q^s x| Z_p (s = ord_p(q)) from the beta_{p,d}^{(q)} table.

        (p - 1) / (s (q^s - 1)) * sum_{d >= 1} beta_{p,d}^{(q)} (q^{sd} - 1)

    Gives delta_{S3} for (p, q) = (2, 3) and delta_{A4} for (3, 2).

    Raises:
        ValueError: If the table is not a beta table over a finite field
    """
    p, q = beta.p, beta.q
    if beta.kind != "beta" or not q:
        raise ValueError("delta_metabelian needs beta_{p,d}^{(q)} over a finite field")
    s = multiplicative_order(q, p)
    total = Fraction(0)
    for d, b in beta.nonzero().items():
        total += Fraction(b) * (q ** (s * d) - 1)
    value = total * (p - 1) / (s * (q**s - 1))
    if value.denominator != 1:
        raise ArithmeticError(f"delta for p={p}, q={q} is not integral: {value}")
    return int(value)


def delta_metabelian_of(matrix: AlexanderMatrix, p: int, q: int, budget: Optional[Budget] = None) -> int:
    """delta_metabelian after enumerating beta_{p,d}^{(q)}."""
    return delta_metabelian(beta_invariants(matrix, p, q, budget))


# ----------------------------------------------------------------------
# Subgroup counts
# ----------------------------------------------------------------------

# Non-abelian groups of order <= 8, by the invariant they need.
_NONABELIAN = {6: ("S3",), 8: ("D8", "Q8")}


@dataclass(frozen=True)
class HallReport:
    """
    Low-index subgroup counts of a group with H1 = Z^n.

    Attributes:
        n: First Betti number
        delta_s3: delta_{S3}
        delta_a4: delta_{A4}, if computed
        a2: Index-2 subgroups (all normal)
        a3: Index-3 subgroups
        normal: k -> a_k^normal, None where an unknown invariant is needed
        unavailable: Count name -> the invariants it would need
    """

    n: int
    delta_s3: int
    delta_a4: Optional[int]
    a2: int
    a3: int
    normal: Dict[int, Optional[int]]
    unavailable: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "delta_S3": self.delta_s3,
            "delta_A4": self.delta_a4,
            "a2": self.a2,
            "a3": self.a3,
            "normal": {str(k): v for k, v in sorted(self.normal.items())},
            "unavailable": {k: list(v) for k, v in self.unavailable.items()},
        }


def subgroup_counts(n: int, delta_s3: int, delta_a4: Optional[int] = None, kmax: int = 8) -> HallReport:
    """
    a2, a3 and the normal counts a_k^normal for k = 2..kmax (kmax <= 8).

    a_k^normal = sum of delta_Gamma over groups of order k; the abelian part
    is closed form, S3 enters a6^normal, and D8/Q8 leave a8^normal open.
    a4 needs delta_{D8} and delta_{S4} and is always reported unavailable.
    """
    if not 2 <= kmax <= 8:
        raise ValueError(f"kmax must lie in 2..8, got {kmax}")
    known = {"S3": delta_s3}
    normal: Dict[int, Optional[int]] = {}
    unavailable: Dict[str, Tuple[str, ...]] = {"a4": ("delta_D8", "delta_S4")}
    for k in range(2, kmax + 1):
        missing = tuple(f"delta_{g}" for g in _NONABELIAN.get(k, ()) if g not in known)
        if missing:
            normal[k] = None
            unavailable[f"a{k}_normal"] = missing
            continue
        normal[k] = abelian_normal_count(n, k) + sum(known[g] for g in _NONABELIAN.get(k, ()))
    a2 = abelian_normal_count(n, 2)
    a3 = abelian_normal_count(n, 3) + 3 * delta_s3
    return HallReport(n, delta_s3, delta_a4, a2, a3, normal, unavailable)


# ----------------------------------------------------------------------
# Fiber-type arrangements
# ----------------------------------------------------------------------


def lcs_fibertype(exponents: Sequence[int], k: int) -> int:
    """phi_k = sum_i w_k(d_i) for a fiber-type arrangement with exponents d_i."""
    if any(d < 1 for d in exponents):
        raise ValueError(f"Exponents must be positive, got {list(exponents)}")
    return sum(witt(k, d) for d in exponents)


def exponents_from_poincare(coeffs: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """
    Exponents d_i with P(t) = prod (1 + d_i t), or None when P does not split
    that way over the integers.
    """
    if not coeffs or coeffs[0] != 1:
        raise ValueError(f"Poincare polynomial must have constant term 1, got {list(coeffs)}")
    poly = Poly(list(reversed(coeffs)), _T)
    if poly.degree() == 0:
        return ()
    content, factors = factor_list(poly)
    if content != 1:
        return None
    exponents: List[int] = []
    for f, multiplicity in factors:
        if f.degree() != 1:
            return None
        d, c = f.all_coeffs()
        if c != 1 or d < 1:
            return None
        exponents.extend([int(d)] * multiplicity)
    return tuple(sorted(exponents))


def is_fiber_type_candidate(coeffs: Sequence[int]) -> bool:
    """Necessary condition only: P(t) factors into positive integer linear factors."""
    return exponents_from_poincare(coeffs) is not None


def _truncated_mul(a: List[int], b: List[int], kmax: int) -> List[int]:
    out = [0] * (kmax + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b[: kmax + 1 - i]):
            out[i + j] += x * y
    return out


def lcs_series_check(exponents: Sequence[int], kmax: int) -> bool:
    """prod_k (1 - t^k)^{phi_k} == prod_i (1 - d_i t) modulo t^{kmax+1}."""
    left = [1] + [0] * kmax
    for k in range(1, kmax + 1):
        phi = lcs_fibertype(exponents, k)
        factor = [0] * (kmax + 1)
        for j in range(0, kmax // k + 1):
            factor[j * k] = comb(phi, j) * (-1) ** j
        left = _truncated_mul(left, factor, kmax)
    right = [1] + [0] * kmax
    for d in exponents:
        right = _truncated_mul(right, [1, -d] + [0] * (kmax - 1), kmax)
    return left == right


# ----------------------------------------------------------------------
# Rank tables
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ConjecturalRanks:
    """Resonance-formula values at one k; in_scope is False for k < 4."""

    k: int
    theta: int
    phi: int
    theta_cc: Optional[int]
    in_scope: bool


def conjectural_ranks(h: Mapping[int, int], k: int, mult: Optional[Multiplicities] = None) -> ConjecturalRanks:
    """
    theta_k = sum_r h_r theta_k(F_r) and phi_k = sum_r h_r w_k(r), with h_r the
    number of resonance components of dimension r; theta_cc needs the
    multiplicities.
    """
    theta = sum(c * theta_free(k, r) for r, c in h.items() if r >= 2)
    phi = sum(c * witt(k, r) for r, c in h.items() if r >= 2)
    cc = theta_cc(mult, k) if mult is not None and k >= 2 else None
    if k < CONJECTURE_FROM:
        logger.debug(f"conjectural ranks at k={k} lie outside k >= {CONJECTURE_FROM}")
    return ConjecturalRanks(k, theta, phi, cc, k >= CONJECTURE_FROM)


@dataclass(frozen=True)
class RankEntry:
    """
    phi_k and theta_k with the route each came from.

    Attributes:
        literal_phi, literal_theta: Reference values supplied by the caller
        discrepancy: Names of the quantities whose value differs from the reference
    """

    k: int
    phi: Optional[int]
    phi_source: Optional[str]
    theta: Optional[int]
    theta_source: Optional[str]
    theta_cc: Optional[int] = None
    literal_phi: Optional[int] = None
    literal_theta: Optional[int] = None
    discrepancy: Tuple[str, ...] = ()

    def to_json(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "phi": {"value": self.phi, "source": self.phi_source, "literal": self.literal_phi},
            "theta": {"value": self.theta, "source": self.theta_source, "literal": self.literal_theta},
            "theta_cc": self.theta_cc,
            "discrepancy": list(self.discrepancy),
        }


@dataclass(frozen=True)
class RankTable:
    entries: Tuple[RankEntry, ...]

    def __getitem__(self, k: int) -> RankEntry:
        for e in self.entries:
            if e.k == k:
                return e
        raise KeyError(k)

    def discrepancies(self) -> List[RankEntry]:
        return [e for e in self.entries if e.discrepancy]

    def to_json(self) -> Dict[str, Any]:
        return {"entries": [e.to_json() for e in self.entries]}


def rank_table(
    kmax: int,
    mult: Multiplicities,
    h: Optional[Mapping[int, int]] = None,
    exponents: Optional[Sequence[int]] = None,
    literal: Optional[Mapping[int, Tuple[Optional[int], Optional[int]]]] = None,
    phi4: Optional[int] = None,
) -> RankTable:
    """
    phi_k, theta_k for k = 1..kmax.

    k = 1, 2 come from the lattice (phi_1 = n, phi_2 = C(n,2) - b2; theta
    agrees with phi for k <= 3). Fiber-type exponents give every phi_k. For
    k >= 4 the Chen conjecture gives theta_k; the LCS conjecture gives phi_k
    only when phi_4 = theta_4 is known to hold (phi4 supplied and equal to
    the conjectured theta_4).

    Args:
        kmax: Last k
        mult: Multiplicities of the arrangement
        h: Resonance component counts by dimension
        exponents: Exponents of a fiber-type arrangement
        literal: k -> (phi_k, theta_k) reference values to compare against
        phi4: Known phi_4, used to decide whether the LCS conjecture applies
    """
    literal = literal or {}
    n = mult.n
    lcs_applies = False
    if h is not None:
        theta4 = conjectural_ranks(h, CONJECTURE_FROM).theta
        if phi4 is None and exponents is not None:
            phi4 = lcs_fibertype(exponents, CONJECTURE_FROM)
        lcs_applies = phi4 is not None and phi4 == theta4
    entries = []
    for k in range(1, kmax + 1):
        phi = theta = None
        phi_source = theta_source = None
        if k == 1:
            phi, theta, phi_source, theta_source = n, n, SOURCE_LATTICE, SOURCE_LATTICE
        elif k == 2:
            phi = comb(n, 2) - mult.b2
            theta, phi_source, theta_source = phi, SOURCE_LATTICE, SOURCE_LATTICE
        if exponents is not None:
            phi, phi_source = lcs_fibertype(exponents, k), SOURCE_FIBER_TYPE
            if k <= 3:
                theta, theta_source = phi, SOURCE_FIBER_TYPE
        if h is not None and k >= CONJECTURE_FROM:
            conj = conjectural_ranks(h, k, mult)
            theta, theta_source = conj.theta, SOURCE_CONJECTURE
            if lcs_applies and exponents is None:
                phi, phi_source = conj.phi, SOURCE_CONJECTURE
        cc = theta_cc(mult, k) if k >= 2 else None
        lit_phi, lit_theta = literal.get(k, (None, None))
        discrepancy = tuple(
            name
            for name, value, ref in (("phi", phi, lit_phi), ("theta", theta, lit_theta))
            if value is not None and ref is not None and value != ref
        )
        if discrepancy:
            logger.warning(f"k={k}: computed {discrepancy} differ from reference ({lit_phi}, {lit_theta})")
        entries.append(
            RankEntry(k, phi, phi_source, theta, theta_source, cc, lit_phi, lit_theta, discrepancy)
        )
    return RankTable(tuple(entries))
