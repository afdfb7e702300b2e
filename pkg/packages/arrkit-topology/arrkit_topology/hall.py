"""
Hall's recursion for subgroups of index k <= 4.

    |Hom(G, S_k)| = sum over subgroups H <= S_k of |Aut H| delta_H(G)
    a_k = |Hom(G, S_k)|/(k-1)! - sum_{l<k} |Hom(G, S_{k-l})| a_l/(k-l)!

Abelian delta_H are closed forms in n = b1(G); the others stay sympy
symbols until a value is supplied.
"""

import logging
from dataclasses import dataclass
from math import factorial
from typing import Dict, Mapping, Optional, Tuple

from sympy import Expr, Integer, Symbol, expand, solve

from arrkit_topology.counting import delta_abelian_p

logger = logging.getLogger(__name__)

MAX_DEGREE = 4


@dataclass(frozen=True)
class SubgroupClass:
    """
    Isomorphism type of subgroups of S_k.

    Attributes:
        name: Type label ("1", "Z2", "V4", "S3", ...)
        count: Number of subgroups of S_k of this type
        aut: |Aut H|
        abelian: Primary decomposition {p: nu} when H is abelian
    """

    name: str
    count: int
    aut: int
    abelian: Optional[Tuple[Tuple[int, Tuple[int, ...]], ...]] = None


_TRIVIAL = SubgroupClass("1", 1, 1, ())

SUBGROUPS: Dict[int, Tuple[SubgroupClass, ...]] = {
    1: (_TRIVIAL,),
    2: (_TRIVIAL, SubgroupClass("Z2", 1, 1, ((2, (1,)),))),
    3: (
        _TRIVIAL,
        SubgroupClass("Z2", 3, 1, ((2, (1,)),)),
        SubgroupClass("Z3", 1, 2, ((3, (1,)),)),
        SubgroupClass("S3", 1, 6),
    ),
    4: (
        _TRIVIAL,
        SubgroupClass("Z2", 9, 1, ((2, (1,)),)),
        SubgroupClass("Z3", 4, 2, ((3, (1,)),)),
        SubgroupClass("Z4", 3, 2, ((2, (2,)),)),
        SubgroupClass("V4", 4, 6, ((2, (1, 1)),)),
        SubgroupClass("S3", 4, 6),
        SubgroupClass("D8", 3, 8),
        SubgroupClass("A4", 1, 24),
        SubgroupClass("S4", 1, 24),
    ),
}


def delta_symbol(name: str) -> Symbol:
    return Symbol(f"delta_{name}", nonnegative=True, integer=True)


def _check_degree(k: int) -> None:
    if not 1 <= k <= MAX_DEGREE:
        raise ValueError(f"Hall recursion is tabulated for 1 <= k <= {MAX_DEGREE}, got {k}")


def _delta(n: int, h: SubgroupClass, known: Mapping[str, int]) -> Expr:
    if h.abelian is not None:
        value = 1
        for p, nu in h.abelian:
            value *= delta_abelian_p(n, nu, p)
        return Integer(value)
    if h.name in known:
        return Integer(known[h.name])
    return delta_symbol(h.name)


def hall_homomorphism_counts(n: int, k: int, known: Optional[Mapping[str, int]] = None) -> Expr:
    """
    |Hom(G, S_k)| for H1(G) = Z^n, in the symbols delta_<H> of the
    non-abelian subgroups not listed in `known`.
    """
    _check_degree(k)
    known = known or {}
    return expand(sum(h.count * h.aut * _delta(n, h, known) for h in SUBGROUPS[k]))


def hall_subgroup_counts(n: int, kmax: int, known: Optional[Mapping[str, int]] = None) -> Dict[int, Expr]:
    """a_1..a_kmax by Hall's recursion; a_1 = 1."""
    _check_degree(kmax)
    hom = {k: hall_homomorphism_counts(n, k, known) for k in range(1, kmax + 1)}
    counts: Dict[int, Expr] = {}
    for k in range(1, kmax + 1):
        value = hom[k] / factorial(k - 1)
        for l in range(1, k):
            value -= hom[k - l] * counts[l] / factorial(k - l)
        counts[k] = expand(value)
    return counts


def delta_symmetric(
    n: int,
    k: int,
    hom_count: Optional[int] = None,
    known: Optional[Mapping[str, int]] = None,
) -> int:
    """
    delta_{S_k}(G), solved from |Hom(G, S_k)| when it is supplied.

    k = 1, 2 need nothing. For k = 3 a known delta_S3 is returned as is;
    for k = 4 the invariants of S3, D8 and A4 must be known.

    Raises:
        ValueError: If |Hom(G, S_k)| is needed and missing, or the solution is
            not a nonnegative integer
    """
    _check_degree(k)
    known = dict(known or {})
    if k == 1:
        return 1
    if k == 2:
        return delta_abelian_p(n, (1,), 2)
    target = f"S{k}"
    if hom_count is None:
        if target in known:
            return known[target]
        raise ValueError(f"delta_{target} needs |Hom(G, S_{k})|")
    known.pop(target, None)
    expr = hall_homomorphism_counts(n, k, known)
    unknown = delta_symbol(target)
    extra = expr.free_symbols - {unknown}
    if extra:
        raise ValueError(f"delta_{target} also needs {sorted(str(s) for s in extra)}")
    roots = solve(expr - hom_count, unknown)
    if len(roots) != 1 or not roots[0].is_integer or roots[0] < 0:
        raise ValueError(f"|Hom(G, S_{k})| = {hom_count} gives no valid delta_{target}: {roots}")
    logger.debug(f"delta_{target} = {roots[0]} from |Hom| = {hom_count}")
    return int(roots[0])
