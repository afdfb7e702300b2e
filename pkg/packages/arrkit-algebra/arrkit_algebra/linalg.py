"""
Exact linear algebra: ranks over fields and integer Smith normal form.

Ranks over finite fields run on int64 code arrays through the field's
vectorized `np_*` operations, batched over a leading axis so that many
character evaluations share one elimination loop. Ranks over Q and number
fields use plain Gaussian elimination on Python objects.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Any, Dict, List, Sequence, Set, Tuple

import numpy as np

from arrkit_algebra.core.interfaces import FieldInterface, FiniteFieldInterface
from arrkit_algebra.errors import FieldError, MatrixSizeError

logger = logging.getLogger(__name__)

DEFAULT_SNF_CAP = 10**7


# ----------------------------------------------------------------------
# Matrices over a field
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class FieldMatrix:
    """A dense matrix whose entries belong to one field."""

    field: FieldInterface
    entries: Tuple[Tuple[Any, ...], ...]

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def from_rows(cls, field: FieldInterface, rows: Sequence[Sequence[Any]]) -> "FieldMatrix":
        return cls(field, tuple(tuple(r) for r in rows))

    @classmethod
    def from_ints(cls, field: FieldInterface, rows: Sequence[Sequence[int]]) -> "FieldMatrix":
        return cls(field, tuple(tuple(field.from_int(int(x)) for x in r) for r in rows))


def ff_rank(matrix: FieldMatrix) -> int:
    """
    Rank of a FieldMatrix by exact Gaussian elimination.

    Raises:
        FieldError: If some entry does not belong to matrix.field
    """
    field = matrix.field
    for i, row in enumerate(matrix.entries):
        for j, x in enumerate(row):
            if not field.contains(x):
                raise FieldError(f"Entry ({i}, {j}) = {x!r} is not an element of {field!r}")
    if matrix.nrows == 0 or matrix.ncols == 0:
        return 0
    if isinstance(field, FiniteFieldInterface):
        arr = np.array(matrix.entries, dtype=np.int64)[None, :, :]
        return int(batched_rank(field, arr)[0])
    return rank_over_field(field, matrix.entries)


def rank_over_field(field: FieldInterface, rows: Sequence[Sequence[Any]]) -> int:
    """Rank of a list-of-rows matrix with elements of `field`."""
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(work)) if not field.is_zero(work[r][col])), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = field.inv(work[rank][col])
        pivot_row = [field.mul(x, inv) for x in work[rank]]
        work[rank] = pivot_row
        for r in range(rank + 1, len(work)):
            factor = work[r][col]
            if not field.is_zero(factor):
                work[r] = [field.sub(x, field.mul(factor, y)) for x, y in zip(work[r], pivot_row)]
        rank += 1
        if rank == len(work):
            break
    return rank


def batched_rank(field: FiniteFieldInterface, mats: np.ndarray) -> np.ndarray:
    """
    Ranks of a stack of matrices over a finite field.

    Args:
        field: Finite field whose element codes fill `mats`
        mats: int64 array of shape (B, m, n)

    Returns:
        int64 array of shape (B,) with each matrix's rank
    """
    a = np.array(mats, dtype=np.int64, copy=True)
    if a.ndim != 3:
        raise ValueError(f"Expected a (B, m, n) stack, got shape {a.shape}")
    batch, m, n = a.shape
    rank = np.zeros(batch, dtype=np.int64)
    if batch == 0 or m == 0 or n == 0:
        return rank
    used = np.zeros((batch, m), dtype=bool)
    for col in range(n):
        cand = (a[:, :, col] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        piv = cand[idx].argmax(axis=1)
        used[idx, piv] = True
        rank[idx] += 1

        pivot_rows = a[idx, piv, :]
        inv = field.np_inv(pivot_rows[:, col])
        pivot_rows = field.np_mul(pivot_rows, inv[:, None])
        a[idx, piv, :] = pivot_rows

        factors = a[idx, :, col].copy()
        factors[np.arange(len(idx)), piv] = 0
        update = field.np_mul(factors[:, :, None], pivot_rows[:, None, :])
        a[idx] = field.np_sub(a[idx], update)
        if rank.min() == min(m, n):
            break
    return rank


def rank_mod_prime(rows: Sequence[Sequence[int]], field: FiniteFieldInterface) -> int:
    """Rank of an integer matrix reduced into a prime field."""
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        return 0
    return int(batched_rank(field, field.np_from_int(arr)[None, :, :])[0])


# ----------------------------------------------------------------------
# Smith normal form over Z
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SmithResult:
    """
    Nonzero invariant factors of an integer matrix.

    `factors` is a divisibility chain d_1 | d_2 | ... of positive integers;
    the rank over Q is len(factors).
    """

    shape: Tuple[int, int]
    factors: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> Tuple[int, ...]:
        """Invariant factors greater than one."""
        return tuple(d for d in self.factors if d > 1)

    def cokernel(self) -> Tuple[int, Tuple[int, ...]]:
        """(free rank, torsion) of Z^cols / row space."""
        return self.shape[1] - self.rank, self.torsion


def snf(
    rows: Sequence[Sequence[int]] | Dict[Tuple[int, int], int],
    shape: Tuple[int, int] | None = None,
    cap: int = DEFAULT_SNF_CAP,
) -> SmithResult:
    """
    Smith normal form invariant factors of an integer matrix.

    Unit pivots are eliminated first on a sparse row representation
    (each contributes a factor 1); the small remainder is diagonalized
    densely with minimal-absolute-value pivots.

    Args:
        rows: Dense list of rows, or a sparse {(i, j): value} map with `shape`
        shape: (rows, cols), required for sparse input
        cap: Maximum nonzero input entries, and maximum rows*cols of the
            dense remainder left after unit elimination

    Returns:
        SmithResult

    Raises:
        MatrixSizeError: If either count exceeds cap
    """
    sparse_rows, ncols, nrows = _to_sparse(rows, shape)
    stored = sum(len(r) for r in sparse_rows)
    if stored > cap:
        raise MatrixSizeError(stored, cap)

    unit_rank, remainder, rem_cols = _eliminate_units(sparse_rows)
    logger.debug(
        "SNF %dx%d: %d unit pivots, dense remainder %dx%d",
        nrows, ncols, unit_rank, len(remainder), len(rem_cols),
    )
    if len(remainder) * len(rem_cols) > cap:
        raise MatrixSizeError(len(remainder) * len(rem_cols), cap)
    col_index = {c: k for k, c in enumerate(sorted(rem_cols))}
    dense = [[0] * len(col_index) for _ in remainder]
    for i, row in enumerate(remainder):
        for c, v in row.items():
            dense[i][col_index[c]] = v
    diagonal = _dense_diagonal(dense)
    factors = (1,) * unit_rank + _divisibility_chain(diagonal)
    _verify_chain(factors, nrows, ncols)
    return SmithResult(shape=(nrows, ncols), factors=factors)


def _to_sparse(rows, shape) -> Tuple[List[Dict[int, int]], int, int]:
    if isinstance(rows, dict):
        if shape is None:
            raise ValueError("Sparse SNF input needs an explicit shape")
        nrows, ncols = shape
        out: List[Dict[int, int]] = [dict() for _ in range(nrows)]
        for (i, j), v in rows.items():
            if v:
                out[i][j] = int(v)
        return out, ncols, nrows
    dense = [[int(x) for x in r] for r in rows]
    nrows = len(dense)
    ncols = len(dense[0]) if dense else (shape[1] if shape else 0)
    return [{j: x for j, x in enumerate(r) if x} for r in dense], ncols, nrows


def _eliminate_units(rows: List[Dict[int, int]]) -> Tuple[int, List[Dict[int, int]], Set[int]]:
    """Markowitz-style elimination of +-1 pivots; returns (count, rest rows, rest cols)."""
    live: Dict[int, Dict[int, int]] = {i: r for i, r in enumerate(rows) if r}
    col_rows: Dict[int, Set[int]] = {}
    for i, r in live.items():
        for c in r:
            col_rows.setdefault(c, set()).add(i)

    eliminated = 0
    progress = True
    while progress:
        progress = False
        # one pass over rows, shortest first; within a row the unit entry
        # with the sparsest column is taken
        for i in sorted(live, key=lambda k: len(live[k])):
            r = live.get(i)
            if not r:
                continue
            units = [c for c, v in r.items() if v == 1 or v == -1]
            if not units:
                continue
            c = min(units, key=lambda col: len(col_rows[col]))
            _pivot(live, col_rows, i, c)
            eliminated += 1
            progress = True

    rest_cols = {c for c, rs in col_rows.items() if rs}
    return eliminated, [r for r in live.values() if r], rest_cols


def _pivot(live: Dict[int, Dict[int, int]], col_rows: Dict[int, Set[int]], i: int, c: int) -> None:
    """Clear column c with unit row i, then drop row i and column c."""
    pivot_row = live.pop(i)
    u = pivot_row[c]
    for col in pivot_row:
        col_rows[col].discard(i)
    for k in list(col_rows[c]):
        target = live[k]
        factor = target[c] * u
        for col, v in pivot_row.items():
            new = target.get(col, 0) - factor * v
            if new:
                if col not in target:
                    col_rows[col].add(k)
                target[col] = new
            elif col in target:
                del target[col]
                col_rows[col].discard(k)
        if not target:
            del live[k]
    del col_rows[c]


def _dense_diagonal(a: List[List[int]]) -> List[int]:
    """Diagonalize by unimodular row/column operations; returns |diagonal| entries."""
    diag: List[int] = []
    a = [row[:] for row in a if any(row)]
    while a and a[0]:
        nrows, ncols = len(a), len(a[0])
        pivot = _min_abs_position(a, range(nrows), range(ncols))
        if pivot is None:
            break
        pi, pj = pivot
        a[0], a[pi] = a[pi], a[0]
        for row in a:
            row[0], row[pj] = row[pj], row[0]

        while True:
            p = a[0][0]
            for i in range(1, nrows):
                if a[i][0]:
                    q = a[i][0] // p
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[0])]
            for j in range(1, ncols):
                if a[0][j]:
                    q = a[0][j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[0]
            residues = [(abs(a[i][0]), i, 0) for i in range(1, nrows) if a[i][0]]
            residues += [(abs(a[0][j]), 0, j) for j in range(1, ncols) if a[0][j]]
            if not residues:
                break
            _, ri, rj = min(residues)
            if rj == 0:
                a[0], a[ri] = a[ri], a[0]
            else:
                for row in a:
                    row[0], row[rj] = row[rj], row[0]

        diag.append(abs(a[0][0]))
        a = [row[1:] for row in a[1:]]
        a = [row for row in a if any(row)]
    return diag


def _min_abs_position(a, rows, cols):
    best = None
    for i in rows:
        for j in cols:
            v = a[i][j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return i, j
    return None if best is None else (best[1], best[2])


def _divisibility_chain(diag: Sequence[int]) -> Tuple[int, ...]:
    d = sorted(x for x in diag if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return tuple(d)


def _verify_chain(factors: Sequence[int], nrows: int, ncols: int) -> None:
    if len(factors) > min(nrows, ncols):
        raise ArithmeticError(f"SNF rank {len(factors)} exceeds matrix size {nrows}x{ncols}")
    for a, b in zip(factors, factors[1:]):
        if a <= 0 or b % a:
            raise ArithmeticError(f"SNF factors {factors} are not a divisibility chain")
