"""
Arrangement - line arrangements and their intersection lattices.

Lines are indexed 1..n everywhere. A central arrangement (ambient_dim 3)
is a list of linear forms a*x + b*y + c*z, read as lines in the
projective plane. An affine arrangement (ambient_dim 2) is a list of
forms a*x + b*y + c defining lines in C^2; parallel lines are allowed
there and recorded as parallel classes of the lattice.
"""

import hashlib
import itertools
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from arrkit_algebra import FieldInterface, FieldKind, FieldSpec, field_build

from arrkit_topology.errors import ArrangementError

logger = logging.getLogger(__name__)

Flat = FrozenSet[int]


def _sorted_flats(flats: Iterable[Iterable[int]]) -> Tuple[Flat, ...]:
    return tuple(sorted((frozenset(f) for f in flats), key=lambda f: sorted(f)))


# ----------------------------------------------------------------------
# Lattice
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Multiplicities:
    """
    Counts m_r of intersection points of multiplicity r.

    Attributes:
        n: Number of lines
        counts: Sorted (r, m_r) pairs with m_r > 0
        central: Whether b3 = b2 - n + 1 applies
    """

    n: int
    counts: Tuple[Tuple[int, int], ...]
    central: bool = True

    def m(self, r: int) -> int:
        return dict(self.counts).get(r, 0)

    @property
    def s(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def b2(self) -> int:
        return sum(c * (r - 1) for r, c in self.counts)

    @property
    def b3(self) -> int:
        return self.b2 - self.n + 1 if self.central else 0

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "s": self.s,
            "m": {str(r): c for r, c in self.counts},
            "b2": self.b2,
            "b3": self.b3,
        }


@dataclass(frozen=True)
class IntersectionLattice:
    """
    Rank-2 flats of an arrangement.

    Only points of multiplicity >= 3 are listed; double points are implied
    by the pairs no flat covers. Affine lattices may also carry parallel
    classes, whose pairs meet nowhere.

    Example:
        lat = IntersectionLattice(6, flats=[{1, 2, 4}, {1, 3, 5}, {2, 3, 6}, {4, 5, 6}])
        lat.multiplicities().m(2)   # 3
    """

    n: int
    flats: Tuple[Flat, ...] = ()
    parallel: Tuple[Flat, ...] = ()
    central: bool = True

    def __post_init__(self):
        object.__setattr__(self, "flats", _sorted_flats(self.flats))
        object.__setattr__(self, "parallel", _sorted_flats(self.parallel))
        self._validate()

    def _validate(self) -> None:
        if self.n < 0:
            raise ArrangementError(f"Negative line count {self.n}")
        if self.central and self.parallel:
            raise ArrangementError("A central lattice has no parallel classes")
        for f in self.flats + self.parallel:
            if not all(1 <= i <= self.n for i in f):
                raise ArrangementError(f"Flat {sorted(f)} has an index outside 1..{self.n}")
        for f in self.flats:
            if len(f) < 3:
                raise ArrangementError(f"Listed flat {sorted(f)} has fewer than 3 lines")
        for f in self.parallel:
            if len(f) < 2:
                raise ArrangementError(f"Parallel class {sorted(f)} has fewer than 2 lines")
        blocks = self.flats + self.parallel
        for a, b in itertools.combinations(blocks, 2):
            if len(a & b) >= 2:
                raise ArrangementError(f"Flats {sorted(a)} and {sorted(b)} share two lines")

    @cached_property
    def _pair_index(self) -> Dict[Tuple[int, int], Tuple[str, Flat]]:
        index: Dict[Tuple[int, int], Tuple[str, Flat]] = {}
        for kind, blocks in (("point", self.flats), ("parallel", self.parallel)):
            for f in blocks:
                for i, j in itertools.combinations(sorted(f), 2):
                    index[(i, j)] = (kind, f)
        return index

    def pair_flat(self, i: int, j: int) -> Optional[Flat]:
        """The flat through lines i and j, a 2-element set for a double point, None if parallel."""
        key = (min(i, j), max(i, j))
        kind, f = self._pair_index.get(key, ("point", frozenset(key)))
        return f if kind == "point" else None

    def is_parallel(self, i: int, j: int) -> bool:
        entry = self._pair_index.get((min(i, j), max(i, j)))
        return entry is not None and entry[0] == "parallel"

    @cached_property
    def double_points(self) -> Tuple[Flat, ...]:
        return tuple(
            frozenset(p)
            for p in itertools.combinations(range(1, self.n + 1), 2)
            if p not in self._pair_index
        )

    def points(self) -> Tuple[Flat, ...]:
        """All intersection points (multiple points and double points), canonically ordered."""
        return _sorted_flats(self.flats + self.double_points)

    def lines_through(self, i: int) -> List[Flat]:
        return [p for p in self.points() if i in p]

    def multiplicities(self) -> Multiplicities:
        tally: Dict[int, int] = {}
        for f in self.flats:
            tally[len(f)] = tally.get(len(f), 0) + 1
        if self.double_points:
            tally[2] = len(self.double_points)
        return Multiplicities(self.n, tuple(sorted(tally.items())), self.central)

    def induced(self, subset: Iterable[int]) -> "IntersectionLattice":
        """Lattice of the sub-arrangement on `subset`, reindexed 1..|subset| in increasing order."""
        keep = sorted(set(subset))
        relabel = {old: new for new, old in enumerate(keep, start=1)}
        flats = [frozenset(relabel[i] for i in f if i in relabel) for f in self.flats]
        parallel = [frozenset(relabel[i] for i in f if i in relabel) for f in self.parallel]
        return IntersectionLattice(
            len(keep),
            flats=[f for f in flats if len(f) >= 3],
            parallel=[f for f in parallel if len(f) >= 2],
            central=self.central,
        )

    def relabel(self, mapping: Sequence[int]) -> "IntersectionLattice":
        """Lattice with line k renamed mapping[k-1]."""
        return IntersectionLattice(
            self.n,
            flats=[{mapping[i - 1] for i in f} for f in self.flats],
            parallel=[{mapping[i - 1] for i in f} for f in self.parallel],
            central=self.central,
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "central": self.central,
            "flats": [sorted(f) for f in self.flats],
            "parallel": [sorted(f) for f in self.parallel],
            "double_points": [sorted(p) for p in self.double_points],
        }


def multiplicities(lat: IntersectionLattice) -> Multiplicities:
    return lat.multiplicities()


def poincare(lat: IntersectionLattice) -> Tuple[int, ...]:
    """Coefficients (1, b1, b2[, b3]) of the Poincare polynomial of the complement."""
    mult = lat.multiplicities()
    coeffs = [1, lat.n, mult.b2]
    if lat.central:
        coeffs.append(mult.b3)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def cone_lattice(lat: IntersectionLattice) -> IntersectionLattice:
    """Lattice of the cone of an affine arrangement; the line at infinity becomes line n+1."""
    if lat.central:
        raise ArrangementError("cone_lattice expects an affine lattice")
    extra = lat.n + 1
    flats = list(lat.flats) + [f | {extra} for f in lat.parallel]
    return IntersectionLattice(extra, flats=flats, central=True)


def decone_lattice(lat: IntersectionLattice, i: int) -> IntersectionLattice:
    """Lattice of the decone at line i; lines of flats through i become parallel."""
    if not lat.central:
        raise ArrangementError("decone_lattice expects a central lattice")
    if not 1 <= i <= lat.n:
        raise ArrangementError(f"Line {i} outside 1..{lat.n}")
    keep = [k for k in range(1, lat.n + 1) if k != i]
    relabel = {old: new for new, old in enumerate(keep, start=1)}
    flats = [frozenset(relabel[k] for k in f) for f in lat.flats if i not in f]
    parallel = [frozenset(relabel[k] for k in f if k != i) for f in lat.flats if i in f]
    return IntersectionLattice(lat.n - 1, flats=flats, parallel=parallel, central=False)


def affine_lattice_from_points(n: int, points: Iterable[Iterable[int]]) -> IntersectionLattice:
    """
    Affine lattice from the vertex sets of a braid monodromy.

    Pairs covered by no vertex are parallel; they must group into classes.

    Raises:
        ArrangementError: If a pair is covered twice or parallelism is not transitive
    """
    covered: Dict[Tuple[int, int], Flat] = {}
    flats = []
    for p in points:
        p = frozenset(p)
        for pair in itertools.combinations(sorted(p), 2):
            if pair in covered:
                raise ArrangementError(f"Lines {pair} meet in two vertices")
            covered[pair] = p
        if len(p) >= 3:
            flats.append(p)
    classes: Dict[int, set] = {}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        if (i, j) not in covered:
            cls = classes.setdefault(i, {i}) | classes.setdefault(j, {j})
            for k in cls:
                classes[k] = cls
    parallel = {frozenset(c) for c in classes.values() if len(c) >= 2}
    for c in parallel:
        for pair in itertools.combinations(sorted(c), 2):
            if pair in covered:
                raise ArrangementError(f"Parallel class {sorted(c)} contains the vertex pair {pair}")
    return IntersectionLattice(n, flats=flats, parallel=parallel, central=False)


def lattice_isomorphism(a: IntersectionLattice, b: IntersectionLattice) -> Optional[Tuple[int, ...]]:
    """
    A relabeling carrying lattice a onto lattice b, or None.

    Returns:
        mapping with a.relabel(mapping) == b
    """
    if (a.n, a.central) != (b.n, b.central) or a.multiplicities() != b.multiplicities():
        return None

    def signature(lat: IntersectionLattice, i: int) -> Tuple:
        sizes = sorted(len(f) for f in lat.flats if i in f)
        par = [len(f) for f in lat.parallel if i in f]
        return tuple(sizes), tuple(par)

    sig_a = [signature(a, i) for i in range(1, a.n + 1)]
    sig_b = [signature(b, i) for i in range(1, b.n + 1)]
    if sorted(sig_a) != sorted(sig_b):
        return None

    # most constrained lines first
    order = sorted(range(1, a.n + 1), key=lambda i: (-sum(sig_a[i - 1][0]), i))
    image: Dict[int, int] = {}
    used: set = set()

    def consistent(i: int, target: int) -> bool:
        for k, img in image.items():
            if a.is_parallel(i, k) != b.is_parallel(target, img):
                return False
            fa = a.pair_flat(i, k)
            fb = b.pair_flat(target, img)
            if fa is None or fb is None:
                continue
            if len(fa) != len(fb):
                return False
            for m, img_m in image.items():
                if m != k and (m in fa) != (img_m in fb):
                    return False
        return True

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        for target in range(1, b.n + 1):
            if target in used or sig_b[target - 1] != sig_a[i - 1]:
                continue
            if not consistent(i, target):
                continue
            image[i] = target
            used.add(target)
            if extend(pos + 1):
                return True
            del image[i]
            used.discard(target)
        return False

    if not extend(0):
        return None
    mapping = tuple(image[i] for i in range(1, a.n + 1))
    if a.relabel(mapping) != b:
        return None
    return mapping


# ----------------------------------------------------------------------
# Arrangements
# ----------------------------------------------------------------------


def _coerce_element(fld: FieldInterface, spec: FieldSpec, value: Any) -> Any:
    if spec.kind == FieldKind.NUMBER_FIELD:
        if isinstance(value, (list, tuple)):
            return fld.element([Fraction(v) for v in value])
        return fld.element([Fraction(value)])
    return Fraction(value)


def _cross(fld: FieldInterface, u: Sequence[Any], v: Sequence[Any]) -> Tuple[Any, Any, Any]:
    def det(a, b, c, d):
        return fld.sub(fld.mul(a, d), fld.mul(b, c))

    return (det(u[1], u[2], v[1], v[2]), det(u[2], u[0], v[2], v[0]), det(u[0], u[1], v[0], v[1]))


def _normalize(fld: FieldInterface, vec: Sequence[Any]) -> Tuple[Any, ...]:
    lead = next(x for x in vec if not fld.is_zero(x))
    inv = fld.inv(lead)
    return tuple(fld.mul(x, inv) for x in vec)


@dataclass(frozen=True)
class Arrangement:
    """
    A line arrangement with optional combinatorial and monodromy data.

    Attributes:
        name: Display name
        forms: n coefficient triples (a, b, c) of field elements
        field_spec: Coefficient field, rationals or a number field
        ambient_dim: 3 for central forms a*x+b*y+c*z, 2 for affine forms a*x+b*y+c
        lattice_override: Flats given directly; checked against the forms if both exist
        monodromy_override: Braid monodromy of the decone, a tuple of (vertex, PureBraidWord)
        semidirect_override: Braids on m strands presenting the decone as F_m x| F_k

    Example:
        arr = Arrangement.from_coefficients("braid", [(1, 0, 0), (0, 1, 0), (0, 0, 1),
                                                      (1, -1, 0), (1, 0, -1), (0, 1, -1)])
        compute_lattice(arr).flats   # 124, 135, 236, 456
    """

    name: str
    forms: Tuple[Tuple[Any, ...], ...] = ()
    field_spec: FieldSpec = field(default_factory=FieldSpec.rationals)
    ambient_dim: int = 3
    lattice_override: Optional[IntersectionLattice] = None
    monodromy_override: Optional[Tuple[Any, ...]] = None
    semidirect_override: Optional[Tuple[Any, ...]] = None

    def __post_init__(self):
        if self.ambient_dim not in (2, 3):
            raise ArrangementError(f"ambient_dim must be 2 or 3, got {self.ambient_dim}")
        if self.field_spec.kind not in (FieldKind.RATIONALS, FieldKind.NUMBER_FIELD):
            raise ArrangementError("Arrangements are defined over Q or a number field")
        if not self.forms and self.lattice_override is None:
            raise ArrangementError(f"{self.name}: neither forms nor flats given")
        fld = self.field
        normalized = []
        for k, form in enumerate(self.forms, start=1):
            form = tuple(form)
            if len(form) == 2 and self.ambient_dim == 2:
                form = form + (fld.zero,)
            if len(form) != 3:
                raise ArrangementError(f"Form {k} has {len(form)} coefficients, expected 3")
            if not all(fld.contains(x) for x in form):
                raise ArrangementError(f"Form {k} has coefficients outside {fld!r}")
            head = form[:2] if self.ambient_dim == 2 else form
            if all(fld.is_zero(x) for x in head):
                raise ArrangementError(f"Form {k} does not define a line")
            normalized.append(form)
        object.__setattr__(self, "forms", tuple(normalized))
        for (i, u), (j, v) in itertools.combinations(enumerate(self.forms, start=1), 2):
            if all(fld.is_zero(x) for x in _cross(fld, u, v)):
                raise ArrangementError(f"Forms {i} and {j} are proportional")
        if self.lattice_override is not None and self.forms:
            if self.lattice_override.n != len(self.forms):
                raise ArrangementError("Lattice override has the wrong number of lines")

    @classmethod
    def from_coefficients(
        cls,
        name: str,
        forms: Sequence[Sequence[Any]],
        field_spec: Optional[FieldSpec] = None,
        ambient_dim: int = 3,
        **overrides,
    ) -> "Arrangement":
        """Build from ints, fractions, strings like "1/2" or number-field coefficient lists."""
        spec = field_spec or FieldSpec.rationals()
        fld = field_build(spec)
        converted = tuple(tuple(_coerce_element(fld, spec, x) for x in form) for form in forms)
        return cls(name, converted, spec, ambient_dim, **overrides)

    @property
    def field(self) -> FieldInterface:
        return field_build(self.field_spec)

    @property
    def n(self) -> int:
        return len(self.forms) if self.forms else self.lattice_override.n

    @property
    def is_real(self) -> bool:
        return self.field_spec.kind == FieldKind.RATIONALS and bool(self.forms)

    @property
    def is_central(self) -> bool:
        """Lines in CP^2 (ambient_dim 3). Affine lines are never central, even through the origin."""
        return self.ambient_dim == 3

    def fingerprint(self) -> str:
        """Stable content hash used for seeding and caching."""
        payload = repr((self.ambient_dim, self.field_spec, self.forms, self.lattice_override))
        return hashlib.sha256(payload.encode()).hexdigest()

    def with_name(self, name: str) -> "Arrangement":
        return replace(self, name=name)


def _geometric_lattice(arr: Arrangement) -> IntersectionLattice:
    fld = arr.field
    affine = not arr.is_central
    points: Dict[Tuple[Any, ...], set] = {}
    directions: Dict[Tuple[Any, ...], set] = {}
    for i, u in enumerate(arr.forms, start=1):
        if affine:
            directions.setdefault(_normalize(fld, u[:2]), set()).add(i)
    for (i, u), (j, v) in itertools.combinations(enumerate(arr.forms, start=1), 2):
        p = _cross(fld, u, v)
        if affine and fld.is_zero(p[2]):
            continue
        points.setdefault(_normalize(fld, p), set()).update((i, j))
    flats = [f for f in points.values() if len(f) >= 3]
    parallel = [c for c in directions.values() if len(c) >= 2]
    return IntersectionLattice(arr.n, flats=flats, parallel=parallel, central=not affine)


def compute_lattice(arr: Arrangement) -> IntersectionLattice:
    """
    Intersection lattice from the forms, or the validated override.

    Raises:
        ArrangementError: If both are present and disagree
    """
    if not arr.forms:
        return arr.lattice_override
    lat = _geometric_lattice(arr)
    if arr.lattice_override is not None and arr.lattice_override != lat:
        raise ArrangementError(f"{arr.name}: flats given do not match the forms")
    logger.debug(f"{arr.name}: {len(lat.flats)} multiple points, {len(lat.double_points)} double points")
    return lat


def restrict(arr: Arrangement, subset: Iterable[int]) -> Arrangement:
    """
    Sub-arrangement on the given lines, reindexed in increasing order.

    Monodromy data do not restrict through this function; use
    presentation.restrict_monodromy for that.
    """
    keep = sorted(set(subset))
    if not keep:
        raise ArrangementError("Cannot restrict to an empty set of lines")
    if keep[0] < 1 or keep[-1] > arr.n:
        raise ArrangementError(f"Subset {keep} not inside 1..{arr.n}")
    forms = tuple(arr.forms[i - 1] for i in keep) if arr.forms else ()
    lattice = arr.lattice_override.induced(keep) if arr.lattice_override is not None else None
    return Arrangement(
        f"{arr.name}[{','.join(map(str, keep))}]",
        forms,
        arr.field_spec,
        arr.ambient_dim,
        lattice_override=lattice,
    )


def cone(arr: Arrangement) -> Arrangement:
    """Homogenize an affine arrangement and add the line at infinity as line n+1."""
    if arr.ambient_dim != 2:
        raise ArrangementError("cone expects an affine arrangement")
    fld = arr.field
    forms = arr.forms + ((fld.zero, fld.zero, fld.one),)
    lattice = cone_lattice(arr.lattice_override) if arr.lattice_override is not None else None
    return Arrangement(f"c{arr.name}", forms, arr.field_spec, 3, lattice_override=lattice)


def _inverse3(fld: FieldInterface, rows: Sequence[Sequence[Any]]) -> List[List[Any]]:
    work = [list(r) + [fld.one if i == j else fld.zero for j in range(3)] for i, r in enumerate(rows)]
    for col in range(3):
        piv = next(r for r in range(col, 3) if not fld.is_zero(work[r][col]))
        work[col], work[piv] = work[piv], work[col]
        inv = fld.inv(work[col][col])
        work[col] = [fld.mul(x, inv) for x in work[col]]
        for r in range(3):
            if r != col and not fld.is_zero(work[r][col]):
                factor = work[r][col]
                work[r] = [fld.sub(x, fld.mul(factor, y)) for x, y in zip(work[r], work[col])]
    return [r[3:] for r in work]


def decone(arr: Arrangement, i: int) -> Arrangement:
    """
    Send line i to infinity and set it to z = 1.

    The remaining lines keep their relative order and are reindexed 1..n-1.
    """
    if arr.ambient_dim != 3:
        raise ArrangementError("decone expects a central arrangement")
    if not 1 <= i <= arr.n:
        raise ArrangementError(f"Line {i} outside 1..{arr.n}")
    lattice = decone_lattice(arr.lattice_override, i) if arr.lattice_override is not None else None
    if not arr.forms:
        return Arrangement(f"d{arr.name}", (), arr.field_spec, 2, lattice_override=lattice)
    fld = arr.field
    target = arr.forms[i - 1]
    units = [tuple(fld.one if k == j else fld.zero for k in range(3)) for j in range(3)]
    basis = next(
        [e1, e2, target]
        for e1, e2 in itertools.combinations(units, 2)
        if not fld.is_zero(_det3(fld, [e1, e2, target]))
    )
    change = _inverse3(fld, basis)
    forms = []
    for k, f in enumerate(arr.forms, start=1):
        if k == i:
            continue
        forms.append(tuple(
            _dot(fld, f, [change[r][c] for r in range(3)]) for c in range(3)
        ))
    return Arrangement(f"d{arr.name}", tuple(forms), arr.field_spec, 2, lattice_override=lattice)


def _dot(fld: FieldInterface, u: Sequence[Any], v: Sequence[Any]) -> Any:
    total = fld.zero
    for a, b in zip(u, v):
        total = fld.add(total, fld.mul(a, b))
    return total


def _det3(fld: FieldInterface, rows: Sequence[Sequence[Any]]) -> Any:
    return _dot(fld, rows[0], _cross(fld, rows[1], rows[2]))


# ----------------------------------------------------------------------
# Braid sub-arrangements
# ----------------------------------------------------------------------


def braid_subarrangements(lat: IntersectionLattice) -> List[Tuple[Flat, Tuple[Flat, ...]]]:
    """
    Six-line sub-arrangements with the braid arrangement's lattice.

    Returns:
        (support, pairing) where pairing lists the three induced double points
    """
    found = []
    for subset in itertools.combinations(range(1, lat.n + 1), 6):
        s = set(subset)
        induced = [f & s for f in lat.flats if len(f & s) >= 3]
        if len(induced) != 4 or any(len(f) != 3 for f in induced):
            continue
        if any(sum(1 for f in induced if i in f) != 2 for i in subset):
            continue
        if any(lat.is_parallel(i, j) for i, j in itertools.combinations(subset, 2)):
            continue
        covered = {p for f in induced for p in itertools.combinations(sorted(f), 2)}
        pairing = tuple(
            frozenset(p) for p in itertools.combinations(subset, 2) if p not in covered
        )
        found.append((frozenset(subset), pairing))
    return found


def count_braid_subarrangements(lat: IntersectionLattice) -> int:
    return len(braid_subarrangements(lat))
