"""
The full invariant report of one arrangement, its text rendering and CSV export.
"""

import csv
import io
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, TypeVar

from arrkit_topology import (
    Budget,
    BudgetExceededError,
    __version__ as TOPOLOGY_VERSION,
    alexander_matrix,
    arrangement_group,
    beta_invariants,
    compute_lattice,
    cover_report,
    delta_metabelian,
    linearize_from_lattice,
    neighborly_components,
    nu_invariants,
    poincare,
    rank_table,
    subgroup_counts,
)
from arrkit_topology.resonance import dimension_counts

from arrkit_cli.models import ArrangementFile, Expected, ReportDocument, Route, Value

logger = logging.getLogger(__name__)

T = TypeVar("T")

SECTIONS = {
    "n": "lattice",
    "s": "lattice",
    "m": "lattice",
    "poincare": "lattice",
    "nu": "jumping",
    "beta": "jumping",
    "b1_congruence": "covers",
    "b1_hirzebruch": "covers",
    "c1_squared": "covers",
    "c2": "covers",
    "delta_s3": "counting",
    "delta_a4": "counting",
    "a2": "counting",
    "a3_normal": "counting",
    "a3": "counting",
    "a_normal": "counting",
    "h": "resonance",
    "phi": "ranks",
    "theta": "ranks",
}
SECTION_ORDER = ("lattice", "jumping", "covers", "counting", "resonance", "ranks")


@dataclass(frozen=True)
class ReportOptions:
    nmax: int = 4
    primes: Tuple[int, ...] = (2, 3, 5)
    kmax: int = 8
    hirzebruch: bool = True


def beta_pairs(primes: Iterable[int]) -> List[Tuple[int, int]]:
    """(p, q) pairs tabulated by a report: characteristic 3 for p = 2, else 2."""
    return [(p, 3 if p == 2 else 2) for p in primes]


def _section(path: str) -> str:
    return SECTIONS[path.split(".", 1)[0]]


def _sort_key(path: str):
    return tuple(int(part) if part.isdigit() else part for part in path.split("."))


class _Collector:
    def __init__(self, expected: Optional[Expected]):
        self.expected = expected or Expected()
        self.literal = self.expected.flatten()
        self.sections: Dict[str, Dict[str, Value]] = {name: {} for name in SECTION_ORDER}
        self.skipped: List[str] = []

    def put(self, path: str, value, route: Route, source: Optional[str] = None) -> None:
        literal = self.literal.get(path)
        agrees = None if value is None or literal is None else value == literal
        self.sections[_section(path)][path] = Value(
            value=value, route=route, source=source, literal=literal, agrees=agrees
        )

    def attempt(self, label: str, compute: Callable[[], T]) -> Optional[T]:
        try:
            return compute()
        except BudgetExceededError as e:
            logger.warning(f"skipping {label}: {e}")
            self.skipped.append(f"{label}: {e}")
            return None

    def table(self, prefix: str, computed: Dict[int, int], reference: Dict[int, int], route: Route, source: str):
        for d in sorted(set(computed) | set(reference)):
            if reference:
                # a reference table lists every nonzero entry
                self.literal.setdefault(f"{prefix}.{d}", 0)
            value = computed.get(d, 0)
            self.put(f"{prefix}.{d}", value if isinstance(value, int) else str(value), route, source)

    def finish(self) -> Tuple[Dict[str, Dict[str, Value]], List[str]]:
        # reference values nothing computed
        for path, literal in self.literal.items():
            section = self.sections[_section(path)]
            if path not in section:
                section[path] = Value(route="literal", literal=literal)
        sections = {
            name: dict(sorted(values.items(), key=lambda kv: _sort_key(kv[0])))
            for name, values in self.sections.items()
            if values
        }
        mismatched = [
            path for values in sections.values() for path, v in values.items() if v.agrees is False
        ]
        return sections, mismatched


def build_report(
    file: ArrangementFile,
    options: Optional[ReportOptions] = None,
    budget: Optional[Budget] = None,
    seed: int = 0,
) -> ReportDocument:
    """
    Compute every invariant the options ask for and compare it with the
    file's reference values. Computations over budget are skipped and
    listed rather than failing the report.
    """
    options = options or ReportOptions()
    budget = budget or Budget()
    arr = file.to_arrangement()
    out = _Collector(file.expected)
    logger.info(f"{arr.name}: report with N <= {options.nmax}, primes {options.primes}")

    lat = compute_lattice(arr)
    mult = lat.multiplicities()
    out.put("n", mult.n, "formula", "lattice")
    out.put("s", mult.s, "formula", "lattice")
    for r, c in mult.counts:
        out.put(f"m.{r}", c, "formula", "lattice")
    for i, c in enumerate(poincare(lat)):
        out.put(f"poincare.{i}", c, "formula", "lattice")

    group = arrangement_group(arr, seed=seed, retries=budget.slice_retries)
    matrix = alexander_matrix(group.presentation)
    linear = linearize_from_lattice(lat)

    for p in options.primes:
        nu = out.attempt(f"nu_{p}", lambda: nu_invariants(linear, p, budget))
        if nu is not None:
            out.table(f"nu.{p}", nu.nonzero(), out.expected.nu.get(p, {}), "enumeration", f"F_{p}^{mult.n}")
    betas = {}
    for p, q in beta_pairs(options.primes):
        beta = out.attempt(f"beta_{p}^({q})", lambda: beta_invariants(matrix, p, q, budget))
        if beta is not None:
            betas[(p, q)] = beta
            reference = out.expected.beta_table(p, q) or {}
            out.table(f"beta.{p}.{q}", beta.nonzero(), reference, "enumeration", f"characters of order {p}")

    central = arr.is_central
    for N in range(1, options.nmax + 1):
        covers = out.attempt(
            f"covers N={N}",
            lambda: cover_report(arr, N, budget, seed, hirzebruch=central and options.hirzebruch, group=group),
        )
        if covers is None:
            continue
        out.put(f"b1_congruence.{N}", covers.b1_congruence, "formula" if N == 1 else "enumeration")
        if covers.b1_hirzebruch is not None:
            out.put(f"b1_hirzebruch.{N}", covers.b1_hirzebruch, "enumeration", "supported characters")
        if covers.chern is not None:
            out.put(f"c1_squared.{N}", covers.chern[0], "formula")
            out.put(f"c2.{N}", covers.chern[1], "formula")

    delta_s3 = delta_metabelian(betas[(2, 3)]) if (2, 3) in betas else None
    delta_a4 = delta_metabelian(betas[(3, 2)]) if (3, 2) in betas else None
    if delta_s3 is not None:
        out.put("delta_s3", delta_s3, "formula", "beta_2^(3)")
        if delta_a4 is not None:
            out.put("delta_a4", delta_a4, "formula", "beta_3^(2)")
        hall = subgroup_counts(mult.n, delta_s3, delta_a4)
        out.put("a2", hall.a2, "formula")
        out.put("a3_normal", hall.normal[3], "formula")
        out.put("a3", hall.a3, "formula")
        for k, count in hall.normal.items():
            if count is not None and k != 3:
                out.put(f"a_normal.{k}", count, "formula")
    else:
        out.skipped.append("subgroup counts: beta_2^(3) unavailable")

    components = out.attempt("resonance", lambda: neighborly_components(lat, budget=budget, seed=seed))
    h = None
    if components is not None:
        h = {r: c for r, c in dimension_counts(components).items() if r >= 2}
        out.table("h", h, out.expected.resonance, "formula", "neighborly partitions")

    expected = out.expected
    kmax = max([options.kmax, *expected.phi, *expected.theta])
    literal = {k: (expected.phi.get(k), expected.theta.get(k)) for k in range(1, kmax + 1)}
    table = rank_table(
        kmax,
        mult,
        h=h,
        exponents=tuple(file.exponents) if file.exponents else None,
        literal=literal,
        phi4=expected.phi.get(4),
    )
    for entry in table.entries:
        if entry.phi is not None:
            out.put(f"phi.{entry.k}", entry.phi, "formula", entry.phi_source)
        if entry.theta is not None:
            out.put(f"theta.{entry.k}", entry.theta, "formula", entry.theta_source)

    sections, mismatched = out.finish()
    return ReportDocument(
        arrkit_version=TOPOLOGY_VERSION,
        name=arr.name,
        seed=seed,
        arrangement=file.without_expected(),
        group_route=group.route,
        sections=sections,
        skipped=out.skipped,
        discrepancies=mismatched,
    )


# ----------------------------------------------------------------------
# Rendering
# ----------------------------------------------------------------------


def _mark(v: Value) -> str:
    if v.literal is None:
        return ""
    if v.value is None:
        return f"ref {v.literal}"
    return "ok" if v.agrees else f"!= ref {v.literal}"


def render_text(doc: ReportDocument) -> str:
    """Aligned plain text: one line per value with its route and reference check."""
    lines = [f"{doc.name}  (arrkit {doc.arrkit_version}, seed {doc.seed}, group via {doc.group_route})"]
    for name in SECTION_ORDER:
        values = doc.sections.get(name)
        if not values:
            continue
        lines.append("")
        lines.append(name)
        width = max(len(path) for path in values)
        for path, v in sorted(values.items(), key=lambda kv: _sort_key(kv[0])):
            shown = "-" if v.value is None else str(v.value)
            route = v.route if v.source is None else f"{v.route} ({v.source})"
            lines.append(f"  {path:<{width}}  {shown:>12}  {route:<40}  {_mark(v)}".rstrip())
    if doc.skipped:
        lines.append("")
        lines.append("skipped")
        lines.extend(f"  {item}" for item in doc.skipped)
    if doc.discrepancies:
        lines.append("")
        lines.append("differs from reference: " + ", ".join(doc.discrepancies))
    return "\n".join(lines)


CSV_HEADER = ("N", "b1_X", "b1_M", "c1_squared", "c2")
_CSV_PATHS = ("b1_congruence", "b1_hirzebruch", "c1_squared", "c2")


def cover_rows(doc: ReportDocument) -> List[List]:
    covers = doc.sections.get("covers", {})
    moduli = sorted({int(path.split(".")[1]) for path, v in covers.items() if v.value is not None})

    def cell(name: str, N: int):
        v = covers.get(f"{name}.{N}")
        return "" if v is None or v.value is None else v.value

    return [[N] + [cell(name, N) for name in _CSV_PATHS] for N in moduli]


def render_csv(rows: Sequence[Sequence], header: Sequence[str] = CSV_HEADER) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()
