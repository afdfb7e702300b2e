"""
arrkit command line: one subcommand per invariant, plus report, verify-corpus and schema.

Every subcommand except verify-corpus and schema takes an arrangement, given
as a path to an arrangement file or the name of a bundled example.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import ValidationError

from arrkit_algebra import FieldError
from arrkit_topology import (
    Arrangement,
    ArrangementError,
    ArrangementGroup,
    Budget,
    BudgetExceededError,
    GenericityError,
    IntersectionLattice,
    PresentationError,
    __version__ as TOPOLOGY_VERSION,
    alexander_matrix,
    arrangement_group,
    b1_abelian_cover,
    b1_congruence,
    b1_cyclic_cover,
    b1_hirzebruch,
    b1_hirzebruch_by_restriction,
    beta_invariants,
    chern_numbers,
    compute_lattice,
    cross_certify,
    delta_metabelian_of,
    delta_symmetric,
    detect_period,
    exponents_from_poincare,
    hall_homomorphism_counts,
    hall_subgroup_counts,
    is_fiber_type_candidate,
    linearize_from_lattice,
    neighborly_components,
    nu_invariants,
    pencil_chern_numbers,
    poincare,
    rank_table,
    resonance_strata,
    subgroup_counts,
    tayama_bound,
)
from arrkit_topology.resonance import default_prime, dimension_counts

from arrkit_cli.braid_grammar import BraidSyntaxError
from arrkit_cli.cache import ResultCache
from arrkit_cli.config import Settings, load_settings
from arrkit_cli.corpus import QUICK_OPTIONS, load_bundled, render_matrix, verify_corpus
from arrkit_cli.models import ArrangementFile, ErrorRecord, ReportDocument
from arrkit_cli.report import ReportOptions, build_report, cover_rows, render_csv, render_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

USAGE_ERRORS = (
    ArrangementError,
    PresentationError,
    GenericityError,
    FieldError,
    BraidSyntaxError,
    ValidationError,
    FileNotFoundError,
    KeyError,
    ValueError,
)

Payload = Dict[str, Any]


class UsageError(Exception):
    """Bad command line arguments, raised instead of argparse's exit."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ----------------------------------------------------------------------
# Context
# ----------------------------------------------------------------------


@dataclass
class Context:
    """Settings plus the arrangement and lazily computed shared data."""

    settings: Settings
    command: str
    file: Optional[ArrangementFile] = None
    cache: ResultCache = field(default=None)
    _arr: Optional[Arrangement] = None
    _lattice: Optional[IntersectionLattice] = None
    _group: Optional[ArrangementGroup] = None

    @property
    def budget(self) -> Budget:
        return self.settings.to_budget()

    @property
    def seed(self) -> int:
        return self.settings.seed

    @property
    def arr(self) -> Arrangement:
        if self._arr is None:
            self._arr = self.file.to_arrangement()
        return self._arr

    @property
    def lattice(self) -> IntersectionLattice:
        if self._lattice is None:
            self._lattice = compute_lattice(self.arr)
        return self._lattice

    def group(self, route: str = "auto") -> ArrangementGroup:
        if self._group is None or route != "auto":
            self._group = arrangement_group(self.arr, seed=self.seed, retries=self.budget.slice_retries, route=route)
        return self._group

    def matrix(self):
        return alexander_matrix(self.group().presentation)

    def cached(self, params: Dict[str, Any], compute: Callable[[], Payload]) -> Payload:
        params = {**params, "seed": self.seed, "budget": self.settings.budget}
        return self.cache.get_or_compute(self.arr, self.command, params, compute)


def resolve_arrangement(spec: str) -> ArrangementFile:
    """A path to an arrangement file, or else the name of a bundled example."""
    path = Path(spec)
    if path.exists():
        return ArrangementFile.load(path)
    try:
        return load_bundled(spec)
    except KeyError as e:
        raise FileNotFoundError(f"{spec} is neither a file nor a bundled arrangement") from e


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------


def cmd_lattice(ctx: Context, args) -> Payload:
    lat = ctx.lattice
    coeffs = poincare(lat)
    return {
        "name": ctx.arr.name,
        "lattice": lat.to_json(),
        "multiplicities": lat.multiplicities().to_json(),
        "poincare": list(coeffs),
        "fiber_type_candidate": is_fiber_type_candidate(coeffs),
        "exponents": list(exponents_from_poincare(coeffs) or []) or None,
    }


def cmd_group(ctx: Context, args) -> Payload:
    group = ctx.group(args.route)
    return {
        "name": ctx.arr.name,
        "route": group.route,
        "labeled": group.labeled,
        "presentation": group.presentation.to_json(),
        "text": str(group.presentation),
    }


def cmd_alexander(ctx: Context, args) -> Payload:
    group = ctx.group(args.route)
    return {"name": ctx.arr.name, "route": group.route, "matrix": alexander_matrix(group.presentation).to_json()}


def cmd_resonance(ctx: Context, args) -> Payload:
    lat = ctx.lattice
    p = args.prime or default_prime(lat.n, ctx.budget)

    def compute() -> Payload:
        report = resonance_strata(linearize_from_lattice(lat), p, args.depth, lat, ctx.budget)
        payload = {"name": ctx.arr.name, "resonance": report.to_json()}
        if args.neighborly:
            components = neighborly_components(lat, budget=ctx.budget, seed=ctx.seed)
            payload["neighborly"] = {
                "h": {str(r): c for r, c in dimension_counts(components).items()},
                "components": [c.to_json() for c in components],
            }
            if args.depth == 1:
                try:
                    cross_certify(report, components)
                    payload["neighborly"]["agrees_with_F_p"] = True
                except ValueError as e:
                    logger.warning(str(e))
                    payload["neighborly"]["agrees_with_F_p"] = False
        return payload

    return ctx.cached({"prime": p, "depth": args.depth, "neighborly": args.neighborly}, compute)


def cmd_charvar(ctx: Context, args) -> Payload:
    def compute() -> Payload:
        if args.nu:
            table = nu_invariants(linearize_from_lattice(ctx.lattice), args.p, ctx.budget)
        else:
            table = beta_invariants(ctx.matrix(), args.p, args.q, ctx.budget)
        return {"name": ctx.arr.name, "table": table.to_json()}

    return ctx.cached({"p": args.p, "q": None if args.nu else args.q, "nu": args.nu}, compute)


def _parse_projection(text: Optional[str]) -> Optional[List[List[int]]]:
    if text is None:
        return None
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"--projection is not a JSON matrix: {e}") from e
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError("--projection must be a list of integer rows")
    return rows


def cmd_betti_cover(ctx: Context, args) -> Payload:
    projection = _parse_projection(args.projection)

    def b1(N: int) -> int:
        matrix = ctx.matrix()
        if projection is not None:
            return b1_abelian_cover(matrix, projection, N, ctx.budget)
        if args.cyclic:
            return b1_cyclic_cover(matrix, N, ctx.budget)
        return b1_congruence(matrix, N, ctx.budget)

    def compute() -> Payload:
        kind = "abelian" if projection is not None else "cyclic" if args.cyclic else "congruence"
        payload = {"name": ctx.arr.name, "cover": kind, "N": args.N}
        if args.sequence:
            values = [b1(N) for N in range(1, args.N + 1)]
            payload["b1"] = values
            payload["period"] = detect_period(values).to_json()
        else:
            payload["b1"] = b1(args.N)
        return payload

    params = {"N": args.N, "projection": projection, "cyclic": args.cyclic, "sequence": args.sequence}
    return ctx.cached(params, compute)


def _chern(ctx: Context, N: int) -> Tuple[int, int]:
    mult = ctx.lattice.multiplicities()
    try:
        return chern_numbers(mult, N)
    except ArrangementError:
        return pencil_chern_numbers(mult.n, N)


def cmd_hirzebruch(ctx: Context, args) -> Payload:
    if not ctx.arr.is_central:
        raise ArrangementError(f"{ctx.arr.name}: Hirzebruch surfaces need a central arrangement")

    def b1(N: int) -> int:
        if args.by_restriction:
            return b1_hirzebruch_by_restriction(ctx.arr, N, ctx.budget, ctx.seed)
        return b1_hirzebruch(ctx.arr, N, ctx.budget, ctx.seed, ctx.group())

    def compute() -> Payload:
        c1sq, c2 = _chern(ctx, args.N)
        payload = {
            "name": ctx.arr.name,
            "N": args.N,
            "c1_squared": c1sq,
            "c2": c2,
            "tayama_bound": tayama_bound(ctx.lattice, args.N),
        }
        if args.sequence:
            values = [b1(N) for N in range(1, args.N + 1)]
            payload["b1"] = values
            payload["period"] = detect_period(values).to_json()
        else:
            payload["b1"] = b1(args.N)
        return payload

    return ctx.cached({"N": args.N, "by_restriction": args.by_restriction, "sequence": args.sequence}, compute)


def _metabelian(ctx: Context) -> Tuple[int, int]:
    matrix = ctx.matrix()
    return delta_metabelian_of(matrix, 2, 3, ctx.budget), delta_metabelian_of(matrix, 3, 2, ctx.budget)


def cmd_hall(ctx: Context, args) -> Payload:
    def compute() -> Payload:
        n = ctx.arr.n
        delta_s3, delta_a4 = _metabelian(ctx)
        known = {"S3": delta_s3, "A4": delta_a4}
        payload = {
            "name": ctx.arr.name,
            "n": n,
            "delta_S2": delta_symmetric(n, 2),
            "delta_S3": delta_s3,
            "delta_A4": delta_a4,
            "hom_S3": int(hall_homomorphism_counts(n, 3, known)),
            "hom_S4": str(hall_homomorphism_counts(n, 4, known)),
        }
        if args.hom_s4 is not None:
            if args.delta_d8 is not None:
                known["D8"] = args.delta_d8
            payload["delta_S4"] = delta_symmetric(n, 4, args.hom_s4, known)
        return payload

    return ctx.cached({"hom_s4": args.hom_s4, "delta_d8": args.delta_d8}, compute)


def cmd_subgroups(ctx: Context, args) -> Payload:
    def compute() -> Payload:
        n = ctx.arr.n
        delta_s3, delta_a4 = _metabelian(ctx)
        payload = subgroup_counts(n, delta_s3, delta_a4, args.kmax).to_json()
        counts = hall_subgroup_counts(n, 4, {"S3": delta_s3, "A4": delta_a4})
        payload["a"] = {str(k): str(v) for k, v in counts.items()}
        payload["name"] = ctx.arr.name
        return payload

    return ctx.cached({"kmax": args.kmax}, compute)


def cmd_ranks(ctx: Context, args) -> Payload:
    def compute() -> Payload:
        lat = ctx.lattice
        components = neighborly_components(lat, budget=ctx.budget, seed=ctx.seed)
        h = {r: c for r, c in dimension_counts(components).items() if r >= 2}
        expected = ctx.file.expected
        literal = (
            {k: (expected.phi.get(k), expected.theta.get(k)) for k in range(1, args.kmax + 1)} if expected else None
        )
        table = rank_table(
            args.kmax,
            lat.multiplicities(),
            h=h,
            exponents=tuple(ctx.file.exponents) if ctx.file.exponents else None,
            literal=literal,
            phi4=args.phi4 if args.phi4 is not None else (expected.phi.get(4) if expected else None),
        )
        payload = table.to_json()
        payload["h"] = {str(r): c for r, c in h.items()}
        payload["name"] = ctx.arr.name
        return payload

    return ctx.cached({"kmax": args.kmax, "phi4": args.phi4}, compute)


def cmd_report(ctx: Context, args) -> Payload:
    options = ReportOptions(
        nmax=args.Nmax, primes=tuple(args.primes), kmax=args.kmax, hirzebruch=not args.no_hirzebruch
    )

    def compute() -> Payload:
        return build_report(ctx.file, options, ctx.budget, ctx.seed).model_dump(mode="json")

    params = {"Nmax": options.nmax, "primes": list(options.primes), "kmax": options.kmax, "hirzebruch": options.hirzebruch}
    return ctx.cached(params, compute)


def _primes(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated primes, got {text!r}") from e


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, help="Maximum characters enumerated (default 2^25, env ARR_BUDGET)")
    common.add_argument("--jobs", type=int, help="Worker threads (env ARR_JOBS)")
    common.add_argument("--cache-dir", dest="cache_dir", type=Path, help="Result cache (env ARR_CACHE_DIR)")
    common.add_argument("--no-cache", dest="use_cache", action="store_false", help="Compute without the cache")
    common.add_argument("--format", choices=["json", "text"], help="Output format (default json)")
    common.add_argument("--seed", type=int, help="Seed for generic slices and projections")
    common.add_argument("--log-level", dest="log_level", help="Logging level (env ARR_LOG_LEVEL)")
    common.add_argument("--progress", action="store_true", help="Show progress bars")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(prog="arrkit", description="Invariants of complex line arrangements", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, handler, help: str, arrangement: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, parents=[common])
        if arrangement:
            p.add_argument("arrangement", help="Arrangement file or bundled example name")
        p.set_defaults(handler=handler)
        return p

    add("lattice", cmd_lattice, "Intersection lattice, multiplicities and Poincare polynomial")
    for name, handler, text in (
        ("group", cmd_group, "Presentation of the fundamental group"),
        ("alexander", cmd_alexander, "Alexander matrix by Fox calculus"),
    ):
        p = add(name, handler, text)
        p.add_argument("--route", choices=["auto", "slice", "words"], default="auto")

    p = add("resonance", cmd_resonance, "Resonance variety components over F_p")
    p.add_argument("--prime", type=int, default=None, help="Characteristic (default: largest of 7, 5, 3 in budget)")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--neighborly", action="store_true", help="Also certify components over Q from neighborly partitions")

    p = add("charvar", cmd_charvar, "Depth tallies of characters of order p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, default=0, help="Coefficient characteristic, 0 for C")
    p.add_argument("--nu", action="store_true", help="Resonance depths over F_p instead")

    p = add("betti-cover", cmd_betti_cover, "b1 of the congruence (or a chosen abelian) cover")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--projection", default=None, help="JSON integer matrix m x n for Z^n -> Z^m")
    p.add_argument("--cyclic", action="store_true", help="Cyclic cover through (1, ..., 1)")
    p.add_argument("--sequence", action="store_true", help="All N' <= N and their period")

    p = add("hirzebruch", cmd_hirzebruch, "b1 and Chern numbers of the Hirzebruch surface M_N")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--by-restriction", dest="by_restriction", action="store_true")
    p.add_argument("--sequence", action="store_true", help="All N' <= N and their period")

    p = add("hall", cmd_hall, "delta invariants and homomorphism counts into S_k")
    p.add_argument("--hom-s4", dest="hom_s4", type=int, default=None, help="|Hom(G, S4)|, to solve for delta_S4")
    p.add_argument("--delta-d8", dest="delta_d8", type=int, default=None)

    p = add("subgroups", cmd_subgroups, "Low-index and normal subgroup counts")
    p.add_argument("--kmax", type=int, default=8)

    p = add("ranks", cmd_ranks, "LCS and Chen ranks")
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--phi4", type=int, default=None, help="Known phi_4")

    p = add("report", cmd_report, "Every invariant, compared with reference values")
    p.add_argument("--Nmax", type=int, default=4)
    p.add_argument("--primes", type=_primes, default=[2, 3, 5])
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--no-hirzebruch", dest="no_hirzebruch", action="store_true")
    p.add_argument("--csv", action="store_true", help="Cover rows N, b1(X_N), b1(M_N), c1^2, c2 as CSV")

    p = add("verify-corpus", None, "Check the bundled examples against their reference values", arrangement=False)
    p.add_argument("names", nargs="*", help="Bundled names (default: all)")
    p.add_argument("--quick", action="store_true", help="Small N and primes only")

    p = add("schema", None, "JSON schema of reports or arrangement files", arrangement=False)
    p.add_argument("--arrangement-file", dest="arrangement_file", action="store_true")
    return parser


# ----------------------------------------------------------------------
# Output
# ----------------------------------------------------------------------


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _render_generic(payload: Payload) -> str:
    return "\n".join(f"{key}: {json.dumps(value, sort_keys=True)}" for key, value in payload.items())


def _settings_from(args) -> Settings:
    overrides = {key: getattr(args, key, None) for key in ("budget", "jobs", "cache_dir", "seed", "log_level", "use_cache", "progress")}
    return load_settings(overrides)


def _run(args, settings: Settings) -> int:
    fmt = getattr(args, "format", "json")
    if args.command == "schema":
        model = ArrangementFile if args.arrangement_file else ReportDocument
        _emit(json.dumps(model.model_json_schema(), indent=2))
        return EXIT_OK
    if args.command == "verify-corpus":
        options = QUICK_OPTIONS if args.quick else None
        verdict = verify_corpus(args.names, options, settings.to_budget(), settings.seed)
        _emit(render_matrix(verdict) if fmt == "text" else verdict.model_dump_json(indent=2))
        return EXIT_OK if verdict.ok else EXIT_FAILURE

    ctx = Context(settings, args.command, resolve_arrangement(args.arrangement))
    ctx.cache = ResultCache(settings.cache_dir if settings.use_cache else None, TOPOLOGY_VERSION)
    payload = args.handler(ctx, args)
    if args.command == "report":
        doc = ReportDocument.model_validate(payload)
        if args.csv:
            _emit(render_csv(cover_rows(doc)))
        elif fmt == "text":
            _emit(render_text(doc))
        else:
            _emit(doc.model_dump_json(indent=2))
    elif fmt == "text":
        _emit(_render_generic(payload))
    else:
        _emit(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    command = argv[0] if argv else None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        settings = _settings_from(args)
    except (UsageError, ValidationError) as e:
        _emit(ErrorRecord(error="UsageError", message=str(e), command=command).model_dump_json())
        return EXIT_USAGE
    logging.basicConfig(
        level=settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return _run(args, settings)
    except BudgetExceededError as e:
        _emit(ErrorRecord.from_exception(e, command).model_dump_json())
        return EXIT_BUDGET
    except USAGE_ERRORS as e:
        _emit(ErrorRecord.from_exception(e, command).model_dump_json())
        return EXIT_USAGE
    except Exception as e:
        logger.exception(f"{command} failed")
        _emit(ErrorRecord.from_exception(e, command).model_dump_json())
        return EXIT_FAILURE
