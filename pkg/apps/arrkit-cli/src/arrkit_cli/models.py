"""
Pydantic models for arrangement files, reports and error records.
"""

import logging
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from arrkit_algebra import FieldSpec
from arrkit_topology import Arrangement, ArrangementError, IntersectionLattice, full_twist

from arrkit_cli.braid_grammar import parse_braid

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

Scalar = Union[int, str]
# an int, a fraction string like "-1/2", or ascending coefficients of a number-field element
Coefficient = Union[int, str, List[Scalar]]

Route = Literal["formula", "enumeration", "literal"]


class MinPolyField(BaseModel):
    model_config = ConfigDict(extra="forbid")

    minpoly: List[Scalar] = Field(min_length=2, description="Ascending coefficients, monic")


class MonodromyEntry(BaseModel):
    """One braid alpha = A_I conjugated by delta."""

    model_config = ConfigDict(extra="forbid")

    I: List[int] = Field(min_length=2)
    delta: str = "1"


class JumpExpectation(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p: int
    q: int
    values: Dict[int, int]


class Expected(BaseModel):
    """
    Reference values for an arrangement.

    Every number maps to a report path (see flatten); paths listed in
    discrepancies are known to disagree with what is computed.
    """

    model_config = ConfigDict(extra="forbid")

    n: Optional[int] = None
    s: Optional[int] = None
    multiplicities: Dict[int, int] = {}
    poincare: List[int] = []
    nu: Dict[int, Dict[int, int]] = {}
    beta: List[JumpExpectation] = []
    b1_congruence: Dict[int, int] = {}
    b1_hirzebruch: Dict[int, int] = {}
    chern: Dict[int, Tuple[int, int]] = {}
    delta_s3: Optional[int] = None
    delta_a4: Optional[int] = None
    a2: Optional[int] = None
    a3_normal: Optional[int] = None
    a3: Optional[int] = None
    resonance: Dict[int, int] = {}
    phi: Dict[int, int] = {}
    theta: Dict[int, int] = {}
    discrepancies: Dict[str, str] = {}

    def flatten(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for key in ("n", "s", "delta_s3", "delta_a4", "a2", "a3_normal", "a3"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        out.update({f"m.{r}": c for r, c in self.multiplicities.items()})
        out.update({f"poincare.{i}": c for i, c in enumerate(self.poincare)})
        for p, table in self.nu.items():
            out.update({f"nu.{p}.{d}": c for d, c in table.items()})
        for table in self.beta:
            out.update({f"beta.{table.p}.{table.q}.{d}": c for d, c in table.values.items()})
        out.update({f"b1_congruence.{N}": b for N, b in self.b1_congruence.items()})
        out.update({f"b1_hirzebruch.{N}": b for N, b in self.b1_hirzebruch.items()})
        for N, (c1sq, c2) in self.chern.items():
            out[f"c1_squared.{N}"] = c1sq
            out[f"c2.{N}"] = c2
        out.update({f"h.{r}": c for r, c in self.resonance.items()})
        out.update({f"phi.{k}": v for k, v in self.phi.items()})
        out.update({f"theta.{k}": v for k, v in self.theta.items()})
        return out

    def beta_table(self, p: int, q: int) -> Optional[Dict[int, int]]:
        for table in self.beta:
            if (table.p, table.q) == (p, q):
                return table.values
        return None


class ArrangementFile(BaseModel):
    """
    On-disk description of an arrangement. Line indices are 1-based.

    Example:
        {"schema_version": 1, "name": "two lines", "ambient_dim": 2,
         "forms": [[1, 0, 0], [0, 1, 0]]}
    """

    model_config = ConfigDict(extra="forbid")

    schema_version: Literal[1] = SCHEMA_VERSION
    name: str
    field: Union[Literal["rationals"], MinPolyField] = "rationals"
    ambient_dim: Literal[2, 3] = 3
    forms: List[List[Coefficient]] = []
    flats: Optional[List[List[int]]] = None
    strands: Optional[int] = Field(default=None, ge=2)
    monodromy: Optional[List[MonodromyEntry]] = None
    semidirect: Optional[List[str]] = None
    exponents: Optional[List[int]] = None
    expected: Optional[Expected] = None

    @field_validator("flats")
    @classmethod
    def _multiple_points_only(cls, flats):
        if flats is not None:
            for flat in flats:
                if len(set(flat)) < 3:
                    raise ValueError(f"Flat {flat} lists fewer than three lines")
        return flats

    @classmethod
    def load(cls, path: Path) -> "ArrangementFile":
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))

    def dump(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)

    def without_expected(self) -> "ArrangementFile":
        return self.model_copy(update={"expected": None})

    @property
    def field_spec(self) -> FieldSpec:
        if self.field == "rationals":
            return FieldSpec.rationals()
        return FieldSpec.number_field(self.field.minpoly)

    def line_count(self) -> int:
        if self.forms:
            return len(self.forms)
        if self.strands is None:
            raise ArrangementError(f"{self.name}: give forms or a strand count")
        return self.strands + 1 if self.ambient_dim == 3 else self.strands

    def braid_strands(self) -> int:
        """Strands of the decone's braids: n - 1 for central arrangements."""
        if self.strands is not None:
            return self.strands
        n = self.line_count()
        return n - 1 if self.ambient_dim == 3 else n

    def to_arrangement(self) -> Arrangement:
        """
        Raises:
            ArrangementError: If the data do not define an arrangement
            BraidSyntaxError: If a braid word does not parse
        """
        n = self.line_count()
        central = self.ambient_dim == 3
        overrides = {}
        if self.flats is not None:
            flats = tuple(tuple(sorted(flat)) for flat in self.flats)
            overrides["lattice_override"] = IntersectionLattice(n, flats, central=central)
        if self.monodromy:
            strands = self.braid_strands()
            overrides["monodromy_override"] = tuple(
                (frozenset(entry.I), full_twist(entry.I, strands).conjugate(parse_braid(entry.delta, strands)))
                for entry in self.monodromy
            )
        if self.semidirect:
            if self.strands is None:
                raise ArrangementError(f"{self.name}: semidirect words need a strand count")
            overrides["semidirect_override"] = tuple(parse_braid(w, self.strands) for w in self.semidirect)
        logger.debug(f"{self.name}: building arrangement with {sorted(overrides)}")
        return Arrangement.from_coefficients(self.name, self.forms, self.field_spec, self.ambient_dim, **overrides)


# ----------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------


class Value(BaseModel):
    """
    One reported number.

    route is how the value was obtained and source names the formula or
    the enumeration behind it; literal is the reference value on file,
    and agrees compares the two when both exist. Non-integral depth
    tallies are carried as fraction strings.
    """

    value: Optional[Union[int, str]] = None
    route: Route
    source: Optional[str] = None
    literal: Optional[int] = None
    agrees: Optional[bool] = None


class ReportDocument(BaseModel):
    schema_version: Literal[1] = SCHEMA_VERSION
    arrkit_version: str
    name: str
    seed: int
    arrangement: ArrangementFile
    group_route: Optional[str] = None
    sections: Dict[str, Dict[str, Value]]
    skipped: List[str] = []
    discrepancies: List[str] = []

    def values(self) -> Dict[str, Value]:
        return {path: v for section in self.sections.values() for path, v in section.items()}


class ErrorRecord(BaseModel):
    error: str
    message: str
    command: Optional[str] = None

    @classmethod
    def from_exception(cls, e: BaseException, command: Optional[str] = None) -> "ErrorRecord":
        return cls(error=type(e).__name__, message=str(e), command=command)
