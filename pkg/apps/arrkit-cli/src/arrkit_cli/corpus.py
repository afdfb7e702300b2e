"""
The bundled example arrangements and the golden-value check over them.
"""

import logging
import time
from importlib.resources import files
from typing import Dict, List, Optional, Sequence

from pydantic import BaseModel
from tqdm import tqdm

from arrkit_topology import Budget

from arrkit_cli.models import ArrangementFile
from arrkit_cli.report import ReportOptions, build_report

logger = logging.getLogger(__name__)

QUICK_OPTIONS = ReportOptions(nmax=2, primes=(2, 3), kmax=4, hirzebruch=False)

PASS = "pass"
FAIL = "fail"
DISCREPANCY = "discrepancy"
SKIPPED = "skipped"


def _data_dir():
    return files("arrkit_cli") / "data"


def bundled_names() -> List[str]:
    return sorted(entry.name[: -len(".json")] for entry in _data_dir().iterdir() if entry.name.endswith(".json"))


def load_bundled(name: str) -> ArrangementFile:
    """
    Raises:
        KeyError: If no bundled file has that name
    """
    resource = _data_dir() / f"{name}.json"
    if not resource.is_file():
        raise KeyError(f"No bundled arrangement {name!r}; known: {', '.join(bundled_names())}")
    return ArrangementFile.model_validate_json(resource.read_text(encoding="utf-8"))


class ArrangementVerdict(BaseModel):
    name: str
    checked: int
    passed: int
    failures: Dict[str, str] = {}
    discrepancies: Dict[str, str] = {}
    skipped: List[str] = []
    seconds: float = 0.0

    @property
    def status(self) -> str:
        return FAIL if self.failures else PASS


class CorpusVerdict(BaseModel):
    verdicts: List[ArrangementVerdict]

    @property
    def ok(self) -> bool:
        return all(v.status == PASS for v in self.verdicts)


def verify_file(
    file: ArrangementFile,
    options: Optional[ReportOptions] = None,
    budget: Optional[Budget] = None,
    seed: int = 0,
) -> ArrangementVerdict:
    """
    Compare a report against the file's reference values.

    A mismatch is a discrepancy when the file lists its path as known to
    disagree, a failure otherwise. Values the options or budget leave
    uncomputed are skipped.
    """
    start = time.perf_counter()
    doc = build_report(file, options, budget, seed)
    known = file.expected.discrepancies if file.expected else {}
    failures, discrepancies, skipped = {}, {}, []
    checked = passed = 0
    for path, v in doc.values().items():
        if v.literal is None:
            continue
        if v.value is None:
            skipped.append(path)
            continue
        checked += 1
        if v.agrees:
            passed += 1
        elif path in known:
            discrepancies[path] = f"computed {v.value}, reference {v.literal}: {known[path]}"
        else:
            failures[path] = f"computed {v.value}, reference {v.literal}"
    elapsed = time.perf_counter() - start
    verdict = ArrangementVerdict(
        name=file.name,
        checked=checked,
        passed=passed,
        failures=failures,
        discrepancies=discrepancies,
        skipped=skipped,
        seconds=round(elapsed, 3),
    )
    log = logger.warning if failures else logger.info
    log(f"{file.name}: {passed}/{checked} agree, {len(discrepancies)} known discrepancies, {len(skipped)} skipped")
    return verdict


def verify_corpus(
    names: Optional[Sequence[str]] = None,
    options: Optional[ReportOptions] = None,
    budget: Optional[Budget] = None,
    seed: int = 0,
) -> CorpusVerdict:
    names = list(names) if names else bundled_names()
    budget = budget or Budget()
    verdicts = []
    for name in tqdm(names, desc="corpus", disable=not budget.progress):
        verdicts.append(verify_file(load_bundled(name), options, budget, seed))
    return CorpusVerdict(verdicts=verdicts)


def render_matrix(verdict: CorpusVerdict) -> str:
    """One line per arrangement: status, agreement count, discrepancies, skips and time."""
    width = max((len(v.name) for v in verdict.verdicts), default=4)
    lines = [f"{'name':<{width}}  status  agree   known  skipped  seconds"]
    for v in verdict.verdicts:
        lines.append(
            f"{v.name:<{width}}  {v.status:<6}  {v.passed:>3}/{v.checked:<3} {len(v.discrepancies):>4}"
            f"  {len(v.skipped):>7}  {v.seconds:>7.1f}"
        )
        lines.extend(f"{'':<{width}}  FAIL {path}: {why}" for path, why in v.failures.items())
        lines.extend(f"{'':<{width}}  known {path}: {why}" for path, why in v.discrepancies.items())
    lines.append("all pass" if verdict.ok else "FAILURES")
    return "\n".join(lines)
