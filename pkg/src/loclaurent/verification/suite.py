"""
Example records and the runner that pushes every record through validation,
localization, both propositions and the reduction chain.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

from tqdm import tqdm

from loclaurent.configs import LocLaurentConfig
from loclaurent.errors import DenominatorVanishes, LocLaurentError
from loclaurent.laurent import LaurentPoly
from loclaurent.localization import ManifoldData, validate_manifold
from loclaurent.localization.localizer import component_fractions, eval_character, invariant_part, localize
from loclaurent.utils import Timer, to_scalar
from loclaurent.verification import (
    CheckReport,
    CheckRow,
    CheckStatus,
    CutTriple,
    check_prop1,
    check_prop2,
    check_reduction,
    run_check,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExampleRecord:
    """
    A bundled dataset with the outputs it must produce.

    :param name: Unique example name, e.g. "sphere(1,1)"
    :param data: The space, or a cut triple for it
    :param expected_character: Q(M) if known
    :param expected_invariant: Q(M)^S1 if known
    :param note: How the expectations were derived
    """
    name: str
    data: Union[ManifoldData, CutTriple]
    expected_character: Optional[LaurentPoly] = None
    expected_invariant: Optional[int] = None
    note: str = ""

    @property
    def manifold(self) -> ManifoldData:
        return self.data.original if isinstance(self.data, CutTriple) else self.data

    @property
    def cut(self) -> Optional[CutTriple]:
        return self.data if isinstance(self.data, CutTriple) else None


@dataclass
class ExampleResult:
    name: str
    checks: List[CheckReport] = field(default_factory=list)
    error: Optional[str] = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks)


@dataclass
class SuiteSummary:
    results: List[ExampleResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[ExampleResult]:
        return [r for r in self.results if not r.passed]


def _validation_report(name: str, m: ManifoldData) -> CheckReport:
    report = CheckReport(name)
    violations = validate_manifold(m).violations
    if violations:
        for v in violations:
            report.rows.append(CheckRow(str(v.path), None, None, CheckStatus.FAIL, v.message))
    else:
        report.rows.append(CheckRow.compare("violations", 0, 0))
    return report


def _evaluation_report(m: ManifoldData, character, points: Sequence[str]) -> CheckReport:
    report = CheckReport("evaluation")
    if not m.is_point_mode:
        report.rows.append(CheckRow.skipped("polynomial = fractions", "needs point-mode data"))
        return report
    fractions = component_fractions(m)
    for point in points:
        name = f"Q(M)({point}) = sum of fractions at {point}"
        try:
            report.rows.append(CheckRow.compare(name, eval_character(character, point),
                                                eval_character(fractions, point)))
        except DenominatorVanishes:
            report.rows.append(CheckRow.skipped(name, f"{point} is a root of a denominator"))
    return report


def check_example(record: ExampleRecord, config: Optional[LocLaurentConfig] = None) -> ExampleResult:
    """
    Runs every applicable check on one record; errors from the core end the record
    """
    config = config or LocLaurentConfig()
    loc = config.localization
    result = ExampleResult(record.name)
    m = record.manifold

    try:
        result.checks.append(_validation_report("validate", m))
        if record.cut is not None:
            result.checks.append(_validation_report("validate plus cut", record.cut.plus_cut))
        if not all(c.passed for c in result.checks):
            return result

        character = localize(m, config=loc)
        expected = CheckReport("expectations")
        if record.expected_character is not None:
            matches = character.poly == record.expected_character
            expected.rows.append(CheckRow(
                "character", None, None, CheckStatus.PASS if matches else CheckStatus.FAIL,
                "" if matches else f"got {character.poly!r}",
            ))
        if record.expected_invariant is not None:
            expected.rows.append(CheckRow.compare("invariant part", invariant_part(character),
                                                  record.expected_invariant, record.note))
        if expected.rows:
            result.checks.append(expected)

        points = [str(to_scalar(p)) for p in config.verification.eval_points]
        result.checks.append(_evaluation_report(m, character, points))

        if m.phi_max != 0:
            other = record.cut.plus_cut if record.cut is not None else None
            result.checks.append(run_check(check_prop1, "prop1", m, other, config=loc))
        for space in [m] + ([record.cut.plus_cut] if record.cut is not None else []):
            if space.phi_min == 0:
                result.checks.append(run_check(check_prop2, "prop2", space, config=loc))
        if record.cut is not None:
            result.checks.append(run_check(check_reduction, "reduction", record.cut, config=loc))
    except LocLaurentError as e:
        logger.warning("example `%s` failed: %s", record.name, e)
        result.error = f"{type(e).__name__}: {e}"
    return result


def run_example_suite(records: Optional[Sequence[ExampleRecord]] = None,
                      config: Optional[LocLaurentConfig] = None) -> SuiteSummary:
    """
    Runs :func:`check_example` over the records, by default every bundled example.
    Results are ordered by example name.

    :param records: Records to run
    :type records: Sequence[ExampleRecord]

    :param config: Settings; ``verification.show_progress`` enables a progress bar
    :type config: LocLaurentConfig

    :rtype: SuiteSummary
    """
    if records is None:
        from loclaurent.datasets.bundled import bundled_records

        records = bundled_records()
    config = config or LocLaurentConfig()

    summary = SuiteSummary()
    if not records:
        logger.warning("example suite is empty: 0 examples checked")
        return summary

    timer = Timer()
    ordered = sorted(records, key=lambda r: r.name)
    for record in tqdm(ordered, disable=not config.verification.show_progress, desc="examples"):
        result = check_example(record, config)
        result.elapsed = timer.hit()
        logger.info("%s: %s in %.3fs", record.name, "ok" if result.passed else "FAILED", result.elapsed)
        summary.results.append(result)
    return summary
