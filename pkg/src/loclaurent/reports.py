"""
Canonical text and JSON forms of characters and check reports. Text output is
deterministic: ascending degrees, rationals as "p/q" with the denominator
omitted when it is 1.
"""
from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel

from loclaurent.laurent import LaurentPoly
from loclaurent.localization.localizer import EquivariantCharacter, invariant_part
from loclaurent.utils import format_rational
from loclaurent.verification import CheckReport, CheckStatus
from loclaurent.verification.suite import SuiteSummary


def _monomial(degree: int) -> str:
    if degree == 0:
        return "1"
    if degree == 1:
        return "z"
    return f"z^{degree}"


def format_character(p: LaurentPoly) -> str:
    """
    Ascending degree with explicit signs, e.g. "z^-1 + 1 + z" or "2*z^-2 - 1/2*z"
    """
    if p.is_zero:
        return "0"
    out = ""
    for degree, c in p.items():
        negative = c < 0
        magnitude = -c if negative else c
        if degree == 0:
            term = format_rational(magnitude)
        elif magnitude == 1:
            term = _monomial(degree)
        else:
            term = f"{format_rational(magnitude)}*{_monomial(degree)}"
        if not out:
            out = f"-{term}" if negative else term
        else:
            out += f" - {term}" if negative else f" + {term}"
    return out


class CharacterReport(BaseModel):
    """
    Output of the character command. ``paths`` lists every evaluation path used;
    ``agreement`` is True when at least two of them were cross-checked. A disagreement
    raises inside :func:`localize`, so a report is never built from disagreeing paths.
    """
    name: str
    character: List[Tuple[int, str]]
    text: str
    invariant_part: int
    dimension: str
    paths: List[str]
    agreement: bool
    order_margin: int
    eval_point: Optional[str] = None
    eval_value: Optional[str] = None

    @classmethod
    def build(cls, name: str, q: EquivariantCharacter, order_margin: int,
              eval_point: Optional[Fraction] = None, eval_value: Optional[Fraction] = None) -> "CharacterReport":
        return cls(
            name=name,
            character=[(d, format_rational(c)) for d, c in q.multiplicities()],
            text=format_character(q.poly),
            invariant_part=invariant_part(q),
            dimension=format_rational(q.dimension),
            paths=list(q.provenance),
            agreement=len(q.provenance) > 1,
            order_margin=order_margin,
            eval_point=None if eval_point is None else format_rational(eval_point),
            eval_value=None if eval_value is None else format_rational(eval_value),
        )

    def to_text(self) -> str:
        lines = [
            f"name: {self.name}",
            f"character: {self.text}",
            f"invariant part: {self.invariant_part}",
            f"dimension: {self.dimension}",
            f"order margin: {self.order_margin}",
            f"paths: {', '.join(self.paths)} ({'agree' if self.agreement else 'unchecked'})",
        ]
        if self.eval_point is not None:
            lines.append(f"value at {self.eval_point}: {self.eval_value}")
        return "\n".join(lines) + "\n"


class RowModel(BaseModel):
    name: str
    left: Optional[str] = None
    right: Optional[str] = None
    status: str
    note: str = ""


class CheckModel(BaseModel):
    check: str
    status: str
    precondition: Optional[str] = None
    rows: List[RowModel] = []

    @classmethod
    def from_report(cls, report: CheckReport) -> "CheckModel":
        return cls(
            check=report.check,
            status=report.status.value,
            precondition=report.precondition,
            rows=[
                RowModel(
                    name=r.name,
                    left=None if r.left is None else format_rational(r.left),
                    right=None if r.right is None else format_rational(r.right),
                    status=r.status.value,
                    note=r.note,
                )
                for r in report.rows
            ],
        )


class VerifyReport(BaseModel):
    """
    Output of the verify command; ``status`` is PASS only when every check passed
    """
    name: str
    checks: List[CheckModel]
    status: str

    @classmethod
    def build(cls, name: str, reports: List[CheckReport]) -> "VerifyReport":
        passed = all(r.passed for r in reports)
        return cls(
            name=name,
            checks=[CheckModel.from_report(r) for r in reports],
            status=CheckStatus.PASS.value if passed else CheckStatus.FAIL.value,
        )

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS.value

    def to_text(self) -> str:
        lines = [f"name: {self.name}"]
        for check in self.checks:
            lines.append(f"[{check.status}] {check.check}")
            if check.precondition is not None:
                lines.append(f"  precondition: {check.precondition}")
            for row in check.rows:
                if row.left is None:
                    lines.append(f"  {row.name}: {row.status}" + (f" ({row.note})" if row.note else ""))
                else:
                    lines.append(f"  {row.name}: {row.left} = {row.right} {row.status}")
        lines.append("summary:")
        for check in self.checks:
            lines.append(f"  {check.check}: {check.status}")
        lines.append(f"  overall: {self.status}")
        return "\n".join(lines) + "\n"


def suite_text(summary: SuiteSummary) -> str:
    """
    One line per example, then the totals
    """
    lines = []
    for result in summary.results:
        status = "PASS" if result.passed else "FAIL"
        lines.append(f"[{status}] {result.name}")
        if result.error is not None:
            lines.append(f"  error: {result.error}")
        for check in result.checks:
            if not check.passed:
                lines.append(f"  {check.check}: {check.status.value}")
                for row in check.rows:
                    if row.status is CheckStatus.FAIL:
                        lines.append(f"    {row.name}: {row.note or f'{row.left} != {row.right}'}")
    lines.append(f"{len(summary.results)} examples, {len(summary.failures)} failed")
    return "\n".join(lines) + "\n"
