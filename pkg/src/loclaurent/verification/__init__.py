"""
Checks that quantization commutes with reduction, on the invariant part of the
character: the positive-side formula, the minimum-at-zero formula, and the
chain Q(M)^S1 = Q(M+)^S1 = Q(M_S1) for a symplectic cut.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, List, Optional

from loclaurent.configs import LocalizationConfig
from loclaurent.errors import PreconditionViolated
from loclaurent.localization import ManifoldData, validate_manifold
from loclaurent.localization.localizer import (
    constant_term_at_infinity,
    constant_term_at_zero,
    invariant_part,
    localize,
)

logger = logging.getLogger(__name__)


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    PRECONDITION = "PRECONDITION"
    SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class CheckRow:
    """
    One equality: ``left == right``, both sides exact

    :param name: What the equality states
    :param left: Value of the left side
    :param right: Value of the right side
    :param status: PASS or FAIL, SKIPPED when the comparison does not apply
    :param note: Extra context for skipped or failed rows
    """
    name: str
    left: Optional[Fraction]
    right: Optional[Fraction]
    status: CheckStatus
    note: str = ""

    @classmethod
    def compare(cls, name: str, left, right, note: str = "") -> "CheckRow":
        left, right = Fraction(left), Fraction(right)
        status = CheckStatus.PASS if left == right else CheckStatus.FAIL
        return cls(name, left, right, status, note)

    @classmethod
    def skipped(cls, name: str, note: str) -> "CheckRow":
        return cls(name, None, None, CheckStatus.SKIPPED, note)


@dataclass
class CheckReport:
    """
    Outcome of one check. A violated precondition leaves ``rows`` empty.
    """
    check: str
    rows: List[CheckRow] = field(default_factory=list)
    precondition: Optional[str] = None

    @property
    def status(self) -> CheckStatus:
        if self.precondition is not None:
            return CheckStatus.PRECONDITION
        if any(r.status is CheckStatus.FAIL for r in self.rows):
            return CheckStatus.FAIL
        if self.rows and all(r.status is CheckStatus.SKIPPED for r in self.rows):
            return CheckStatus.SKIPPED
        return CheckStatus.PASS

    @property
    def passed(self) -> bool:
        return self.status in (CheckStatus.PASS, CheckStatus.SKIPPED)


@dataclass(frozen=True)
class CutTriple:
    """
    A space together with its positive symplectic cut at level 0.

    :param original: Fixed-point data of M
    :param plus_cut: Fixed-point data of M+: the components of M with phi_r > 0 plus the
        reduced space M_S1 as new component(s) at phi = 0
    :param reduced_quantization: Q(M_S1), supplied with its derivation in ``note``
    :param note: How ``reduced_quantization`` was obtained
    :param minus_cut: Optional data of M-; validated, never used by the chain
    :param free_on_zero_level: The circle acts freely on the zero level set. Fixed-point
        data cannot show this, so it is recorded here and trusted.
    """
    original: ManifoldData
    plus_cut: ManifoldData
    reduced_quantization: int
    note: str = ""
    minus_cut: Optional[ManifoldData] = None
    free_on_zero_level: bool = True


def positive_data(m: ManifoldData) -> Counter:
    """
    Multiset of the fixed-point data with phi_r > 0, labels ignored
    """
    return Counter(c.data_key() for c in m.positive_part())


def _require_nonzero_max(m: ManifoldData, name: str):
    if m.phi_max == 0:
        raise PreconditionViolated(f"0 is the maximum of the moment map on {name}")


def check_prop1(m: ManifoldData, n: Optional[ManifoldData] = None,
                config: Optional[LocalizationConfig] = None) -> CheckReport:
    """
    The invariant part only sees the components above level 0: it equals the
    constant term at z=0 of their contributions alone. Two spaces with the same
    data above 0 therefore have the same invariant part.

    :param m: First space
    :param n: Second space, defaults to ``m``
    :param config: Localization settings

    :raises PreconditionViolated: when 0 is the maximum value of either moment map
    """
    spaces = [("M", m)] if n is None or n is m else [("M", m), ("N", n)]
    for name, space in spaces:
        _require_nonzero_max(space, name)

    report = CheckReport("prop1")
    invariants = {}
    for name, space in spaces:
        invariants[name] = invariant_part(localize(space, config=config))
        report.rows.append(CheckRow.compare(
            f"Q({name})^S1 = constant term at z=0 of phi>0 contributions",
            invariants[name], constant_term_at_zero(space.positive_part()),
        ))

    name = "Q(M)^S1 = Q(N)^S1"
    if len(spaces) == 1:
        report.rows.append(CheckRow.compare(name, invariants["M"], invariants["M"], "N is M"))
    elif positive_data(m) == positive_data(n):
        report.rows.append(CheckRow.compare(name, invariants["M"], invariants["N"]))
    else:
        report.rows.append(CheckRow.skipped(name, "the phi>0 data of M and N differ"))
    logger.debug("prop1: %s", report.status.value)
    return report


def check_prop2(m: ManifoldData, config: Optional[LocalizationConfig] = None) -> CheckReport:
    """
    When 0 is the minimum of the moment map, the invariant part is the sum over the
    minimum of q_!(l). The components above 0 have no constant term at z=infinity.

    :raises PreconditionViolated: when the minimum is not 0
    """
    if m.phi_min != 0:
        raise PreconditionViolated(f"minimum of the moment map is {m.phi_min}, not 0")

    report = CheckReport("prop2")
    q0 = sum((c.push(c.line_class) for c in m.at_level(0)), Fraction(0))
    report.rows.append(CheckRow.compare("Q(M)^S1 = q0!(l0)", invariant_part(localize(m, config=config)), q0))
    report.rows.append(CheckRow.compare(
        "constant term at z=infinity of phi>0 contributions = 0",
        constant_term_at_infinity(m.positive_part()), 0,
    ))
    logger.debug("prop2: %s", report.status.value)
    return report


def check_reduction(t: CutTriple, config: Optional[LocalizationConfig] = None) -> CheckReport:
    """
    Checks Q(M)^S1 = Q(M+)^S1 = Q(M_S1), each equality on its own row, and that the
    line class on the new minimum pushes forward to Q(M_S1).

    :raises PreconditionViolated: when the triple is not a cut at level 0 of M
    """
    if not t.free_on_zero_level:
        raise PreconditionViolated("the action is not free on the zero level set")
    if t.plus_cut.phi_min != 0:
        raise PreconditionViolated(f"minimum of the cut space is {t.plus_cut.phi_min}, not 0")
    if positive_data(t.original) != positive_data(t.plus_cut):
        raise PreconditionViolated("components with phi > 0 differ between M and M+")
    if t.minus_cut is not None:
        minus = validate_manifold(t.minus_cut)
        if not minus.passed:
            raise PreconditionViolated(f"minus cut is invalid: {minus.violations[0]}")

    q_m = invariant_part(localize(t.original, config=config))
    q_plus = invariant_part(localize(t.plus_cut, config=config))
    q0 = sum((c.push(c.line_class) for c in t.plus_cut.at_level(0)), Fraction(0))

    report = CheckReport("reduction")
    report.rows.append(CheckRow.compare("Q(M)^S1 = Q(M+)^S1", q_m, q_plus))
    report.rows.append(CheckRow.compare("Q(M+)^S1 = Q(M_S1)", q_plus, t.reduced_quantization, t.note))
    report.rows.append(CheckRow.compare("q0!(l0) = Q(M_S1)", q0, t.reduced_quantization))
    logger.debug("reduction: %s", report.status.value)
    return report


def run_check(check: Callable[..., CheckReport], name: str, *args, **kwargs) -> CheckReport:
    """
    Runs a check, turning a violated precondition into a PRECONDITION report
    """
    try:
        return check(*args, **kwargs)
    except PreconditionViolated as e:
        logger.info("%s: precondition violated: %s", name, e)
        return CheckReport(name, precondition=str(e))
