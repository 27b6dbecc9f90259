"""
The localization formula for a circle action. Each fixed component contributes

    q_!( l_r z^{-phi_r} / Lambda(N_r) ),   Lambda(N_r) = P_r(z) Q_r(1/z),

which is expanded once as a Laurent series at z=0 and once at z=infinity. The
two sums must agree and be a polynomial supported in [-phi_max, -phi_min]; that
polynomial is the equivariant character.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple, Union

from loclaurent.configs import LocalizationConfig
from loclaurent.errors import DenominatorVanishes, FactorizationMismatch, InconsistentData, SpecMismatch
from loclaurent.laurent import Direction, LaurentPoly, TruncatedSeries, get_direction, series_add
from loclaurent.laurent.inversion import invert
from loclaurent.laurent.oracle import RationalFraction, fraction_sum_to_poly
from loclaurent.localization import FixedComponent, ManifoldData, NormalSummand, validate_manifold
from loclaurent.utils import to_scalar

logger = logging.getLogger(__name__)

AT_ZERO_PATH = "at-zero"
AT_INFINITY_PATH = "at-infinity"
ORACLE_PATH = "fraction-oracle"


@dataclass(frozen=True)
class EquivariantCharacter:
    """
    Q(M) as a Laurent polynomial in z: the coefficient of z^k is the multiplicity of weight k.

    :param poly: Scalar Laurent polynomial
    :param provenance: Evaluation paths that produced and cross-checked it
    """
    poly: LaurentPoly
    provenance: Tuple[str, ...] = ()

    def multiplicity(self, weight: int) -> Fraction:
        return self.poly.coefficient(weight)

    def multiplicities(self) -> List[Tuple[int, Fraction]]:
        return list(self.poly.items())

    @property
    def dimension(self) -> Fraction:
        """
        Value at z = 1
        """
        return self.poly.evaluate(1)


def summand_factor(summand: NormalSummand) -> LaurentPoly:
    """
    Lambda(N_k z^{-k}) = sum_j (-1)^j Lambda^j(N_k) z^{-jk}
    """
    spec = summand.exterior_powers[0].spec
    return LaurentPoly._raw(
        {-j * summand.weight: (e if j % 2 == 0 else -e) for j, e in enumerate(summand.exterior_powers)},
        spec,
    )


def lambda_total(c: FixedComponent) -> LaurentPoly:
    """
    Lambda of the conjugated normal bundle as a Laurent polynomial over K(F_r).
    Its constant coefficient is the unit only when all weights share a sign; in
    general only the two halves from :func:`split_pq` have constant term 1.

    :param c: Validated component
    :type c: FixedComponent
    """
    return reduce(lambda a, b: a * b, (summand_factor(s) for s in c.normal), LaurentPoly.one(c.spec))


def split_pq(c: FixedComponent) -> Tuple[LaurentPoly, LaurentPoly]:
    """
    Splits ``lambda_total(c)`` as P(z) Q(1/z): P collects the negative weights
    (nonnegative powers of z), Q the positive ones. Both have constant term 1 and
    unit leading coefficient prod (-1)^n det.

    :raises FactorizationMismatch: when P*Q differs from the full lambda class or a
        leading coefficient disagrees with the determinant formula
    """
    one = LaurentPoly.one(c.spec)
    negative = [s for s in c.normal if s.weight < 0]
    positive = [s for s in c.normal if s.weight > 0]
    P = reduce(lambda a, b: a * b, (summand_factor(s) for s in negative), one)
    Q = reduce(lambda a, b: a * b, (summand_factor(s) for s in positive), one)

    if P * Q != lambda_total(c):
        raise FactorizationMismatch(f"P*Q != Lambda(N) on component `{c.label}`")
    unit = c.spec.one()
    for name, half, summands, lead in (("P", P, negative, P.coefficient(P.high)),
                                       ("Q", Q, positive, Q.coefficient(Q.low))):
        if half.coefficient(0) != unit:
            raise FactorizationMismatch(f"{name} has constant term {half.coefficient(0)!r} on `{c.label}`")
        expected = unit
        for s in summands:
            expected = expected * (s.determinant if s.rank % 2 == 0 else -s.determinant)
        if lead != expected:
            raise FactorizationMismatch(f"leading coefficient of {name} on `{c.label}` is not the signed determinant")
    return P, Q


def inverse_lambda(c: FixedComponent, direction: Union[str, Direction], order: int) -> TruncatedSeries:
    """
    (Lambda N_r)^{-1} in the chosen completion. At z=0 it is 1 + O(z) on the maximum and
    O(z) elsewhere; at z=infinity it is 1 + o(1/z) on the minimum and o(1/z) elsewhere.
    """
    return invert(lambda_total(c), get_direction(direction), order)


def contribution(c: FixedComponent, direction: Union[str, Direction], order: int) -> TruncatedSeries:
    """
    q_!( l_r z^{-phi_r} (Lambda N_r)^{-1} ) expanded in the chosen completion.

    :param c: Validated component
    :param direction: Completion to expand in
    :param order: Truncation bound of the result: the top of the window at z=0,
        the bottom at z=infinity

    :return: Scalar series
    :rtype: TruncatedSeries

    :raises NotAUnit: when the relevant extreme coefficient of Lambda N_r is not a unit
    :raises InconsistentData: when a nonzero coefficient breaks the vanishing order forced by phi_r
    """
    direction = get_direction(direction)
    lt = lambda_total(c)
    phi = c.moment_weight

    if direction is Direction.AT_ZERO:
        inverse_order = order + lt.low + phi
        if inverse_order < 0:
            return TruncatedSeries(direction, order, order)
    else:
        inverse_order = order + lt.high + phi
        if inverse_order > 0:
            return TruncatedSeries(direction, order, order)

    series = (invert(lt, direction, inverse_order) * c.line_class).shift(-phi).map_coefficients(c.push, None)

    lowest, highest = series.lowest_nonzero(), series.highest_nonzero()
    if direction is Direction.AT_ZERO and phi <= 0 and c.positive_weights and lowest is not None and lowest < 1:
        raise InconsistentData(f"component `{c.label}` contributes z^{lowest} at z=0")
    if direction is Direction.AT_INFINITY and phi > 0 and highest is not None and highest > -1:
        raise InconsistentData(f"component `{c.label}` contributes z^{highest} at z=infinity")

    logger.debug("contribution of `%s` at %s on [%d, %d]", c.label, direction.value, series.low, series.high)
    return series


def component_fractions(m: ManifoldData) -> List[RationalFraction]:
    """
    Per-component rational functions l_r z^{-phi_r} / Lambda N_r (point mode only,
    where the pushforward is a ring homomorphism)
    """
    if not m.is_point_mode:
        raise SpecMismatch("component fractions need point-mode data")
    return [
        RationalFraction(c.push_poly(LaurentPoly.monomial(-c.moment_weight, c.line_class, c.spec)),
                         c.push_poly(lambda_total(c)))
        for c in m.components
    ]


def _sum_series(m: ManifoldData, direction: Direction, order: int, workers: int) -> TruncatedSeries:
    def expand(c):
        return contribution(c, direction, order)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(expand, m.components))
    else:
        parts = [expand(c) for c in m.components]
    return reduce(series_add, parts)


def localize(m: ManifoldData, margin: Optional[int] = None,
             config: Optional[LocalizationConfig] = None) -> EquivariantCharacter:
    """
    Computes Q(M) from fixed-point data.

    Both completions are summed on the window [-phi_max - margin, -phi_min + margin].
    The sum at z=0 must vanish above -phi_min, the sum at z=infinity below -phi_max,
    and the two must agree everywhere on the window. In point mode the result is
    also compared with the exact sum of rational fractions.

    :param m: Fixed-point data
    :type m: ManifoldData

    :param margin: Extra degrees on each side of the support; overrides the config
    :type margin: int

    :param config: Localization settings
    :type config: LocalizationConfig

    :raises InconsistentData: when the data are invalid or the checks above fail
    :raises NotAUnit: from inversion
    """
    config = config or LocalizationConfig()
    margin = config.order_margin if margin is None else margin
    if margin < 0:
        raise ValueError(f"order margin must be nonnegative, got {margin}")

    report = validate_manifold(m)
    if not report.passed:
        raise InconsistentData("invalid fixed-point data: " + "; ".join(str(v) for v in report.violations))

    top, bottom = -m.phi_min, -m.phi_max
    lo, hi = bottom - margin, top + margin
    at_zero = _sum_series(m, Direction.AT_ZERO, hi, config.workers)
    at_infinity = _sum_series(m, Direction.AT_INFINITY, lo, config.workers)
    logger.debug("summed %d contributions on window [%d, %d]", len(m.components), lo, hi)

    for d in range(top + 1, hi + 1):
        if at_zero.coefficient(d):
            raise InconsistentData(f"sum at z=0 has a nonzero coefficient at z^{d}, above -phi_min = {top}")
    for d in range(lo, bottom):
        if at_infinity.coefficient(d):
            raise InconsistentData(f"sum at z=infinity has a nonzero coefficient at z^{d}, below -phi_max = {bottom}")
    for d in range(lo, hi + 1):
        if at_zero.coefficient(d) != at_infinity.coefficient(d):
            raise InconsistentData(
                f"expansions at z=0 and z=infinity disagree at z^{d}: "
                f"{at_zero.coefficient(d)} vs {at_infinity.coefficient(d)}"
            )

    poly = at_zero.restrict(lo, hi).to_poly()
    if config.check_integrality:
        for d, c in poly.items():
            if c.denominator != 1:
                raise InconsistentData(f"multiplicity {c} of z^{d} is not an integer")

    provenance = (AT_ZERO_PATH, AT_INFINITY_PATH)
    if config.fraction_oracle and m.is_point_mode:
        oracle = fraction_sum_to_poly(component_fractions(m))
        if oracle != poly:
            raise InconsistentData(f"fraction oracle gives {oracle!r}, series give {poly!r}")
        provenance += (ORACLE_PATH,)

    logger.info("character with support %s via %s", poly.support(), ", ".join(provenance))
    return EquivariantCharacter(poly, provenance)


def invariant_part(q: EquivariantCharacter) -> int:
    """
    Multiplicity of the trivial representation: the coefficient of z^0

    :raises InconsistentData: when that coefficient is not an integer
    """
    c = q.multiplicity(0)
    if c.denominator != 1:
        raise InconsistentData(f"invariant part {c} is not an integer")
    return int(c)


def constant_term_at_zero(components: Sequence[FixedComponent]) -> Fraction:
    """
    Constant term of the sum at z=0 of the given contributions
    """
    return sum((contribution(c, Direction.AT_ZERO, 0).coefficient(0) for c in components), Fraction(0))


def constant_term_at_infinity(components: Sequence[FixedComponent]) -> Fraction:
    """
    Constant term of the sum at z=infinity of the given contributions
    """
    return sum((contribution(c, Direction.AT_INFINITY, 0).coefficient(0) for c in components), Fraction(0))


def eval_character(q: Union[EquivariantCharacter, Sequence[RationalFraction]], z0) -> Fraction:
    """
    Exact value of the character at a rational point z0 != 0, either from the
    polynomial or from the per-component fractions (see :func:`component_fractions`).

    :raises DenominatorVanishes: when z0 is 0 or a root of some denominator
    """
    z0 = to_scalar(z0)
    if z0 == 0:
        raise DenominatorVanishes("the character is evaluated at nonzero points only")
    if isinstance(q, EquivariantCharacter):
        return q.poly.evaluate(z0)
    return sum((f.evaluate(z0) for f in q), Fraction(0))
