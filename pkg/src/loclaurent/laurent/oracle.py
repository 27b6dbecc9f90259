"""
Exact rational functions with rational coefficients. Used as an independent
oracle for the localization sum: the terms are brought over a common
denominator with sympy and divided exactly.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence, Tuple

import sympy

from loclaurent.errors import DenominatorVanishes, NonPolynomialSum, SpecMismatch
from loclaurent.laurent import Direction, LaurentPoly, TruncatedSeries, embed
from loclaurent.laurent.inversion import invert
from loclaurent.utils import to_scalar

logger = logging.getLogger(__name__)

Z = sympy.Symbol("z")


@dataclass(frozen=True)
class RationalFraction:
    """
    numerator / denominator with scalar Laurent polynomials

    :param numerator: Scalar polynomial
    :param denominator: Scalar polynomial, not identically zero
    """
    numerator: LaurentPoly
    denominator: LaurentPoly

    def __post_init__(self):
        if self.numerator.spec is not None or self.denominator.spec is not None:
            raise SpecMismatch("rational fractions only have rational coefficients")
        if self.denominator.is_zero:
            raise DenominatorVanishes("denominator is identically zero")

    def evaluate(self, z0) -> Fraction:
        """
        Exact value at z0.

        :raises DenominatorVanishes: when z0 is a root of the denominator
        """
        z0 = to_scalar(z0)
        den = self.denominator.evaluate(z0)
        if den == 0:
            raise DenominatorVanishes(f"denominator vanishes at z = {z0}")
        return self.numerator.evaluate(z0) / den

    def expand(self, direction: Direction, order: int) -> TruncatedSeries:
        """
        Series expansion exact up to ``order`` (from above at z=0, from below at z=infinity)
        """
        if self.numerator.is_zero:
            return embed(self.numerator, direction, order)
        if direction is Direction.AT_ZERO:
            inverse_order = order + self.denominator.low - self.numerator.low
            if inverse_order < 0:
                return TruncatedSeries(direction, order, order, spec=None)
            inv = invert(self.denominator, direction, inverse_order)
            num = embed(self.numerator, direction, max(order + self.denominator.low, self.numerator.high))
        else:
            inverse_order = order + self.denominator.high - self.numerator.high
            if inverse_order > 0:
                return TruncatedSeries(direction, order, order, spec=None)
            inv = invert(self.denominator, direction, inverse_order)
            num = embed(self.numerator, direction, min(order + self.denominator.high, self.numerator.low))
        return num * inv


def _to_sympy(p: LaurentPoly) -> Tuple[int, sympy.Poly]:
    """
    Splits p = z^shift * P(z) with P an ordinary polynomial with P(0) != 0
    """
    if p.is_zero:
        return 0, sympy.Poly(0, Z, domain="QQ")
    shift = p.low
    rep = {(d - shift,): sympy.Rational(c.numerator, c.denominator) for d, c in p.items()}
    return shift, sympy.Poly.from_dict(rep, Z, domain="QQ")


def _from_sympy(poly: sympy.Poly, shift: int) -> LaurentPoly:
    coeffs = {}
    for (degree,), c in poly.terms():
        c = sympy.Rational(c)
        coeffs[degree + shift] = Fraction(int(c.p), int(c.q))
    return LaurentPoly(coeffs)


def fraction_sum_to_poly(terms: Sequence[RationalFraction]) -> LaurentPoly:
    """
    Sums rational fractions over a common denominator and divides exactly.

    :param terms: Fractions with rational coefficients
    :type terms: Sequence[RationalFraction]

    :return: The sum, which must be a Laurent polynomial
    :rtype: LaurentPoly

    :raises NonPolynomialSum: when the division leaves a nonzero remainder
    """
    if not terms:
        return LaurentPoly.zero()

    parts = []
    for term in terms:
        num_shift, num = _to_sympy(term.numerator)
        den_shift, den = _to_sympy(term.denominator)
        parts.append((num_shift - den_shift, num, den))

    denominator = reduce(lambda a, b: a.lcm(b), (den for _, _, den in parts))
    base = min(shift for shift, _, _ in parts)
    numerator = sympy.Poly(0, Z, domain="QQ")
    for shift, num, den in parts:
        monomial = sympy.Poly.from_dict({(shift - base,): 1}, Z, domain="QQ")
        numerator = numerator + num * denominator.exquo(den) * monomial

    quotient, remainder = numerator.div(denominator)
    if not remainder.is_zero:
        raise NonPolynomialSum(
            f"sum of {len(terms)} fractions keeps the pole factor {denominator.as_expr()} (remainder {remainder.as_expr()})"
        )
    result = _from_sympy(quotient, base)
    logger.debug("fraction oracle: %d terms summed to support %s", len(terms), result.support())
    return result
