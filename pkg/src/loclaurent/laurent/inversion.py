"""
Inversion of Laurent polynomials in the two series rings.

Writing p = c z^v (1 + x) with c the lowest coefficient and x of order O(z),
the inverse at z=0 is c^{-1} z^{-v} sum_l (-x)^l. This covers both the case
of a unit constant term (v = 0) and that of a Laurent polynomial in 1/z with
unit leading coefficient b_m (v = -m). In the second case the leading term of
the inverse is b_m^{-1} z^m; it is sometimes quoted as b_0^{-1} z^m, which
is wrong unless b_0 = b_m.

The expansion at z=infinity is the same computation after z -> 1/z.
"""
import logging
from typing import Dict, List

from loclaurent.errors import EmptyWindow, NotAUnit
from loclaurent.laurent import (
    Coefficient,
    Direction,
    LaurentPoly,
    TruncatedSeries,
    coefficient_inverse,
    coefficient_one,
    coefficient_zero,
)

logger = logging.getLogger(__name__)


def invert_at_zero(p: LaurentPoly, order: int) -> TruncatedSeries:
    """
    Inverse of ``p`` in the ring of Laurent series at z=0.

    The result ``s`` has lowest degree ``-p.low`` and is exact on
    ``[-p.low, order - p.low]``, so that ``p * s = 1 + O(z^(order+1))``.

    :param p: Polynomial whose lowest nonzero coefficient is a unit
    :type p: LaurentPoly

    :param order: Degree through which ``p * s`` is guaranteed to equal 1
    :type order: int

    :raises NotAUnit: when ``p`` is zero or its lowest coefficient is not invertible
    """
    if p.is_zero:
        raise NotAUnit("the zero polynomial is not invertible")
    if order < 0:
        raise EmptyWindow(f"order {order} leaves nothing to compute")

    v = p.low
    lead_inv = coefficient_inverse(p.coefficient(v))
    x: Dict[int, Coefficient] = {d - v: lead_inv * c for d, c in p.items() if d > v}

    # Geometric series sum_l (-x)^l, accumulated degree by degree:
    # g_0 = 1 and g_n = -sum_{i>=1} x_i g_{n-i}.
    one, zero = coefficient_one(p.spec), coefficient_zero(p.spec)
    g: List[Coefficient] = [one]
    for n in range(1, order + 1):
        acc = zero
        for i, xi in x.items():
            if i <= n and g[n - i]:
                acc = acc + xi * g[n - i]
        g.append(-acc)

    coeffs = {n - v: lead_inv * gn for n, gn in enumerate(g) if gn}
    logger.debug("inverted polynomial with support %s at z=0 through relative order %d", p.support(), order)
    return TruncatedSeries._raw(Direction.AT_ZERO, -v, order - v, coeffs, p.spec)


def invert_at_infinity(p: LaurentPoly, order: int) -> TruncatedSeries:
    """
    Inverse of ``p`` in the ring of Laurent series at z=infinity; mirror of
    :func:`invert_at_zero`.

    The result has top degree ``-p.high`` and is exact on ``[order - p.high, -p.high]``,
    so that ``p * s = 1 + o(z^(order-1))``.

    :param p: Polynomial whose highest nonzero coefficient is a unit
    :param order: Degree (<= 0) down to which ``p * s`` is guaranteed to equal 1

    :raises NotAUnit: when ``p`` is zero or its top coefficient is not invertible
    """
    return invert_at_zero(p.reflect(), -order).reflect()


def invert(p: LaurentPoly, direction: Direction, order: int) -> TruncatedSeries:
    """
    Dispatches to :func:`invert_at_zero` or :func:`invert_at_infinity`
    """
    if direction is Direction.AT_ZERO:
        return invert_at_zero(p, order)
    return invert_at_infinity(p, order)
