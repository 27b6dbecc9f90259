from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loclaurent.algebra import AlgebraSpec
from loclaurent.errors import (
    DenominatorVanishes,
    DirectionMismatch,
    EmptyWindow,
    NonPolynomialSum,
    NotAUnit,
    SpecMismatch,
    WindowTooSmall,
)
from loclaurent.laurent import Direction, LaurentPoly, TruncatedSeries, embed, get_direction, series_add, series_mul
from loclaurent.laurent.inversion import invert_at_infinity, invert_at_zero
from loclaurent.laurent.oracle import RationalFraction, fraction_sum_to_poly

DUAL = AlgebraSpec.dual_numbers()
AT_ZERO, AT_INFINITY = Direction.AT_ZERO, Direction.AT_INFINITY


def P(coeffs, spec=None):
    return LaurentPoly(coeffs, spec)


# === POLYNOMIALS ===


def test_poly_arithmetic():
    assert P({0: 1, 1: -1}) * P({0: 1, 1: 1}) == P({0: 1, 2: -1})
    assert P({0: 1, 1: 1}).shift(-2) == P({-2: 1, -1: 1})
    p = P({-3: "1/2", 4: 7})
    assert p * LaurentPoly.one() == p
    assert (p - p).is_zero
    assert P({0: 0, 1: 2}).support() == (1,)


def test_poly_evaluate():
    p = P({-1: 1, 0: 1, 1: 1})
    assert p.evaluate(2) == Fraction(7, 2)
    assert p.evaluate(1) == 3
    assert LaurentPoly.zero().evaluate("3/2") == 0
    with pytest.raises(DenominatorVanishes):
        p.evaluate(0)
    assert P({0: 5, 2: 1}).evaluate(0) == 5


def test_poly_rejects_floats_and_mixed_algebras():
    with pytest.raises(TypeError):
        P({0: 0.5})
    with pytest.raises(SpecMismatch):
        P({0: 1}) + P({0: 1}, DUAL)


def test_get_direction():
    assert get_direction("at-zero") is AT_ZERO
    assert get_direction(AT_INFINITY) is AT_INFINITY
    assert AT_ZERO.opposite is AT_INFINITY
    with pytest.raises(ValueError):
        get_direction("at-one")


# === SERIES ===


def test_embed_windows():
    p = P({-1: 1, 0: 1})
    s = embed(p, AT_ZERO, 3)
    assert s.window == (-1, 3)
    assert [s.coefficient(d) for d in range(-3, 4)] == [0, 0, 1, 1, 0, 0, 0]
    t = embed(p, "at-infinity", -3)
    assert t.window == (-3, 0)
    assert t.coefficient(5) == 0
    zero = embed(LaurentPoly.zero(), AT_ZERO, 2)
    assert zero.window == (2, 2) and zero.to_poly().is_zero


def test_embed_window_too_small():
    with pytest.raises(WindowTooSmall):
        embed(P({1: 1, 2: 1}), AT_ZERO, 1)
    with pytest.raises(WindowTooSmall):
        embed(P({-1: 1}), AT_INFINITY, 0)


def test_unknown_side_of_window():
    s = embed(P({0: 1}), AT_ZERO, 2)
    assert s.coefficient(-10) == 0
    with pytest.raises(WindowTooSmall):
        s.coefficient(3)


def test_series_add_windows():
    a = TruncatedSeries(AT_ZERO, 0, 5, {0: 1})
    b = TruncatedSeries(AT_ZERO, -2, 3, {-2: 1})
    assert series_add(a, b).window == (-2, 3)
    c = TruncatedSeries(AT_INFINITY, -5, 0, {0: 1})
    d = TruncatedSeries(AT_INFINITY, -3, 2, {2: 1})
    assert series_add(c, d).window == (-3, 2)
    assert a + embed(LaurentPoly.zero(), AT_ZERO, 5) == a


def test_series_mul_windows():
    geometric = invert_at_zero(P({0: 1, 1: -1}), 5)
    product = geometric * embed(P({0: 1, 1: -1}), AT_ZERO, 5)
    assert product.window == (0, 5)
    assert product.to_poly() == LaurentPoly.one()

    inverse = embed(P({-1: 1}), AT_ZERO, 3) * embed(P({1: 1}), AT_ZERO, 3)
    assert inverse.to_poly() == LaurentPoly.one()

    a = TruncatedSeries(AT_ZERO, 0, 5, {0: 1})
    b = TruncatedSeries(AT_ZERO, -1, 3, {-1: 1})
    assert series_mul(a, b).window == (-1, 3)


def test_series_errors():
    with pytest.raises(DirectionMismatch):
        embed(P({0: 1}), AT_ZERO, 0) + embed(P({0: 1}), AT_INFINITY, 0)
    with pytest.raises(EmptyWindow):
        TruncatedSeries(AT_ZERO, 3, 2)
    with pytest.raises(EmptyWindow):
        embed(P({0: 1}), AT_ZERO, 2).restrict(3, 6)


def test_restrict_and_reflect():
    s = invert_at_zero(P({0: 1, 1: -1}), 6)
    assert s.restrict(0, 2).window == (0, 2)
    r = s.reflect()
    assert r.direction is AT_INFINITY and r.window == (-6, 0)
    assert r.reflect() == s


# === INVERSION ===


def test_invert_geometric_series():
    s = invert_at_zero(P({0: 1, 1: -1}), 3)
    assert s.window == (0, 3)
    assert s.to_poly() == P({0: 1, 1: 1, 2: 1, 3: 1})


def test_invert_polynomial_in_inverse_z():
    s = invert_at_zero(P({0: 1, -1: -1}), 3)
    assert s.window == (1, 4)
    assert s.to_poly() == P({1: -1, 2: -1, 3: -1, 4: -1})


def test_invert_dual_number_coefficients():
    eps = DUAL.basis(1)
    p = LaurentPoly({0: DUAL.one() + eps, 1: -1}, DUAL)
    s = invert_at_zero(p, 2)
    assert s.coefficient(0) == DUAL.element([1, -1])
    assert s.coefficient(1) == DUAL.element([1, -2])
    assert s.coefficient(2) == DUAL.element([1, -3])


def test_invert_at_infinity():
    assert invert_at_infinity(P({0: 1, -1: -1}), -3).to_poly() == P({0: 1, -1: 1, -2: 1, -3: 1})
    s = invert_at_infinity(P({0: 1, 1: -1}), -3)
    assert s.window == (-4, -1)
    assert s.to_poly() == P({-1: -1, -2: -1, -3: -1, -4: -1})
    assert invert_at_infinity(P({0: 3}), 0).to_poly() == P({0: "1/3"})


def test_leading_term_is_inverse_of_lowest_coefficient():
    # 2 z^-2 + z^-1 + 5: lowest coefficient 2, not the constant term 5
    s = invert_at_zero(P({-2: 2, -1: 1, 0: 5}), 4)
    assert s.low == 2
    assert s.coefficient(2) == Fraction(1, 2)


def test_invert_non_units():
    with pytest.raises(NotAUnit):
        invert_at_zero(LaurentPoly.zero(), 3)
    with pytest.raises(NotAUnit):
        invert_at_zero(LaurentPoly({0: DUAL.basis(1), 1: DUAL.one()}, DUAL), 3)
    with pytest.raises(EmptyWindow):
        invert_at_zero(P({0: 1}), -1)


def _product_coefficient(p, s, n):
    total = None
    for d, c in p.items():
        term = c * s.coefficient(n - d)
        total = term if total is None else total + term
    return total


scalars = st.fractions(min_value=-5, max_value=5, max_denominator=6)
units = scalars.filter(lambda c: c != 0)
dual_scalars = st.tuples(scalars, scalars).map(DUAL.element)
dual_units = st.tuples(units, scalars).map(DUAL.element)


@st.composite
def laurent_polys(draw, spec=None):
    coefficient, unit = (scalars, units) if spec is None else (dual_scalars, dual_units)
    low = draw(st.integers(-8, 8))
    high = draw(st.integers(low, 8))
    coeffs = {d: draw(coefficient) for d in range(low + 1, high)}
    coeffs[low] = draw(unit)
    coeffs[high] = draw(unit) if high != low else coeffs[low]
    return LaurentPoly(coeffs, spec)


@settings(max_examples=200, deadline=None)
@given(st.one_of(laurent_polys(), laurent_polys(DUAL)))
def test_inversion_soundness(p):
    one, zero = (Fraction(1), Fraction(0)) if p.spec is None else (DUAL.one(), DUAL.zero())

    s = invert_at_zero(p, 30)
    assert s.low == -p.low
    for n in range(0, 31):
        assert _product_coefficient(p, s, n) == (one if n == 0 else zero)

    t = invert_at_infinity(p, -30)
    assert t.high == -p.high
    for n in range(-30, 1):
        assert _product_coefficient(p, t, n) == (one if n == 0 else zero)


@given(laurent_polys(), laurent_polys())
def test_embedding_is_injective(p, q):
    for direction, order in ((AT_ZERO, 10), (AT_INFINITY, -10)):
        assert embed(p, direction, order).to_poly() == p
        assert (embed(p, direction, order) == embed(q, direction, order)) == (p == q)


# === FRACTION ORACLE ===


SPHERE_FRACTIONS = [
    RationalFraction(P({1: 1}), P({0: 1, -1: -1})),
    RationalFraction(P({-1: 1}), P({0: 1, 1: -1})),
]


def test_fraction_sum():
    terms = [RationalFraction(P({2: 1}), P({1: 1, 0: -1})), RationalFraction(P({0: -1}), P({2: 1, 1: -1}))]
    assert fraction_sum_to_poly(terms) == P({-1: 1, 0: 1, 1: 1})
    p = P({-2: 3, 5: "1/7"})
    assert fraction_sum_to_poly([RationalFraction(p, LaurentPoly.one())]) == p
    assert fraction_sum_to_poly(SPHERE_FRACTIONS) == P({-1: 1, 0: 1, 1: 1})
    assert fraction_sum_to_poly([]).is_zero


def test_fraction_sum_with_pole():
    with pytest.raises(NonPolynomialSum):
        fraction_sum_to_poly([RationalFraction(P({0: 1}), P({1: 1, 0: -1}))])


def test_fraction_evaluate():
    f = RationalFraction(P({0: 1}), P({1: 1, 0: -1}))
    assert f.evaluate(3) == Fraction(1, 2)
    with pytest.raises(DenominatorVanishes):
        f.evaluate(1)
    with pytest.raises(DenominatorVanishes):
        RationalFraction(P({0: 1}), LaurentPoly.zero())


@pytest.mark.parametrize("direction, order", [(AT_ZERO, 6), (AT_INFINITY, -6)])
def test_fraction_expansions_match_the_sum(direction, order):
    total = SPHERE_FRACTIONS[0].expand(direction, order) + SPHERE_FRACTIONS[1].expand(direction, order)
    assert total == embed(fraction_sum_to_poly(SPHERE_FRACTIONS), direction, order)
