from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from loclaurent.algebra import AlgebraSpec, alg_add, alg_invert, alg_mul, algebra_validate, multiplication_matrix
from loclaurent.errors import NotAUnit, SpecMismatch

DUAL = AlgebraSpec.dual_numbers()
POINT = AlgebraSpec.point()

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
dual_elements = st.tuples(rationals, rationals).map(DUAL.element)


def test_point_and_dual_numbers_validate():
    assert algebra_validate(POINT).passed
    assert algebra_validate(DUAL).passed
    assert POINT.is_point and not DUAL.is_point


def test_commutativity_violation_is_located():
    spec = AlgebraSpec.build(["1", "e"], [[[1, 0], [1, 1]], [[2, 1], [0, 0]]], [1, 0])
    report = algebra_validate(spec)
    assert not report.passed
    assert report.violation.axiom == "commutativity"
    assert report.violation.indices == (0, 1)


def test_unit_violation():
    spec = AlgebraSpec.build(["1", "e"], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [0, 1])
    report = algebra_validate(spec)
    assert report.violation.axiom == "unit"


def test_associativity_violation():
    # Q[e]/(e^2 - e - 1) is fine; e*e = f, f*f = e, e*f = 0 is not associative
    spec = AlgebraSpec.build(["1", "e"], [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], [1, 0])
    assert algebra_validate(spec).passed
    broken = AlgebraSpec.build(["1", "e", "f"],
                               [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                                [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
                                [[0, 0, 1], [0, 0, 0], [0, 1, 0]]],
                               [1, 0, 0])
    assert algebra_validate(broken).violation.axiom == "associativity"


def test_shape_violation():
    spec = AlgebraSpec.build(["1", "e"], [[[1, 0]]], [1, 0])
    assert algebra_validate(spec).violation.axiom == "shape"


def test_add_and_mul():
    assert alg_add(DUAL.element([1, 0]), DUAL.element([0, 1])) == DUAL.element([1, 1])
    eps = DUAL.basis(1)
    assert alg_mul(eps, eps) == DUAL.zero()
    assert DUAL.element([2, 3]) * DUAL.element([1, -1]) == DUAL.element([2, 1])


def test_spec_mismatch():
    with pytest.raises(SpecMismatch):
        alg_add(POINT.one(), DUAL.one())
    with pytest.raises(SpecMismatch):
        DUAL.element([1, 2, 3])


def test_inverse_in_dual_numbers():
    # (1 + eps)^-1 = 1 - eps
    assert alg_invert(DUAL.element([1, 1])) == DUAL.element([1, -1])
    assert alg_invert(DUAL.element([2, 0])) == DUAL.element([Fraction(1, 2), 0])


def test_non_units():
    with pytest.raises(NotAUnit):
        alg_invert(DUAL.basis(1))
    with pytest.raises(NotAUnit):
        alg_invert(POINT.zero())
    assert not DUAL.basis(1).is_unit()


def test_multiplication_matrix():
    assert multiplication_matrix(DUAL.element([2, 3])) == [[2, 0], [3, 2]]


@given(dual_elements, dual_elements, dual_elements)
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * DUAL.one() == a
    assert a + DUAL.zero() == a


@given(dual_elements)
def test_inverse_property(a):
    if a.coords[0] == 0:
        with pytest.raises(NotAUnit):
            a.inverse()
    else:
        assert a * a.inverse() == DUAL.one()
