from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from lattice_oracle import segment_weights, triangle_weights

from loclaurent.algebra import AlgebraSpec
from loclaurent.configs import LocalizationConfig
from loclaurent.datasets.bundled import bundled_records, cp2_line, cp2_triangle, sphere
from loclaurent.errors import DenominatorVanishes, InconsistentData, SpecMismatch
from loclaurent.laurent import Direction, LaurentPoly
from loclaurent.localization import FixedComponent, ManifoldData, NormalSummand, validate_manifold
from loclaurent.localization.localizer import (
    EquivariantCharacter,
    component_fractions,
    constant_term_at_zero,
    contribution,
    eval_character,
    inverse_lambda,
    invariant_part,
    lambda_total,
    localize,
    split_pq,
)

DUAL = AlgebraSpec.dual_numbers("eta")


def P(coeffs, spec=None):
    return LaurentPoly(coeffs, spec)


def point(label, phi, weights=(), line_class=1):
    return FixedComponent.point(label, phi, weights, line_class)


# === VALIDATION ===


def test_sphere_validates():
    assert validate_manifold(sphere(1, 1)).passed


def test_weight_zero_is_rejected():
    m = ManifoldData((point("a", -1, [(1, 1), (0, 1)]), point("b", 1, [(-1, 1)])))
    report = validate_manifold(m)
    assert not report.passed
    assert report.violations[0].path == "components[0].summands[1].weight"
    assert "component `a`" in report.violations[0].message


def test_extra_extreme_is_rejected():
    # `c` has no weights at all but sits strictly between the extremes
    m = ManifoldData((point("a", -1, [(1, 1)]), point("c", 0), point("b", 1, [(-1, 1)])))
    messages = [v.message for v in validate_manifold(m).violations]
    assert any("local minimum" in msg for msg in messages)
    assert any("local maximum" in msg for msg in messages)


def test_other_validation_failures():
    bad_powers = FixedComponent("a", 0, AlgebraSpec.point().one(),
                                (NormalSummand(1, 1, (AlgebraSpec.point().one(),)),), (Fraction(1),),
                                AlgebraSpec.point())
    m = ManifoldData((bad_powers, point("a", 1, [(-1, 1), (-2, 1), (-1, 2)])))
    paths = [v.path for v in validate_manifold(m).violations]
    assert "components[0].summands[0].exterior_powers" in paths
    assert "components[1].label" in paths
    assert "components[1].summands[2].weight" in paths
    assert not validate_manifold(ManifoldData(())).passed


def test_non_unit_determinant_is_rejected():
    c = FixedComponent("line", 0, DUAL.one(), (NormalSummand(1, 1, (DUAL.one(), DUAL.basis(1))),),
                       (Fraction(1), Fraction(1)), DUAL)
    m = ManifoldData((c, point("top", 1, [(-1, 1)])))
    assert [v.path for v in validate_manifold(m).violations] == ["components[0].summands[0].exterior_powers[1]"]


def test_extremes():
    m = sphere(2, 3)
    south, north = m.components
    assert m.is_minimum(south) and not m.is_maximum(south)
    assert m.is_maximum(north)
    assert (m.phi_min, m.phi_max) == (-2, 3)


# === LAMBDA CLASSES ===


def test_lambda_total():
    assert lambda_total(point("p", 0)) == LaurentPoly.one(AlgebraSpec.point())
    assert lambda_total(point("p", 0, [(1, 1)])).map_coefficients(lambda c: c.coords[0]) == P({0: 1, -1: -1})
    assert lambda_total(point("p", 0, [(-2, 2)])).map_coefficients(lambda c: c.coords[0]) == P({0: 1, 2: -2, 4: 1})


@pytest.mark.parametrize("weights, p, q", [
    ([(1, 1)], {0: 1}, {0: 1, -1: -1}),
    ([(-1, 1)], {0: 1, 1: -1}, {0: 1}),
    ([(1, 1), (-1, 1)], {0: 1, 1: -1}, {0: 1, -1: -1}),
])
def test_split_pq(weights, p, q):
    c = point("p", 0, weights)
    P_r, Q_r = split_pq(c)
    assert P_r.map_coefficients(lambda a: a.coords[0]) == P(p)
    assert Q_r.map_coefficients(lambda a: a.coords[0]) == P(q)
    assert P_r * Q_r == lambda_total(c)


def test_split_pq_over_dual_numbers():
    c = cp2_line(3, 1).components[0]
    P_r, Q_r = split_pq(c)
    assert P_r == LaurentPoly.one(DUAL)
    # Q = 1 - (1 - eta) z^-1, leading coefficient -(1 - eta)
    assert Q_r.coefficient(-1) == -DUAL.element([1, -1])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4).filter(bool), st.integers(1, 3)), max_size=4,
                unique_by=lambda t: t[0]))
def test_halves_of_lambda_have_unit_constant_term(weights):
    c = point("p", 0, weights)
    lt = lambda_total(c)
    P_r, Q_r = split_pq(c)
    assert P_r.coefficient(0) == c.spec.one()
    assert Q_r.coefficient(0) == c.spec.one()
    assert P_r * Q_r == lt
    if all(w > 0 for w, _ in weights) or all(w < 0 for w, _ in weights):
        assert lt.coefficient(0) == c.spec.one()


def test_mixed_weights_move_the_constant_term():
    # (1 - 1/z)(1 - z) = 2 - z - 1/z
    lt = lambda_total(point("p", 0, [(1, 1), (-1, 1)]))
    assert lt.map_coefficients(lambda a: a.coords[0]) == P({-1: -1, 0: 2, 1: -1})


def test_inverse_lambda_limits():
    m = sphere(1, 1)
    south, north = m.components
    # at z=0: 1 + O(z) on the maximum, O(z) elsewhere
    assert inverse_lambda(north, "at-zero", 4).coefficient(0) == AlgebraSpec.point().one()
    assert inverse_lambda(south, "at-zero", 4).low >= 1
    # at z=infinity: 1 + o(1/z) on the minimum, o(1/z) elsewhere
    assert inverse_lambda(south, "at-infinity", -4).coefficient(0) == AlgebraSpec.point().one()
    assert inverse_lambda(north, "at-infinity", -4).high <= -1


# === CONTRIBUTIONS ===


def test_contribution_at_zero_below_the_maximum():
    s = contribution(point("p", -1, [(1, 1)]), Direction.AT_ZERO, 6)
    # z / (1 - z^-1) = -z^2 / (1 - z)
    assert s.low == 2
    assert s.to_poly() == P({d: -1 for d in range(2, 7)})


def test_contribution_at_zero_on_the_maximum():
    s = contribution(point("p", 1, [(-1, 1)]), Direction.AT_ZERO, 4)
    assert s.to_poly() == P({d: 1 for d in range(-1, 5)})


def test_contribution_at_infinity_on_the_minimum():
    s = contribution(point("p", 0, [(1, 1)]), Direction.AT_INFINITY, -4)
    assert s.coefficient(0) == 1
    assert s.to_poly() == P({d: 1 for d in range(-4, 1)})


@pytest.mark.parametrize("record", bundled_records(), ids=lambda r: r.name)
def test_contributions_vanish_to_the_forced_order(record):
    for c in record.manifold.components:
        at_zero = contribution(c, Direction.AT_ZERO, 6)
        at_infinity = contribution(c, Direction.AT_INFINITY, -6)
        if c.moment_weight <= 0 and c.positive_weights and at_zero.lowest_nonzero() is not None:
            assert at_zero.lowest_nonzero() >= 1
        if c.moment_weight > 0 and at_infinity.highest_nonzero() is not None:
            assert at_infinity.highest_nonzero() <= -1


def test_contribution_outside_window_is_zero():
    s = contribution(point("p", -5, [(1, 1)]), Direction.AT_ZERO, 2)
    assert s.window == (2, 2) and s.to_poly().is_zero


# === LOCALIZATION ===


def test_sphere_character():
    q = localize(sphere(1, 1))
    assert q.poly == P({-1: 1, 0: 1, 1: 1})
    assert invariant_part(q) == 1
    assert q.dimension == 3
    assert q.provenance == ("at-zero", "at-infinity", "fraction-oracle")


def test_shifted_sphere_and_point():
    assert localize(sphere(0, 2)).poly == P({0: 1, -1: 1, -2: 1})
    q = localize(ManifoldData((point("pt", 0),)))
    assert q.poly == LaurentPoly.one()
    assert invariant_part(q) == 1


@pytest.mark.parametrize("a", range(1, 11))
@pytest.mark.parametrize("b", range(1, 11))
def test_sphere_family(a, b):
    q = localize(sphere(a, b))
    assert q.poly == P(segment_weights(a, b))
    assert q.dimension == a + b + 1
    assert invariant_part(q) == 1


@pytest.mark.parametrize("d", range(1, 6))
def test_cp2_triangle(d):
    q = localize(cp2_triangle(d))
    assert q.poly == P(triangle_weights(d))
    assert q.dimension == (d + 1) * (d + 2) // 2


@pytest.mark.parametrize("d, c", [(2, 1), (3, 1), (4, 2), (5, 0)])
def test_cp2_with_fixed_line(d, c):
    q = localize(cp2_line(d, c))
    assert q.poly == P(triangle_weights(d, xi=(1, 0), shift=c))
    assert invariant_part(q) == d - c + 1


def test_margin_zero_and_workers_give_the_same_result():
    m = cp2_triangle(3)
    expected = localize(m).poly
    assert localize(m, margin=0).poly == expected
    assert localize(m, config=LocalizationConfig(workers=3)).poly == expected
    assert localize(m, config=LocalizationConfig(fraction_oracle=False)).provenance == ("at-zero", "at-infinity")
    with pytest.raises(ValueError):
        localize(m, margin=-1)


def test_inconsistent_data():
    # a lone point is also the maximum, so it cannot have a positive weight
    with pytest.raises(InconsistentData):
        localize(ManifoldData((point("p", 0, [(1, 1)]),)))
    # valid shape, but the line class on the north pole is wrong: the sum keeps a pole
    bad = ManifoldData((point("south", -1, [(1, 1)]), point("north", 1, [(-1, 1)], line_class=2)))
    with pytest.raises(InconsistentData):
        localize(bad)


def test_every_bundled_space_has_agreeing_windows():
    for record in bundled_records():
        spaces = [record.manifold] + ([record.cut.plus_cut] if record.cut is not None else [])
        for m in spaces:
            q = localize(m)
            assert all(c.denominator == 1 for _, c in q.multiplicities())
            assert all(-m.phi_max <= d <= -m.phi_min for d in q.poly.support())


def test_positive_side_constant_term():
    for m in (sphere(1, 1), sphere(3, 1), cp2_triangle(2), cp2_line(3, 1)):
        assert invariant_part(localize(m)) == constant_term_at_zero(m.positive_part())


# === EVALUATION ===


def test_eval_character():
    q = localize(sphere(1, 1))
    assert eval_character(q, 2) == Fraction(7, 2)
    assert eval_character(q, 1) == 3
    assert eval_character(EquivariantCharacter(LaurentPoly.zero()), "5/3") == 0
    with pytest.raises(DenominatorVanishes):
        eval_character(q, 0)
    with pytest.raises(DenominatorVanishes):
        eval_character(EquivariantCharacter(P({0: 1, 2: 1})), 0)
    with pytest.raises(DenominatorVanishes):
        eval_character(component_fractions(sphere(0, 2)), "0")


@pytest.mark.parametrize("z0", ["2", "-1", "3/2"])
def test_polynomial_and_fraction_evaluation_agree(z0):
    for record in bundled_records():
        m = record.manifold
        if not m.is_point_mode:
            continue
        fractions = component_fractions(m)
        try:
            expected = eval_character(fractions, z0)
        except DenominatorVanishes:
            continue
        assert eval_character(localize(m), z0) == expected


def test_fraction_sum_vanishes_at_roots():
    with pytest.raises(DenominatorVanishes):
        eval_character(component_fractions(sphere(1, 1)), 1)


def test_component_fractions_need_point_mode():
    with pytest.raises(SpecMismatch):
        component_fractions(cp2_line(2, 1))


def test_dual_number_synthetic():
    from loclaurent.datasets.bundled import get_example

    q = localize(get_example("dual-number-synthetic").manifold)
    assert q.poly == P({-1: 2, 0: 2, 1: 2})
    assert q.provenance == ("at-zero", "at-infinity")
