import logging
from dataclasses import replace

import pytest

from loclaurent.configs import LocLaurentConfig
from loclaurent.datasets.bundled import bundled_records, cp2_triangle, get_example, sphere
from loclaurent.errors import PreconditionViolated
from loclaurent.localization import FixedComponent, ManifoldData, NormalSummand
from loclaurent.verification import (
    CheckStatus,
    CutTriple,
    check_prop1,
    check_prop2,
    check_reduction,
    positive_data,
    run_check,
)
from loclaurent.verification.suite import ExampleRecord, check_example, run_example_suite


def test_prop1_on_a_single_space():
    report = check_prop1(sphere(1, 1))
    assert report.status is CheckStatus.PASS
    assert [r.left for r in report.rows] == [1, 1]


def test_prop1_compares_spaces_with_the_same_positive_side():
    assert positive_data(sphere(1, 1)) == positive_data(sphere(3, 1))
    report = check_prop1(sphere(1, 1), sphere(3, 1))
    assert report.status is CheckStatus.PASS
    assert report.rows[-1].name == "Q(M)^S1 = Q(N)^S1"
    assert report.rows[-1].status is CheckStatus.PASS


def test_prop1_skips_the_comparison_for_different_positive_sides():
    report = check_prop1(sphere(1, 1), sphere(1, 2))
    assert report.rows[-1].status is CheckStatus.SKIPPED
    assert report.passed


def test_prop1_precondition():
    with pytest.raises(PreconditionViolated):
        check_prop1(sphere(2, 0))
    report = run_check(check_prop1, "prop1", sphere(2, 0))
    assert report.status is CheckStatus.PRECONDITION
    assert not report.passed


def test_prop2():
    report = check_prop2(sphere(0, 2))
    assert report.status is CheckStatus.PASS
    assert (report.rows[0].left, report.rows[0].right) == (1, 1)
    assert report.rows[1].left == 0


def test_prop2_on_a_point_with_a_scaled_line_class():
    m = ManifoldData((FixedComponent.point("pt", 0, line_class=5),))
    report = check_prop2(m)
    assert report.status is CheckStatus.PASS
    assert report.rows[0].left == 5


def test_prop2_precondition():
    with pytest.raises(PreconditionViolated):
        check_prop2(sphere(1, 1))


def test_prop2_on_cp2_triangle():
    assert check_prop2(cp2_triangle(4)).status is CheckStatus.PASS


@pytest.mark.parametrize("name", ["sphere(1,1)-cut", "sphere(2,2)-cut", "cp2-line-cut"])
def test_reduction_on_bundled_cuts(name):
    cut = get_example(name).cut
    report = check_reduction(cut)
    assert report.status is CheckStatus.PASS
    assert len(report.rows) == 3
    assert all(r.left == cut.reduced_quantization for r in report.rows[1:])


def test_reduction_detects_a_wrong_reduced_quantization():
    cut = replace(get_example("sphere(1,1)-cut").cut, reduced_quantization=2)
    report = check_reduction(cut)
    assert report.status is CheckStatus.FAIL
    assert [r.status for r in report.rows] == [CheckStatus.PASS, CheckStatus.FAIL, CheckStatus.FAIL]


def test_reduction_preconditions():
    cut = get_example("sphere(1,1)-cut").cut
    with pytest.raises(PreconditionViolated):
        check_reduction(replace(cut, free_on_zero_level=False))
    with pytest.raises(PreconditionViolated):
        check_reduction(replace(cut, plus_cut=sphere(1, 2)))
    bad_minus = ManifoldData((FixedComponent.point("p", 0, [(0, 1)]),))
    with pytest.raises(PreconditionViolated):
        check_reduction(replace(cut, minus_cut=bad_minus))


def test_suite_passes_on_bundled_examples():
    summary = run_example_suite()
    assert summary.passed, [(r.name, r.error) for r in summary.failures]
    names = [r.name for r in summary.results]
    assert names == sorted(names)
    assert len(names) == len(bundled_records())


def test_suite_surfaces_a_corrupted_example():
    record = get_example("sphere(1,1)")
    south, north = record.manifold.components
    corrupted = replace(north, normal=north.normal + (NormalSummand.point(0, 1),))
    result = check_example(replace(record, data=ManifoldData((south, corrupted))))
    assert not result.passed
    assert result.checks[0].status is CheckStatus.FAIL


def test_suite_surfaces_a_wrong_expectation():
    record = replace(get_example("sphere(1,1)"), expected_invariant=2)
    result = check_example(record)
    assert not result.passed
    assert result.error is None


def test_empty_suite_warns(caplog):
    with caplog.at_level(logging.WARNING):
        summary = run_example_suite([])
    assert summary.passed
    assert summary.results == []
    assert "0 examples" in caplog.text


def test_suite_with_progress_bar():
    config = LocLaurentConfig.update(LocLaurentConfig(), {"verification.show_progress": True})
    summary = run_example_suite([get_example("point-space")], config)
    assert summary.passed


def test_example_record_views():
    record = ExampleRecord("x", CutTriple(sphere(1, 1), sphere(1, 1), 1))
    assert record.manifold is record.cut.original
    assert ExampleRecord("y", sphere(1, 1)).cut is None
