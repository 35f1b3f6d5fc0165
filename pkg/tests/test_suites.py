import json

import pytest

from conering.suites import SUITES, UnknownSuite, merge_sums, run_suite


@pytest.mark.parametrize("name", SUITES)
def test_each_suite_passes_at_small_degree(name):
    report = run_suite(name, 5)
    assert report.passed, report.to_text()
    assert report.checks
    assert all(c.cases > 0 for c in report.checks)


def test_report_text_and_json():
    report = run_suite("simplices", 4)
    text = report.to_text()
    assert "simplices" in text
    data = json.loads(report.to_json())
    assert data["passed"] is True


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope", 3)


def test_negative_bound():
    with pytest.raises(ValueError):
        run_suite("ring-axioms", -1)


def test_merge_sums_constant():
    sums = merge_sums(2, 12)
    assert sums[(1, 1)] == {3}
    assert sums[(2, 2)] == {13}
    assert sums[(1, 2)] == {5}
    assert all(len(v) == 1 for v in sums.values())
