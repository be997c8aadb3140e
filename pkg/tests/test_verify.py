import pytest

from otl import ValidationError
from otl.verify import (
    Report,
    check_bellman,
    check_example21,
    check_no_averaging,
    check_price,
    run_all,
)


class TestReport:
    def test_overall_is_conjunction(self):
        rep = Report(suite="demo")
        rep.add("a", True)
        rep.add("b", True)
        assert rep.overall
        rep.add("c", False)
        assert not rep.overall

    def test_informational_cases_do_not_count(self):
        rep = Report(suite="demo")
        rep.add("a", True)
        rep.add("note", False, informational=True)
        assert rep.overall

    def test_dict_schema(self):
        rep = check_price(max_horizon=3)
        doc = rep.to_dict()
        assert set(doc) == {"suite", "cases", "overall"}
        assert all({"description", "passed", "informational", "measured"} <= set(c) for c in doc["cases"])

    def test_render_mentions_outcome(self):
        text = check_price(max_horizon=2).render()
        assert "overall: PASS" in text


class TestCheckers:
    def test_bellman_suite_passes(self):
        rep = check_bellman(max_horizon=5)
        assert rep.overall
        # T = 0 rows are the trivial terminal condition
        assert any("T=0" in c.description for c in rep.cases)

    def test_example21_suite_passes(self):
        assert check_example21().overall

    def test_example21_rejects_half(self):
        with pytest.raises(ValidationError):
            check_example21(q_grid=[0.5])

    def test_averaging_suite_passes(self):
        rep = check_no_averaging()
        assert rep.overall

    def test_averaging_reports_bayes_contrast(self):
        rep = check_no_averaging(q_grid=[0.6], tick_scales=[1.0], horizons=[1])
        info = [c for c in rep.cases if c.informational]
        assert len(info) == 1
        assert info[0].measured["posterior_predictive"] == pytest.approx(6 / 11)

    def test_averaging_gap_formula(self):
        rep = check_no_averaging(q_grid=[0.51], tick_scales=[1.0, 10.0], horizons=[1])
        gaps = [c.measured["gap"] for c in rep.cases if not c.informational]
        assert gaps[0] == pytest.approx(20 * (0.51 - 0.5))
        assert gaps[1] == pytest.approx(200 * (0.51 - 0.5))

    def test_price_suite_passes(self):
        assert check_price().overall

    def test_run_all_covers_every_suite(self):
        reports = run_all()
        assert {r.suite for r in reports} == {"bellman", "example21", "averaging", "price"}
        assert all(r.overall for r in reports)

    def test_checkers_are_deterministic(self):
        a = check_bellman(max_horizon=4).to_dict()
        b = check_bellman(max_horizon=4).to_dict()
        assert a == b
