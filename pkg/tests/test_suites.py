import json

import pytest

import gleafkit.suites as su
from gleafkit.errors import DomainError, ValidationError
from gleafkit.metric import MetricCompository


def test_config_validation():
    with pytest.raises(ValidationError):
        su.SuiteConfig("nope")
    with pytest.raises(ValidationError):
        su.SuiteConfig("metric", dims=9)
    with pytest.raises(ValidationError):
        su.SuiteConfig.from_json({"instance": "metric", "colour": "red"})
    cfg = su.SuiteConfig.from_json({"instance": "spans", "mode": "gleaf", "dims": 1})
    assert su.SuiteConfig.from_json(cfg.to_json()) == cfg


def test_relational_has_no_compository_form():
    with pytest.raises(ValidationError):
        su.run_suite(su.SuiteConfig("relational", mode="compository"))


def test_small_runs_are_deterministic():
    cfg = su.SuiteConfig("metric", mode="both", samples=12, seed=5, dims=2)
    one = json.dumps(su.run_suite(cfg).to_json())
    two = json.dumps(su.run_suite(cfg).to_json())
    assert one == two and json.loads(one)["ok"]


def test_threads_do_not_change_the_report(monkeypatch):
    cfg = su.SuiteConfig("probability", mode="compository", samples=30, seed=2, dims=2)
    monkeypatch.setenv("GLEAFKIT_THREADS", "1")
    serial = su.run_suite(cfg).to_json()
    monkeypatch.setenv("GLEAFKIT_THREADS", "4")
    assert su.run_suite(cfg).to_json() == serial
    monkeypatch.setenv("GLEAFKIT_THREADS", "many")
    with pytest.raises(ValidationError):
        su.thread_count()


def test_recorder_keeps_a_bounded_number_of_failures():
    rec = su.Recorder("x", ["law"])
    for i in range(su.MAX_FAILURES_KEPT + 5):
        rec.check("law", lambda i=i: [("eq", i, -1)], lambda i=i: {"i": i})
    res = rec.results["law"]
    assert res.failure_count == su.MAX_FAILURES_KEPT + 5
    assert len(res.failures) == su.MAX_FAILURES_KEPT


def test_recorder_counts_exceptions_as_failures():
    rec = su.Recorder("x", ["law"])

    def boom():
        raise DomainError("bad index")
        yield

    rec.check("law", boom, lambda: {})
    assert rec.results["law"].failures[0]["equation"] == "raised DomainError"


def test_facenot_scan_finds_metric_violation():
    c = MetricCompository()
    scan = su.facenot_scan(c, su.random_pairs(c, 1000, 4, 0, "facenot"), stop_at_first=True)
    assert scan.first_violation is not None and not scan.all_hold


def test_gleaf_suite_on_small_topologies():
    report = su.run_suite(su.SuiteConfig("topology", mode="gleaf", dims=2))
    assert report.ok and {r.law for r in report.results} == set(su.GLEAF_LAWS)
