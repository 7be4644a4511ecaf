import json

import pytest

from mwarrangements import GF, QQ, ArrangementError
from mwarrangements.harness import SUITES, VerifyReport, minimize, random_arrangement, replay, run_suite


def test_random_arrangement_deterministic():
    a = random_arrangement(1, GF(7), 2, 3)
    assert a == random_arrangement(1, GF(7), 2, 3)
    assert len(a) == 3


def test_empty_and_too_many():
    assert len(random_arrangement(0, GF(5), 2, 0)) == 0
    with pytest.raises(ArrangementError):
        random_arrangement(0, GF(3), 1, 5)
    assert len(random_arrangement(0, GF(3), 1, 3)) == 3


def test_random_over_q():
    a = random_arrangement(3, QQ, 3, 5)
    assert len(a) == 5 and a.field == QQ


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suites_pass(suite):
    report = run_suite(suite, 8)
    assert report.ok, report.to_text()
    assert report.cases == 8


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", 1)


def test_report_formats():
    r = run_suite("rank-triple", 3)
    data = json.loads(r.to_json())
    assert data["suite"] == "rank-triple" and data["failures"] == []
    assert "0 failures" in r.to_text()


def test_failure_minimization_and_replay(monkeypatch):
    # a deliberately broken check: fails whenever there are two hyperplanes or more
    def check(arr, rng):
        assert len(arr) < 2, "too many"

    monkeypatch.setitem(SUITES, "broken", check)
    report = run_suite("broken", [4, 5])
    assert not report.ok
    f = report.failures[0]
    assert len(f.minimized["hyperplanes"]) == 2
    with pytest.raises(AssertionError):
        replay("broken", f.arrangement, f.seed)
    assert "minimized" in report.to_text()
