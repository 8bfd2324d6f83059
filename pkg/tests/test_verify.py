import json

import pytest

from msograph.verify import SUITES, run_suite


def test_all_suites_pass_at_small_knobs():
    knobs = {
        "relativize": {"trials": 30},
        "tc": {"graphs": 5, "between_max_n": 10},
        "word": {"max_n": 1},
        "bichain": {"max_n": 2},
        "split": {"max_n": 3},
        "bpg": {"max_n": 3},
        "power": {"max_n": 12},
        "widths": {},
        "gamma-class": {"max_n": 4},
    }
    assert set(knobs) == set(SUITES)
    for name, kn in knobs.items():
        rep = run_suite(name, **kn)
        failed = [r.id for r in rep.records if not r.passed]
        assert rep.passed, f"{name}: {failed}"


def test_report_json_shape():
    rep = run_suite("split", max_n=2)
    data = json.loads(rep.to_json())
    assert data["suite"] == "split" and data["status"] == "pass"
    for r in data["records"]:
        assert {"id", "parameters", "expected", "observed", "pass",
                "seconds"} <= set(r)
    # records come out sorted by id
    ids = [r["id"] for r in data["records"]]
    assert ids == sorted(ids)


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suite("nope")
