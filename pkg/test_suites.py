import json

import pytest

from collatz_odds.modules.suites import CheckRecord, SUITE_RUNNERS, run_suite


@pytest.mark.parametrize("suite", sorted(SUITE_RUNNERS))
def test_suite_passes_at_small_bounds(suite):
    records = run_suite(suite, 1)
    assert records
    assert [r.name for r in records if not r.passed] == []


def test_all_runs_every_suite_in_order():
    names = [r.name for r in run_suite("all", 1)]
    assert names[0] == "golden_descent"
    assert names[-1] == "estimate_sharpening"
    assert "first_generation_row" in names and "pattern_stability" in names


def test_golden_suite_reports_each_line():
    records = run_suite("golden", 1)
    produced = [r.witness["produced"] for r in records if r.name == "golden_descent"]
    assert produced[1] == "151-[1]-227-[1]-341-[10]-1"
    assert len(produced) == 6


def test_theorems_suite_counts_cycles_per_size():
    cycles = [r for r in run_suite("theorems", 2) if r.name == "cycle_search"]
    assert [r.parameters for r in cycles] == [{"n_odds": 1, "max_total": 12}, {"n_odds": 2, "max_total": 12}]
    assert cycles[1].witness == {"solutions": [{"odds": [1, 1], "m": [2, 2]}]}


def test_check_record_serialises():
    record = CheckRecord("demo", True, {"n": 3}, {"x": 2 ** 65})
    assert json.loads(record.to_record()) == {
        "check": "demo",
        "parameters": {"n": "3"},
        "passed": True,
        "witness": {"x": str(2 ** 65)},
    }


@pytest.mark.slow
def test_theorems_suite_at_acceptance_bounds():
    assert all(r.passed for r in run_suite("theorems", 4))
