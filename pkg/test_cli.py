import json

import pytest
from click.testing import CliRunner

from cli import cli
from collatz_odds.config import RunConfig
from collatz_odds.errors import InvalidArgumentError
from collatz_odds.main import run


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, [str(a) for a in args])


def test_run_descend():
    result = run(RunConfig("descend", {"inputs": (151,)}))
    assert (result.exit_code, result.lines, result.notes) == (0, ["151-[1]-227-[1]-341-[10]-1"], [])


def test_run_reports_precondition_failures():
    result = run(RunConfig("ascend", {"x0": 9}))
    assert result.exit_code == 2
    assert result.lines == []
    assert result.notes[0].startswith("Error: terminal number")


def test_run_config_validation():
    with pytest.raises(InvalidArgumentError):
        RunConfig("descend", {}, step_limit=0)
    with pytest.raises(InvalidArgumentError):
        RunConfig("plot")
    with pytest.raises(InvalidArgumentError):
        RunConfig("range", output_format="xml")
    with pytest.raises(TypeError):
        RunConfig("descend", {"inputs": (3,)}).parameters["inputs"] = (5,)


def test_descend_text(runner):
    result = invoke(runner, "descend", 151)
    assert result.exit_code == 0
    assert result.stdout == "151-[1]-227-[1]-341-[10]-1\n"
    assert result.stderr == ""


def test_descend_records(runner):
    result = invoke(runner, "descend", 3, 113, "--format", "records")
    assert result.exit_code == 0
    first, second = [json.loads(line) for line in result.stdout.splitlines()]
    assert first == {"input": "3", "steps": "2", "halvings": ["1", "4"], "b_n": "5", "resolved": True, "odds": ["3", "5", "1"]}
    assert second["halvings"] == ["2", "8"]


def test_descend_big_literal(runner):
    x = 2 ** 100 - 1
    result = invoke(runner, "descend", x, "--limit", 1)
    assert result.exit_code == 0
    assert result.stdout == f"{x}-[1]-{(3 * x + 1) // 2}\n"
    assert result.stderr == f"note: descent of {x} unresolved after 1 steps\n"


@pytest.mark.parametrize("args, message", [
    (("descend", 4), "must be odd"),
    (("descend", 0), "must be positive"),
    (("ascend", 9), "terminal number"),
    (("ascend", 5, "--schedule", "1,2"), "terminal reached mid-schedule"),
    (("ascend", 1, "--schedule", "2,3"), "parity violation at step 1"),
    (("tree", 9, "--generations", 1, "--children", 2), "terminal root"),
    (("descend", 151, "--format", "table"), "has no table output"),
])
def test_precondition_errors_exit_2(runner, args, message):
    result = invoke(runner, *args)
    assert result.exit_code == 2
    assert result.stdout == ""
    assert result.stderr.startswith("Error:") and message in result.stderr


@pytest.mark.parametrize("args", [("descend", "12x"), ("descend", "-3"), ("range", 1), ("ascend", 1, "--schedule", "2,,2")])
def test_usage_errors_exit_2(runner, args):
    result = invoke(runner, *args)
    assert result.exit_code == 2
    assert result.stdout == ""
    assert result.stderr


@pytest.mark.parametrize("x0, rows", [
    (1, [(2, 1, 1), (4, 5, -1), (6, 21, 0), (8, 85, 1), (10, 341, -1), (12, 1365, 0)]),
    (5, [(1, 3, 0), (3, 13, 1), (5, 53, -1), (7, 213, 0), (9, 853, 1), (11, 3413, -1)]),
])
def test_ascend_table_matches_first_generation_tables(runner, x0, rows):
    result = invoke(runner, "ascend", x0, "--format", "table")
    assert result.exit_code == 0
    header, *body = result.stdout.splitlines()
    assert header.split() == ["x0", "m", "x1", "mod3"]
    assert [tuple(map(int, line.split())) for line in body] == [(x0,) + row for row in rows]


def test_ascend_schedule(runner):
    result = invoke(runner, "ascend", 53, "--schedule", "1,1,1")
    assert result.stdout == "53-(1)-35-(1)-23-(1)-15\n"
    result = invoke(runner, "ascend", 5, "--count", 2)
    assert result.stdout == "5-(1)-3\n5-(3)-13\n"


def test_tree(runner):
    result = invoke(runner, "tree", 5, "--generations", 2, "--children", 3)
    lines = result.stdout.splitlines()
    assert result.exit_code == 0
    assert lines[0] == "5"
    assert lines[1] == "  (1) 3 *"
    assert lines[-1] == "nodes per generation: 1 3 6 (total 10)"


def test_tree_deep_narrow(runner):
    result = invoke(runner, "tree", 1, "--generations", 2000, "--children", 1)
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert len(lines) == 2002
    assert lines[-2] == "  " * 2000 + "(2) 1"
    assert lines[-1] == f"nodes per generation: {' '.join(['1'] * 2001)} (total 2001)"


def test_pattern_and_primitive(runner):
    assert invoke(runner, "pattern", 151).stdout == "151 [1,1,10] n=3 b_n=12 family 151 (mod 8192)\n"
    assert invoke(runner, "primitive", 2, 1).stdout == "primitive set n=2 x0=1: {1,5,3,13,17,15,7,11,9} (mod 18)\n"
    table = invoke(runner, "primitive", 1, 5, "--format", "table").stdout.splitlines()
    assert [line.split() for line in table[1:]] == [["1", "3"], ["3", "1"], ["5", "5"]]


def test_cycles(runner):
    result = invoke(runner, "cycles", "--odds", 2, "--max-total", 12)
    assert result.exit_code == 0
    assert result.stdout == "x=[1,1] m=[2,2]\n"


def test_verify_golden(runner):
    result = invoke(runner, "verify", "--suite", "golden")
    assert result.exit_code == 0
    assert result.stdout.splitlines()[-1] == "12 check(s), 0 failed"
    assert result.stderr == ""


def test_estimate(runner):
    result = invoke(runner, "estimate", 26512143)
    assert result.exit_code == 0
    assert "predicted_x_n: 26512143.8" in result.stdout.splitlines()
    assert "b_n: 31" in result.stdout.splitlines()


def test_estimate_origin_uses_trivial_cycle(runner):
    result = invoke(runner, "estimate", 1)
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[:4] == ["x_n: 1", "x_0: 1", "n: 1", "b_n: 2"]
    assert "predicted_x0: 0.75" in lines
    assert result.stderr == ""


def test_range_exit_codes(runner):
    ok = invoke(runner, "range", 1, 999)
    assert ok.exit_code == 0
    assert "resolved: 500" in ok.stdout.splitlines()
    partial = invoke(runner, "range", 25, 29, "--limit", 10)
    assert partial.exit_code == 1
    assert "unresolved: 27" in partial.stdout.splitlines()
    assert "WARNING - 1 input(s) unresolved after 10 steps" in partial.stderr


def test_records_are_deterministic_across_threads(runner):
    serial = invoke(runner, "range", 1, 4001, "--format", "records")
    parallel = invoke(runner, "range", 1, 4001, "--format", "records", "--threads", 4)
    assert serial.exit_code == parallel.exit_code == 0
    assert serial.stdout == parallel.stdout
    assert json.loads(serial.stdout)["count"] == "2001"


def test_verbose_flag_is_accepted(runner):
    result = runner.invoke(cli, ["-v", "descend", "3"])
    assert result.exit_code == 0
    assert "3-[1]-5-[4]-1" in result.stdout
