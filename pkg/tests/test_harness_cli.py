import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from qagm import cli, harness

SMALL = """
[suite]
suite = classical
seed = 7

[classical]
agm_k = 0.5, 0.9
coefficient_k_max = 3
identity2_m_max = 3
derivative_n = 0, 1
"""


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.ini"
    path.write_text(SMALL)
    return str(path)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_number():
    assert harness.parse_number("-1/2") == Fraction(-1, 2)
    assert harness.parse_number("0.95") == Fraction(19, 20)
    assert harness.parse_number("1/2+2i") == (Fraction(1, 2), Fraction(2))
    assert harness.parse_number("-3j") == (Fraction(0), Fraction(-3))
    with pytest.raises(harness.ConfigError):
        harness.parse_number("two")


def test_config_layers(small_config, monkeypatch):
    cfg = harness.load_config(small_config, {"seed": 11})
    assert cfg.suite == "classical" and cfg.seed == 11 and cfg.agm_k == ("0.5", "0.9")
    monkeypatch.setenv(harness.CONFIG_ENV, small_config)
    assert harness.load_config().coefficient_k_max == 3


@pytest.mark.parametrize("body", ["[a]\nnot_a_key = 1\n", "[a]\nqsum_q = 1.5\n", "[a]\nprecision = many\n",
                                  "no section header\n", "[a]\nsuite = everything\n"])
def test_malformed_config_exits_2(tmp_path, capsys, body):
    path = tmp_path / "bad.ini"
    path.write_text(body)
    code, _, err = run(["verify", "--config", str(path)], capsys)
    assert code == 2 and "config error" in err


def test_missing_config_file(capsys):
    assert run(["verify", "--config", "/nonexistent.ini"], capsys)[0] == 2


def test_json_records(small_config, capsys):
    code, out, _ = run(["verify", "--config", small_config], capsys)
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    recs, summary = lines[:-1], lines[-1]["summary"]
    assert all(tuple(r) == harness.RECORD_FIELDS for r in recs)
    assert summary["cases"] == len(recs) and summary["passed"]
    assert all(r["seed"] == 7 for r in recs)
    keys = [r["case"] for r in recs]
    assert keys == sorted(keys)


def test_details_flag(small_config, capsys):
    _, out, _ = run(["verify", "--config", small_config, "--details"], capsys)
    first = json.loads(out.splitlines()[0])
    assert "details" in first


def test_csv_output(small_config, capsys, tmp_path):
    target = tmp_path / "out.csv"
    code, out, _ = run(["verify", "--config", small_config, "--format", "csv", "-o", str(target)], capsys)
    assert code == 0 and out == ""
    rows = list(csv.DictReader(io.StringIO(target.read_text())))
    assert rows and set(rows[0]) == set(harness.RECORD_FIELDS)


def test_jobs_do_not_change_output(small_config, capsys):
    _, one, _ = run(["verify", "--config", small_config, "--jobs", "1"], capsys)
    _, three, _ = run(["verify", "--config", small_config, "--jobs", "3"], capsys)
    assert harness.strip_timing(one) == harness.strip_timing(three)


def test_exit_code_follows_status(tmp_path):
    path = tmp_path / "tiny.ini"
    path.write_text("[r]\nsuite = reconcile\nk3_grid = 3\nk3_restarts = 0\ntrial_max = 2\n")
    cfg = harness.load_config(str(path))
    results = harness.run_suite(cfg)
    assert harness.exit_code(results) == 0
    failing = [(c, harness.VerificationReport("x", {}, "fail")) for c, _ in results[:1]]
    assert harness.exit_code(failing) == 1


def test_expected_errors_become_failed_records():
    rep = harness._execute(lambda: harness.qint.qint_rhs(-1, harness.QContext(q="0.5")))
    assert rep.status == "fail" and "DomainError" in rep.witness


def test_micro_cases_exclude_printed_variant():
    names = {name for name, _ in harness.micro_identity_cases(2)}
    assert "qsum_step_as_printed" not in names and "qint_step" in names


def test_random_points_follow_seed():
    a = harness._random_points(harness.load_config(None, {"seed": 5}), -1.5, 1.5)
    b = harness._random_points(harness.load_config(None, {"seed": 5}), -1.5, 1.5)
    c = harness._random_points(harness.load_config(None, {"seed": 6}), -1.5, 1.5)
    assert a == b != c


@pytest.mark.parametrize("argv,expected", [
    (["eval", "agm", "1", "1"], "1.0"),
    (["eval", "C1", "--q", "0.5"], "3.79553279466448547452"),
    (["eval", "F", "--x", "0.5"], "1.18034059901609622604"),
    (["eval", "one_plus_sinpi", "1/2", "--q", "0.9"], "2.0"),
    (["eval", "qsum_lhs", "1/2+2i", "--q", "0.8"], "(31.296961830525"),
])
def test_eval(argv, expected, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0 and out.startswith(expected)


def test_eval_json(capsys):
    code, out, _ = run(["eval", "I", "1/4", "6", "--q", "1", "--format", "json"], capsys)
    rec = json.loads(out)
    assert code == 0 and rec["function"] == "I" and rec["q"] == "1"


@pytest.mark.parametrize("argv", [["eval", "qint_rhs", "-1"], ["eval", "nope"], ["eval", "agm", "1"],
                                  ["eval", "C1", "--q", "1"], ["bogus"]])
def test_eval_errors_exit_2(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_limits_command(capsys):
    code, out, _ = run(["limits", "C3_squared", "--steps", "3"], capsys)
    assert code == 0 and "status: numeric-pass" in out


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qagm.cli", "eval", "agm", "2", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("2.0")
