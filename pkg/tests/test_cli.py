import json
import os

import pytest

from qhopf.cli import (
    EXIT_CONFIG,
    EXIT_FAIL,
    EXIT_FALSIFIED,
    EXIT_OK,
    SUITES,
    SUITE_RUNNERS,
    _record,
    main,
)


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_every_suite_has_a_runner():
    assert set(SUITES) == set(SUITE_RUNNERS)


def test_record_verdicts():
    assert _record("qt-axioms", "x", True)["verdict"] == "pass"
    assert _record("qt-axioms", "x", False)["verdict"] == "fail"
    assert _record("moebius", "x", False)["verdict"] == "falsified"


def test_eval_normalize(capsys):
    code, out, _ = run_cli(
        ["eval", "--preset", "abelian", "--order", "2", "normalize", "y*x"],
        capsys)
    assert code == EXIT_OK
    assert out.strip() == "x*y"


def test_eval_delta_n(capsys):
    code, out, _ = run_cli(
        ["eval", "--preset", "abelian", "--order", "3",
         "delta-n", "h^2 * x * y", "--n", "2"], capsys)
    assert code == EXIT_OK
    assert out.strip() == "h^2 * y # x + h^2 * x # y"


def test_eval_gate_pass_and_fail(capsys):
    code, out, _ = run_cli(
        ["eval", "--preset", "abelian", "--order", "2", "gate", "h*x"],
        capsys)
    assert code == EXIT_OK and "gate pass" in out
    code, out, _ = run_cli(
        ["eval", "--preset", "abelian", "--order", "2", "gate", "x"],
        capsys)
    assert code == EXIT_FAIL and "gate fail" in out


def test_eval_parse_error_is_config_exit(capsys):
    code, _, err = run_cli(
        ["eval", "--preset", "abelian", "--order", "2", "normalize", "q"],
        capsys)
    assert code == EXIT_CONFIG
    assert "error:" in err


def test_run_unknown_suite(capsys):
    code, _, err = run_cli(
        ["run", "--preset", "trivial", "--order", "2", "--suite", "nope"],
        capsys)
    assert code == EXIT_CONFIG
    assert "unknown suites" in err


def test_run_missing_presentation_file(capsys):
    code, _, err = run_cli(
        ["run", "--presentation", "/nonexistent.json", "--suite", "binomial"],
        capsys)
    assert code == EXIT_CONFIG


def test_run_writes_report(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run_cli(
        ["run", "--preset", "trivial", "--order", "2",
         "--suite", "binomial,hopf-axioms", "--seed", "3",
         "--report", str(path)], capsys)
    assert code == EXIT_OK
    assert out == ""
    report = json.loads(path.read_text())
    assert report["summary"]["fail"] == 0
    assert report["summary"]["falsified"] == 0
    assert report["summary"]["pass"] == len(report["checks"]) > 0
    assert report["config"]["suites"] == ["binomial", "hopf-axioms"]
    assert report["exit_code"] == EXIT_OK
    assert "elapsed_seconds" not in report


def test_run_timings_flag_adds_wall_clock(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, _, _ = run_cli(
        ["run", "--preset", "trivial", "--order", "2",
         "--suite", "binomial", "--timings", "--report", str(path)], capsys)
    assert code == EXIT_OK
    assert "elapsed_seconds" in json.loads(path.read_text())


def test_run_reports_are_byte_identical(tmp_path, capsys):
    args = ["run", "--preset", "trivial", "--order", "2",
            "--suite", "binomial,moebius,delta-consistency", "--seed", "7"]
    first = run_cli(args + ["--report", str(tmp_path / "a.json")], capsys)
    second = run_cli(args + ["--report", str(tmp_path / "b.json")], capsys)
    assert first[0] == second[0] == EXIT_OK
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_run_threaded_report_matches_serial(tmp_path, capsys, monkeypatch):
    args = ["run", "--preset", "trivial", "--order", "2",
            "--suite", "binomial,hopf-axioms,moebius", "--seed", "5"]
    run_cli(args + ["--report", str(tmp_path / "serial.json")], capsys)
    monkeypatch.setenv("QHOPF_THREADS", "3")
    run_cli(args + ["--report", str(tmp_path / "threaded.json")], capsys)
    assert (tmp_path / "serial.json").read_bytes() == \
        (tmp_path / "threaded.json").read_bytes()


def test_run_stdout_report_is_json(capsys):
    code, out, _ = run_cli(
        ["run", "--preset", "trivial", "--order", "2", "--suite", "binomial"],
        capsys)
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["config"]["preset"] == "trivial"
