"""The argparse front end: flags, reports, exit codes."""

from __future__ import annotations

import json
import pathlib

from semistar.cli import main
from semistar.scenarios import Assertion, Scenario, run_scenario, run_scenarios
from semistar.verdict import SampleSpec


def _domain_file(tmp_path, text) -> str:
    path = tmp_path / "domain.txt"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_expr_evaluation(tmp_path, capsys):
    path = _domain_file(tmp_path, "family=numsgr generators=[3,4,5]")
    code = main(["--domain", path, "--expr", "v(<x^3, x^4> & <x^3, x^5>)"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "<x^3>"


def test_expr_requires_domain(capsys):
    assert main(["--expr", "D"]) == 2
    assert "needs --domain" in capsys.readouterr().err


def test_expr_parse_error(tmp_path, capsys):
    path = _domain_file(tmp_path, "family=numsgr generators=[3,4,5]")
    code = main(["--domain", path, "--expr", "v(<x^3>"])
    assert code == 2
    assert "expected" in capsys.readouterr().err


def test_scenario_report_written(tmp_path, capsys):
    report = tmp_path / "out.json"
    code = main(["--scenario", "numsgr-345", "--format", "json", "--report", str(report)])
    assert code == 0
    rows = json.loads(report.read_text(encoding="utf-8"))
    assert rows and all(r["outcome"] == "PASS" for r in rows)
    assert rows == json.loads(capsys.readouterr().out)


def test_unknown_scenario_raises():
    import pytest

    with pytest.raises(KeyError):
        run_scenarios("missing-scenario", SampleSpec())


def test_failing_assertion_gives_nonzero_exit():
    bogus = Scenario(
        name="synthetic",
        domain_text="family=numsgr generators=[3,4,5]",
        assertions=(
            Assertion(anchor="broken", kind="expr_eq", lhs="<x^3>", rhs="<x^4>"),
        ),
    )
    rows = run_scenario(bogus, SampleSpec())
    assert rows[0]["outcome"] == "FAIL"
    code = 0 if all(r["outcome"] == "PASS" for r in rows) else 1
    assert code == 1


def test_suite_mode(tmp_path, capsys):
    report = tmp_path / "suite.json"
    code = main(["--suite", "--samples", "20", "--format", "json", "--report", str(report)])
    assert code == 0
    rows = json.loads(report.read_text(encoding="utf-8"))
    assert {"instance", "op", "check", "anchor", "outcome", "detail"} <= set(rows[0])
    assert not any(r["outcome"] == "violation" for r in rows)
    capsys.readouterr()


def test_no_arguments_prints_help(capsys):
    assert main([]) == 2
    assert "usage" in capsys.readouterr().out


def test_report_determinism_across_calls():
    spec = SampleSpec(seed=0, count=50)
    _, rows1 = run_scenarios("all", spec)
    _, rows2 = run_scenarios("all", spec)
    assert rows1 == rows2
