import json
import subprocess
import sys
from pathlib import Path

import pytest

from ptdescent.cli import InputError, main, run
from ptdescent.fixtures import fixture_nonassoc
from ptdescent.io import Workspace, emit_workspace

GOLDEN = Path(__file__).parent / "golden"
MACHINE_KEYS = {"command", "verdicts", "witnesses", "inconclusive", "elapsed_ms"}


def machine(argv):
    report = run(argv + ["--format", "machine"])
    return report, json.loads(report.render("machine"))


def without_timing(doc):
    return {k: v for k, v in doc.items() if k != "elapsed_ms"}


def test_s3_counterexample_exit_codes(capsys):
    assert main(["counterexample", "s3", "--modulus", "2"]) == 0
    assert main(["counterexample", "s3", "--modulus", "2", "--expect-none"]) == 0
    assert main(["counterexample", "s3", "--modulus", "2", "--expect-extension"]) == 1
    assert main(["counterexample", "s3", "--modulus", "2", "--expect-unique"]) == 1
    out = capsys.readouterr().out
    assert "PASS         extend_action (oracle) is empty" in out
    assert "FAIL" in out


def test_s3_report_contents():
    report, doc = machine(["counterexample", "s3", "--modulus", "2"])
    assert set(doc) == MACHINE_KEYS and doc["inconclusive"] is False
    details = {v["name"]: v["detail"] for v in doc["verdicts"]}
    assert details["phi(sr2)(1,0,0)"] == "(0,1,0)"
    assert details["phi(rs)(1,0,0)"] == "(0,0,1)"
    (w,) = doc["witnesses"]
    assert w["labels"][-2:] == ["(0,1,0)", "(0,0,1)"]
    assert report.exit_code == 0


def test_machine_report_matches_golden():
    _, doc = machine(["counterexample", "s3", "--modulus", "2"])
    golden = json.loads((GOLDEN / "s3_machine.json").read_text())
    assert without_timing(doc) == without_timing(golden)


def test_reports_are_deterministic():
    argv = ["counterexample", "nonassoc", "--modulus", "2", "--format", "machine"]
    first, second = (run(argv).render("machine") for _ in range(2))
    assert without_timing(json.loads(first)) == without_timing(json.loads(second))
    strip = [json.dumps(without_timing(json.loads(t)), sort_keys=True) for t in (first, second)]
    assert strip[0] == strip[1]


@pytest.mark.parametrize("n", [2, 3, 5])
def test_ring_counterexample(n):
    report, doc = machine(["counterexample", "ring", "--modulus", str(n)])
    assert report.exit_code == 0
    by_name = {v["name"]: v for v in doc["verdicts"]}
    worked = by_name["violation at the worked witness"]
    assert worked["status"] == "pass"
    assert worked["detail"].endswith("(1,0;0,1) vs (1,0;1,1)")


def test_ring_rejects_expectations():
    with pytest.raises(InputError):
        run(["counterexample", "ring", "--expect-none"])


def test_nonassoc_counterexample():
    report, doc = machine(["counterexample", "nonassoc", "--modulus", "2"])
    assert report.exit_code == 0
    names = {v["name"]: v["status"] for v in doc["verdicts"]}
    assert names["UA fails"] == "pass"
    assert names["xi among the extensions"] == names["tau among the extensions"] == "pass"
    w = next(w for w in doc["witnesses"] if w["verdict"] == "xi invalid with associative laws")
    assert w["labels"] == ["z", "z", "1"]


def test_inconclusive_exit_code():
    assert run(["counterexample", "nonassoc", "--bound", "1"]).exit_code == 2


@pytest.mark.parametrize("argv", [
    ["counterexample", "s3", "--modulus", "1"],
    ["validate", "/nonexistent/file.txt"],
    ["counterexample", "teapot"],
    ["sh-check", "--group", "Z99"],
])
def test_input_errors_exit_3(argv, capsys):
    assert main(argv) == 3
    assert capsys.readouterr().err.startswith("error:")


def test_parse_error_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("algebra C2 2\nadd:\n  0 1\n  1 q\n")
    assert main(["validate", str(bad)]) == 3
    assert f"{bad}:4:5:" in capsys.readouterr().err


def test_emit_then_validate(tmp_path):
    out = tmp_path / "a.txt"
    assert run(["counterexample", "nonassoc", "--emit", str(out)]).exit_code == 0
    report = run(["validate", str(out)])
    assert report.exit_code == 0
    assert {v["status"] for v in report.verdicts} == {"pass", "info"}


def test_validate_reports_failures(tmp_path):
    fx = fixture_nonassoc(2)
    ws = Workspace()
    ws.add("algebra", "A", fx.A)
    ws.add("algebra", "X", fx.X)
    ws.add("action", "xi", fx.xi)
    path = tmp_path / "ok.txt"
    path.write_text(emit_workspace(ws))
    assert run(["validate", str(path)]).exit_code == 0
    broken = emit_workspace(ws).replace("laws mul left-distributive right-distributive",
                                        "laws mul left-distributive right-distributive associative")
    assert "associative" in broken
    path.write_text(broken)
    assert run(["validate", str(path)]).exit_code == 1


def test_manifest_ua_check(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("manifest small 3\ngroups C2 C4 S3\nacted C1 C2 C3\n")
    report = run(["ua-check", str(path)])
    assert report.exit_code == 0 and report.verdicts


def test_file_based_extend_and_descent(tmp_path):
    s3 = tmp_path / "s3.txt"
    run(["counterexample", "s3", "--emit", str(s3)])
    ext = run(["extend", str(s3), "--cospan", "cs", "--left", "rho", "--right", "trivial",
               "--expect-none"])
    assert ext.exit_code == 0
    surj = run(["surj-check", str(s3), "--cospan", "cs", "--left", "rho", "--right", "trivial"])
    assert surj.exit_code == 1
    ua = run(["ua-check", str(s3), "--cospan", "cs", "--left", "rho", "--right", "trivial"])
    assert ua.exit_code == 0


def test_identities_subcommand(tmp_path):
    s3 = tmp_path / "s3.txt"
    run(["counterexample", "s3", "--emit", str(s3)])
    ok = "forall x:X y:X a:A . (act a (+ x y)) = (+ (act a x) (act a y))"
    report = run(["identities", str(s3), "--left", "rho", "--right", "trivial", "--identity", ok])
    assert report.exit_code == 0
    bad = "forall x:X a:A . (act a x) = x"
    report = run(["identities", str(s3), "--left", "rho", "--right", "trivial", "--identity", bad])
    assert report.exit_code == 1 and report.witnesses


def test_sh_check_group():
    report = run(["sh-check", "--group", "S3"])
    assert report.exit_code == 0 and len(report.verdicts) == 9


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "ptdescent.cli", "counterexample", "s3",
                           "--expect-none"], capture_output=True, text=True)
    assert proc.returncode == 0 and "sr2 = rs in S3" in proc.stdout
