import json
import os
import subprocess
import sys
from fractions import Fraction

from arccontact.cli import main, run_command

from conftest import SCENARIOS

XY = str(SCENARIOS / "ex_xy_z5.scn")
EX1 = str(SCENARIOS / "ex1.scn")
EX2 = str(SCENARIOS / "ex2.scn")


def run_json(*argv):
    report, code = run_command(list(argv) + ["--json"])
    return json.loads(json.dumps(report)), code


def assert_no_floats(obj):
    if isinstance(obj, float):
        raise AssertionError(f"float in report: {obj}")
    if isinstance(obj, dict):
        for v in obj.values():
            assert_no_floats(v)
    if isinstance(obj, list):
        for v in obj:
            assert_no_floats(v)


def test_contact_json_values():
    report, code = run_json("contact", XY, "--arc", "phi")
    assert code == 0 and report["errors"] == []
    rec = report["results"][0]
    assert {k: rec[k] for k in ("ord", "r", "r_bar", "rho", "rho_bar")} == {
        "ord": "1", "r": "2", "r_bar": "2", "rho": 2, "rho_bar": "2"
    }


def test_contact_sharp_arc_rationals():
    report, _ = run_json("contact", XY, "--arc", "sharp")
    assert Fraction(report["results"][0]["r_bar"]) == Fraction(5, 2)
    assert report["results"][0]["r_bar"] == "5/2"


def test_nash_table():
    report, code = run_json("nash", XY, "--arc", "phi")
    rec = report["results"][0]
    assert code == 0 and rec["m"] == [2, 2, 1] and rec["rho"] == 2


def test_isolated_bounded():
    report, code = run_json("isolated", EX1)
    rec = report["results"][0]
    assert code == 0 and rec["verdict"] == "ISOLATED" and rec["Q"] == 3


def test_isolated_unbounded():
    report, code = run_json("isolated", EX2)
    rec = report["results"][0]
    assert rec["verdict"] == "NOT_ISOLATED" and rec["axis"] == "z"
    assert [Fraction(r["r_bar"]) for r in rec["table"]] == [2 * n + 2 for n in range(1, 11)]


def test_family_and_sample_and_closure_and_verify():
    for argv in (
        ["family", EX2, "--family", "phiN"],
        ["family", EX2, "--auto-axis", "z"],
        ["sample", XY, "--cap", "6"],
        ["closure", XY],
        ["verify", XY],
        ["verify", EX2],
    ):
        report, code = run_json(*argv)
        assert code == 0, report
        assert_no_floats(report)


def test_sample_max():
    report, _ = run_json("sample", XY, "--cap", "12")
    assert report["results"][0]["max_observed"] == "5/2"


def test_usage_errors_exit_1(tmp_path):
    assert run_command(["bogus"])[1] == 1
    assert run_command(["contact", XY])[1] == 1
    assert run_command(["contact", XY, "--arc", "nope"])[1] == 1
    assert run_command(["contact", str(tmp_path / "missing.scn"), "--arc", "a"])[1] == 1
    bad = tmp_path / "bad.scn"
    bad.write_text("vars x\npoly f = x +\n")
    report, code = run_command(["closure", str(bad)])
    assert code == 1 and report["errors"][0]["error"] == "ParseError"


def test_domain_errors_exit_2(tmp_path):
    off = tmp_path / "off.scn"
    off.write_text("vars x y z\npoly f = x*y - z^5\narc a : x -> t, y -> t, z -> t\n")
    report, code = run_command(["contact", str(off), "--arc", "a"])
    assert code == 2 and report["errors"][0]["error"] == "ArcNotOnVariety"
    inside = tmp_path / "inside.scn"
    inside.write_text("vars x y z\npoly f = x*y\narc a : z -> t\n")
    report, code = run_command(["nash", str(inside), "--arc", "a"])
    assert code == 2 and report["errors"][0]["error"] == "ArcInMaxMult"
    steps = tmp_path / "steps.scn"
    steps.write_text("vars x y z\npoly f = x*y - z^5\narc a : x -> t^9, y -> t^11, z -> t^4\nset max_steps 2\n")
    report, code = run_command(["contact", str(steps), "--arc", "a"])
    assert code == 2 and report["errors"][0]["error"] == "MaxStepsExceeded"
    assert report["errors"][0]["partial_m"] == [2, 2, 2]
    report, code = run_command(["nash", str(steps), "--arc", "a"])
    assert code == 0 and report["results"][0]["terminated"] == "MaxSteps"
    assert report["results"][0]["rho"] is None


def test_graph_coordinate_name_avoids_user_variables(tmp_path):
    sc = tmp_path / "w.scn"
    sc.write_text("vars x y w\npoly f = x*y - w^5\narc a : x -> t^3, y -> t^2, w -> t\n")
    report, code = run_command(["nash", str(sc), "--arc", "a"])
    assert code == 0 and report["results"][0]["steps"][0]["chart"] == "w"
    assert report["results"][0]["steps"][0]["strict_transform"] == "-w^3 + x*y"


def test_json_round_trip_and_determinism():
    first = subprocess.run([sys.executable, "-m", "arccontact", "isolated", EX2, "--json"], capture_output=True, text=True)
    second = subprocess.run([sys.executable, "-m", "arccontact", "isolated", EX2, "--json", "--seed", "7"], capture_output=True, text=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    parsed = json.loads(first.stdout)
    assert json.loads(json.dumps(parsed)) == parsed
    assert set(parsed) == {"command", "scenario", "results", "errors"}


def test_precision_environment_override(tmp_path):
    arc = tmp_path / "trunc.scn"
    arc.write_text("vars x y z\npoly f = x*y - z^5\narc a : x -> t^3, y -> t^2, z -> t\n")
    env = dict(os.environ, ARC_CONTACT_PREC="16")
    out = subprocess.run([sys.executable, "-m", "arccontact", "contact", str(arc), "--arc", "a", "--json"], capture_output=True, text=True, env=env)
    assert out.returncode == 0 and json.loads(out.stdout)["results"][0]["r"] == "2"
    probe = subprocess.run(
        [sys.executable, "-c", "from arccontact import series; print(series.default_precision())"],
        capture_output=True, text=True, env=env,
    )
    assert probe.stdout.strip() == "16"


def test_main_text_output(capsys):
    assert main(["nash", XY, "--arc", "phi"]) == 0
    out = capsys.readouterr().out
    assert "[2, 2, 1]" in out and "rho" in out


def test_main_prints_json(capsys):
    assert main(["contact", XY, "--arc", "phi", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["command"] == "contact"


def test_help_exit_codes(capsys):
    assert main([]) == 1
    assert main(["--help"]) == 0
