"""End-to-end tests for the command-line front end."""

from __future__ import annotations

import hashlib
import json

import pytest

from logsurf.cli import (
    BUILTIN_CHECKSUMS,
    Report,
    builtin_scenario_text,
    main,
    run_scenario,
)

FORK_GRAPH = """\
E0 2
A1 3
B1 2
B2 2
C1 2
C2 2
E0 -- A1
E0 -- B1
B1 -- B2
E0 -- C1
C1 -- C2
"""

TINY_SCENARIO = {
    "name": "tiny",
    "recipe": {"lines": 2, "steps": []},
    "divisors": {"D": {"L0": "1"}},
    "checks": [{"kind": "volume", "divisor": "D", "expect": "1"}],
}


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- scenarios ----------------------------------------------------------------


def test_builtin_scenarios_pass(capsys):
    for name in ("ex-462", "ex-825"):
        code, out, _ = run(capsys, "scenario", name)
        assert code == 0, out
        assert "FAIL" not in out


def test_builtin_checksums_guard_drift():
    for name, expected in BUILTIN_CHECKSUMS.items():
        text = builtin_scenario_text(name)
        assert hashlib.sha256(text.encode("utf-8")).hexdigest() == expected


def test_scenario_from_path_and_exit_codes(tmp_path, capsys):
    good = tmp_path / "tiny.json"
    good.write_text(json.dumps(TINY_SCENARIO))
    code, out, _ = run(capsys, "scenario", str(good))
    assert code == 0
    assert "volume = 1" in out

    bad = dict(TINY_SCENARIO)
    bad["checks"] = [{"kind": "volume", "divisor": "D", "expect": "2"}]
    failing = tmp_path / "failing.json"
    failing.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "scenario", str(failing))
    assert code == 1
    assert "FAIL" in out and "expected 2" in out


def test_scenario_input_errors(tmp_path, capsys):
    code, _, err = run(capsys, "scenario", "no-such-scenario")
    assert code == 2
    assert "neither a built-in scenario" in err

    broken = tmp_path / "broken.json"
    broken.write_text('{"recipe": ')
    code, _, err = run(capsys, "scenario", str(broken))
    assert code == 2
    assert "line 1" in err  # position comes from the JSON parser

    unknown_kind = tmp_path / "unknown.json"
    unknown_kind.write_text(
        json.dumps({**TINY_SCENARIO, "checks": [{"kind": "frobnicate"}]})
    )
    code, _, err = run(capsys, "scenario", str(unknown_kind))
    assert code == 2
    assert "frobnicate" in err


def test_json_report_round_trips(capsys):
    code, out, _ = run(capsys, "scenario", "ex-825", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] is True
    assert Report.from_json(obj).to_json() == obj


def test_run_scenario_records_have_timing():
    report = run_scenario("ex-462")
    assert report.passed
    assert {r.kind for r in report.records} == {
        "volume",
        "zariski",
        "pet",
        "germ",
        "contraction",
    }
    assert all(r.seconds >= 0 for r in report.records)
    for r in report.records:
        json.dumps(r.to_json())  # every record serializes


# --- germ command ---------------------------------------------------------


def test_germ_fork_verdict(tmp_path, capsys):
    f = tmp_path / "fork.graph"
    f.write_text(FORK_GRAPH)
    code, out, _ = run(capsys, "germ", str(f))
    assert code == 0
    assert "lc, not klt" in out
    assert "fork is lc place" in out
    assert "contracted E^2 = -1/3" in out


def test_germ_node_verdict(tmp_path, capsys):
    f = tmp_path / "a1.graph"
    f.write_text("E 2\n")
    code, out, _ = run(capsys, "germ", str(f))
    assert code == 0
    assert "klt, order 2" in out


def test_germ_rejects_indefinite_graph(tmp_path, capsys):
    f = tmp_path / "bad.graph"
    f.write_text("E 1\nF 1\nE -- F\n")
    code, _, err = run(capsys, "germ", str(f))
    assert code == 2
    assert "negative definite" in err


def test_germ_missing_file(capsys):
    code, _, err = run(capsys, "germ", "/no/such/file.graph")
    assert code == 2
    assert "error" in err


# --- wps command ------------------------------------------------------------


def test_wps_volume_cmd(capsys):
    code, out, _ = run(capsys, "wps", "volume", "--weights", "6,11,25,43", "--degree", "86")
    assert code == 0 and "volume = 1/825" in out
    code, out, _ = run(
        capsys, "wps", "volume", "--weights", "6,11,14,21", "--degree", "42", "--twist", "11"
    )
    assert code == 0 and "volume = 1/462" in out


def test_wps_hilbert_cmd(capsys):
    code, out, _ = run(capsys, "wps", "hilbert", "--n", "6")
    assert code == 0 and "h(6) = 1" in out
    code, out, _ = run(capsys, "wps", "hilbert", "--n", "860", "--ratio")
    assert code == 0 and "2*h(n)/n^2" in out


def test_wps_analyze_cmd(capsys):
    code, out, _ = run(capsys, "wps", "analyze", "--eps", "1,0,1,1", "--s", "0", "--t", "1")
    assert code == 0
    assert "lc, not klt" in out
    assert "chart 1: ordinary node (A1)" in out
    assert "chart 2: smooth" in out
    assert "P0, P1, P2" in out


def test_wps_analyze_expr(capsys):
    code, out, _ = run(
        capsys,
        "wps",
        "analyze",
        "--expr",
        "x3^2 + x2^3*x1 + x2*x1^5*x0 + x1^4*x0^7",
    )
    assert code == 0
    assert "lc, not klt" in out


def test_wps_normal_form_cmd(capsys):
    code, out, _ = run(capsys, "wps", "normal-form", "--coeffs", "1,2,1,0,1,1")
    assert code == 0
    assert "eps = (1,0,1,1)" in out and "s = -1" in out

    code, _, err = run(capsys, "wps", "normal-form", "--coeffs", "0,0,0,0,0,0")
    assert code == 2
    assert "vanish" in err


def test_wps_normal_form_from_file(tmp_path, capsys):
    f = tmp_path / "member.poly"
    f.write_text("weights 6 11 25 43\n1 0 0 0 2\n1 0 1 3 0\n1 1 5 1 0\n1 7 4 0 0\n")
    code, out, _ = run(capsys, "wps", "normal-form", "--poly", str(f))
    assert code == 0
    assert "eps = (1,0,1,1)" in out and "s = 0" in out and "t = 1" in out


# --- enumerate and quadmin -------------------------------------------------


def test_enumerate_lemma22(capsys):
    code, out, _ = run(capsys, "enumerate", "lemma22")
    assert code == 0
    assert "branches (2,1) (3,1) (6,5)" in out
    assert "branches (3,1) (3,2) (3,2)" in out


def test_enumerate_lemma34(capsys):
    code, out, _ = run(capsys, "enumerate", "lemma34")
    assert code == 0
    assert "q = (1, 1, 3)" in out


def test_quadmin_flagship_forms(capsys):
    code, out, _ = run(capsys, "quadmin", "--a", "25/42", "--b=-8/7", "--c", "127/231")
    assert code == 0
    assert "minimum 1/825 at t = 24/25" in out
    code, out, _ = run(capsys, "quadmin", "--a", "59/60", "--b=-28/15", "--c", "173/195")
    assert code == 0
    assert "minimum 1/767 at t = 56/59" in out


def test_quadmin_rejects_concave(capsys):
    code, _, err = run(capsys, "quadmin", "--a=-1", "--b", "0", "--c", "0")
    assert code == 2
    assert "not positive" in err


# --- presentation ------------------------------------------------------------


def test_color_env_toggle(capsys, monkeypatch):
    monkeypatch.setenv("LOGSURF_COLOR", "1")
    _, out, _ = run(capsys, "enumerate", "lemma34")
    assert "\x1b[32m" in out
    monkeypatch.setenv("LOGSURF_COLOR", "0")
    _, out, _ = run(capsys, "enumerate", "lemma34")
    assert "\x1b[" not in out