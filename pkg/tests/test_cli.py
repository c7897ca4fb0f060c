"""Command-line behavior: outputs, exit codes, and determinism."""
import json
import subprocess
import sys

import pytest

from mseg.cli import main
import cases


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDual:
    def test_single_segment(self, capsys):
        code, out, _ = run(capsys, "dual", "rho:[0,1]")
        assert code == 0
        assert out == "rho:[1,1]+[0,0]\n"

    def test_worked_example(self, capsys):
        code, out, _ = run(capsys, "dual", cases.BETA8_TEXT)
        assert code == 0
        assert out.strip() == cases.BETA8_DUAL

    def test_top_segments_of_big_example(self, capsys):
        _code, out, _ = run(capsys, "dual", cases.BETA15_TEXT)
        head = out.strip().removeprefix("rho:").split("+")[:5]
        assert sorted(head) == sorted(s for s in cases.BETA15_LEADINGS)

    def test_empty(self, capsys):
        code, out, _ = run(capsys, "dual", "{}")
        assert code == 0
        assert out == "{}\n"

    def test_json(self, capsys):
        _code, out, _ = run(capsys, "dual", "rho:[0,1]", "--format", "json")
        doc = json.loads(out)
        assert doc == {"input": "rho:[0,1]", "dual": "rho:[1,1]+[0,0]"}


class TestGe:
    def test_true_with_witness(self, capsys):
        code, out, _ = run(capsys, "ge", "rho:[0,0]+[1,1]", "rho:[0,1]", "--witness")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "true"
        assert len(lines) == 3

    def test_false(self, capsys):
        code, out, _ = run(capsys, "ge", "rho:[0,1]", "rho:[0,0]+[1,1]")
        assert code == 0
        assert out == "false\n"

    def test_support_mismatch(self, capsys):
        code, out, _ = run(capsys, "ge", "rho:[0,0]", "rho:[1,1]")
        assert code == 0
        assert out == "false (support mismatch)\n"

    def test_json(self, capsys):
        _code, out, _ = run(
            capsys, "ge", "rho:[0,0]+[1,1]", "rho:[0,1]", "--witness", "--format", "json"
        )
        doc = json.loads(out)
        assert doc["ge"] is True
        assert doc["witness"] == ["rho:[1,1]+[0,0]", "rho:[0,1]"]


class TestTrace:
    def test_worked_example(self, capsys):
        code, out, _ = run(capsys, "trace", cases.BETA8_TEXT)
        assert code == 0
        assert "t=2" in out
        assert cases.BETA8_STEP0_LEADING in out
        assert cases.BETA8_STEP1_LEADING in out

    def test_empty(self, capsys):
        code, out, _ = run(capsys, "trace", "{}")
        assert code == 0
        assert "t=0" in out

    def test_label_inference(self, capsys):
        code, out, _ = run(capsys, "trace", "sigma:[0,0]")
        assert code == 0
        assert "block sigma" in out

    def test_ambiguous_label(self, capsys):
        code, _, err = run(capsys, "trace", "rho:[0,0]; sigma:[0,0]")
        assert code == 2
        assert "--rho" in err

    def test_explicit_label(self, capsys):
        code, out, _ = run(capsys, "trace", "rho:[0,0]; sigma:[0,0]", "--rho", "sigma")
        assert code == 0
        assert "block sigma" in out

    def test_json(self, capsys):
        _code, out, _ = run(capsys, "trace", cases.BETA8_TEXT, "--format", "json")
        doc = json.loads(out)
        assert doc["t"] == 2
        assert doc["steps"][0]["chosen"] == list(cases.BETA8_STEP0_SLOTS)


class TestArthur:
    def test_positive(self, capsys):
        code, out, _ = run(capsys, "arthur", "rho:[0,1]+[-1,0]")
        assert code == 0
        assert out == "rho:(1,1)\n"

    def test_negative(self, capsys):
        code, out, _ = run(capsys, "arthur", "rho:[0,1]")
        assert code == 0
        assert out == "not arthur\n"

    def test_empty(self, capsys):
        code, out, _ = run(capsys, "arthur", "{}")
        assert code == 0
        assert out == "{}\n"

    def test_json(self, capsys):
        _code, out, _ = run(capsys, "arthur", "rho:[0,1]", "--format", "json")
        assert json.loads(out) == {"arthur": False, "parameter": None}


class TestVerify:
    def test_pass(self, capsys):
        code, out, err = run(capsys, "verify", "rho:(1,1)")
        assert code == 0
        assert out.splitlines()[-1] == "PASS"
        assert "support of 4 points" in err

    def test_two_summands(self, capsys):
        code, out, _ = run(capsys, "verify", "rho:(1,0)+(0,1)")
        assert code == 0
        assert "violations: 0" in out

    def test_json(self, capsys):
        _code, out, _ = run(capsys, "verify", "rho:(1,1)", "--format", "json")
        doc = json.loads(out)
        assert doc["ok"] is True
        assert doc["candidates_checked"] == 5

    def test_bound_exceeded(self, capsys):
        code, _, err = run(capsys, "verify", "rho:(1,1)", "--bound", "2")
        assert code == 3
        assert "bound 2" in err

    def test_parallel_matches_serial(self, capsys):
        code1, out1, _ = run(capsys, "verify", "rho:(0,3)")
        code2, out2, _ = run(capsys, "verify", "rho:(0,3)", "--parallel")
        assert (code1, out1) == (code2, out2)


class TestEnumerate:
    def test_lines(self, capsys):
        code, out, _ = run(capsys, "enumerate", "rho:[0,1]")
        assert code == 0
        assert out.splitlines() == ["rho:[1,1]+[0,0]", "rho:[0,1]"]

    def test_json(self, capsys):
        _code, out, _ = run(capsys, "enumerate", "rho:[0,1]", "--format", "json")
        doc = json.loads(out)
        assert doc["count"] == 2
        assert doc["support"] == "{(rho,0), (rho,1)}"

    def test_bound_exceeded(self, capsys):
        code, _, err = run(capsys, "enumerate", "rho:[0,4]", "--bound", "3")
        assert code == 3
        assert "bound 3" in err

    def test_env_bound(self, capsys, monkeypatch):
        monkeypatch.setenv("MSEG_BOUND", "3")
        code, _, _ = run(capsys, "enumerate", "rho:[0,4]")
        assert code == 3

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("MSEG_BOUND", "3")
        code, _, _ = run(capsys, "enumerate", "rho:[0,4]", "--bound", "12")
        assert code == 0

    def test_bad_env_bound(self, capsys, monkeypatch):
        monkeypatch.setenv("MSEG_BOUND", "many")
        code, _, err = run(capsys, "enumerate", "rho:[0,1]")
        assert code == 2
        assert "MSEG_BOUND" in err


class TestHasse:
    def test_dot_default(self, capsys):
        code, out, _ = run(capsys, "hasse", "rho:[0,1]")
        assert code == 0
        assert out.startswith("digraph poset {")
        assert "n0 -> n1;" in out

    def test_arthur_nodes_marked(self, capsys):
        _code, out, _ = run(capsys, "hasse", "rho:[-1,1]+[0,0]")
        marked = [line for line in out.splitlines() if "peripheries=2" in line]
        assert len(marked) == 3

    def test_text(self, capsys):
        code, out, _ = run(capsys, "hasse", "rho:[0,1]", "--format", "text")
        assert code == 0
        assert "0: rho:[1,1]+[0,0] (rank 2)" in out
        assert "0 -> 1" in out

    def test_json(self, capsys):
        _code, out, _ = run(capsys, "hasse", "rho:[-1,1]+[0,0]", "--format", "json")
        doc = json.loads(out)
        assert len(doc["nodes"]) == 5
        assert len(doc["arthur"]) == 3

    def test_deterministic(self, capsys):
        _code, out1, _ = run(capsys, "hasse", "rho:[-1,1]+[0,0]+[1,1]")
        _code, out2, _ = run(capsys, "hasse", "rho:[-1,1]+[0,0]+[1,1]", "--parallel")
        assert out1 == out2


class TestErrors:
    def test_parse_error_exit_code(self, capsys):
        code, out, err = run(capsys, "dual", "rho:[0,")
        assert code == 2
        assert out == ""
        assert "line 1" in err

    def test_constraint_error_exit_code(self, capsys):
        code, _, err = run(capsys, "dual", "rho:[1,0]")
        assert code == 2
        assert "column 5" in err

    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_missing_argument(self, capsys):
        assert run(capsys, "dual")[0] == 2

    def test_bad_bound_flag(self, capsys):
        code, _, err = run(capsys, "enumerate", "rho:[0,1]", "--bound", "0")
        assert code == 2
        assert ">= 1" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mseg", "dual", "rho:[0,1]"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "rho:[1,1]+[0,0]\n"
