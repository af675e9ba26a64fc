import json
import subprocess
import sys
from pathlib import Path

import pytest

from prcert.cli import main

PROOFS = Path(__file__).resolve().parent.parent / "proofs"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_addition(capsys):
    assert run(capsys, "eval", "iter(s)", "<2;3>") == (0, "<5>\n", "")


def test_eval_reports_residual(capsys):
    code, out, _ = run(capsys, "eval", "iter(s)", "<2;30>", "--fuel", "3")
    assert code == 0
    assert out.startswith("fuel exhausted after 3 steps, residual complexity ")


def test_complexity(capsys):
    assert run(capsys, "complexity", "iter(s)") == (0, "2*w\n", "")
    assert run(capsys, "complexity", "id[N]")[1] == "0\n"


def test_trace_json(capsys):
    code, out, _ = run(capsys, "trace", "--json", "comp(s, s)", "<0>")
    rows = json.loads(out)
    assert code == 0
    assert [r["step"] for r in rows] == [0, 1, 2, 3]
    assert rows[-1] == {"step": 3, "code": "id[N]", "arg": "<2>", "complexity": "0"}


def test_trace_text(capsys):
    code, out, _ = run(capsys, "trace", "s", "<4>")
    assert out.splitlines() == ["0\t1\t<4>\ts", "1\t0\t<5>\tid[N]"]


def test_check_proof(capsys):
    code, out, _ = run(capsys, "check-proof", str(PROOFS / "add_zero.proof"))
    assert code == 0
    assert out == "comp(iter(s), comp(cyl(N, comp(zero, bang[N])), diag[N])) = id[N]\n"


def test_check_proof_reports_failing_node(capsys, tmp_path):
    bad = tmp_path / "bad.proof"
    bad.write_text('node a Refl "s" "s"\nnode b Assoc "comp(s, s)" "comp(s, s)"\nnode c Trans "s" "comp(s, s)" a b\n')
    code, out, err = run(capsys, "check-proof", str(bad))
    assert code == 1 and out == ""
    assert err.startswith("error: proof rejected at ")
    assert err.count("\n") == 1


def test_soundness(capsys):
    code, out, _ = run(capsys, "soundness", "--json", str(PROOFS / "monus_succ_both.proof"), "<9;7>")
    assert code == 0
    body = json.loads(out)
    assert body["verdict"] == "sound" and body["value"] == "<2>"
    code, out, _ = run(capsys, "soundness", str(PROOFS / "pred_succ.proof"), "<3>", "--fuel", "5")
    assert out.startswith("not terminated")


@pytest.mark.parametrize("argv", [
    ["eval", "iter(", "<1>"],
    ["eval", "comp(zero, s)", "<1>"],
    ["eval", "s", "<1"],
    ["complexity", "nonsense"],
    ["check-proof", "/nonexistent/file.proof"],
    ["soundness", str(PROOFS / "add_step.proof"), "<5>"],
    ["eval", "s"],
    ["frobnicate"],
    ["eval", "s", "<1>", "--fuel", "-3"],
])
def test_errors_are_single_line(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err.startswith("error: ") and err.count("\n") == 1


def test_fuzz_clean_and_deterministic(capsys):
    code, out, _ = run(capsys, "fuzz", "--seed", "1", "--cases", "100")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "cases: 100"
    assert "descent violations: 0" in lines
    assert "oracle mismatches: 0" in lines
    assert any(line.startswith("fuel exhaustions: ") for line in lines)
    again = run(capsys, "fuzz", "--seed", "1", "--cases", "100")
    assert again == (code, out, "")


def test_fuzz_exit_code_on_violation(capsys, monkeypatch):
    import prcert.cli as cli

    def broken(u, x, budget=None):
        from prcert.values import BOT
        return BOT
    monkeypatch.setattr(cli, "oracle_eval", broken)
    code, out, _ = run(capsys, "fuzz", "--seed", "3", "--cases", "20")
    assert code == 2
    assert "oracle mismatches: 0" not in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "prcert.cli", "eval", "iter(s)", "<2;3>"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "<5>\n"
