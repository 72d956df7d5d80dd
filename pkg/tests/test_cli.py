import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from semicont.cli import main

ROOT = Path(__file__).resolve().parents[1]
STEP = str(ROOT / "models" / "step.yaml")
SIER = str(ROOT / "models" / "sierpinski.yaml")
BAD = str(ROOT / "models" / "bad_opens.yaml")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_text(capsys):
    code, out, _ = run(capsys, "check", STEP, "-c", "WLC", "-c", "STLC")
    assert code == 0
    assert "WLC      holds" in out
    assert "x_n = 0 - 1/n" in out


def test_check_finite_table(capsys):
    code, out, _ = run(capsys, "check", SIER)
    assert code == 0
    assert "LSC" in out


def test_check_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "check", STEP, "--point", "0", "-c", "STLC")
    assert code == 0
    data = json.loads(out)
    (v,) = data["verdicts"]
    assert v["condition"] == "STLC" and v["holds"] is False
    code2, out2, _ = run(capsys, "check", STEP, "--point", "0", "-c", "STLC", "--format", "json")
    assert out2 == out


def test_exit_codes(capsys):
    assert run(capsys, "implies", "LSC", "TWLC")[0] == 0
    code, out, _ = run(capsys, "implies", "SLSC", "TWLC")
    assert code == 1 and "CE-SLSC-TWLC" in out
    code, _, err = run(capsys, "check", BAD)
    assert code == 2 and "not a topology" in err
    assert run(capsys, "check", str(ROOT / "models" / "missing.yaml"))[0] == 2
    assert run(capsys, "implies", "LSC", "FOO")[0] == 3
    assert run(capsys, "corpus", "verify", "CE-SLSC-TWLC")[0] == 3
    assert run(capsys, "frobnicate")[0] == 3
    assert run(capsys, "implies", "UBLSCA", "BLSCA", "--scope", "pointwise")[0] == 3


def test_implies_with_hypothesis(capsys):
    code, out, _ = run(capsys, "implies", "SLQC", "LQC", "--hyp", "N1", "--scope", "pointwise")
    assert code == 0 and "[uses N1]" in out
    assert run(capsys, "implies", "SLQC", "LQC", "--scope", "pointwise")[0] == 1


def test_closure_and_audit(capsys):
    code, out, _ = run(capsys, "closure", "LSC")
    assert code == 0 and "TWLC" in out
    code, out, _ = run(capsys, "audit")
    assert code == 0 and out.rstrip().endswith("clean")


def test_corpus_commands(capsys):
    code, out, _ = run(capsys, "corpus", "list", "--target", "UBSLSCA")
    assert code == 0 and "CE-BLSCA-UBSLSCA" in out
    code, out, _ = run(capsys, "corpus", "verify")
    assert code == 0
    code, out, _ = run(capsys, "--format", "json", "corpus", "list", "--provenance", "literature")
    assert len(json.loads(out)) >= 20


def test_failing_user_record_exits_1(capsys, tmp_path):
    rec = tmp_path / "mine.yaml"
    rec.write_text(
        "- id: MINE\n  tier: machine-checked\n  refutes: [[WLC, STLC]]\n"
        "  model: {kind: piecewise, domain: '(-inf,+inf)', pieces: [['(-inf,0)', 0], ['[0,+inf)', 1]]}\n"
        "  expected: [[WLC, global, true], [STLC, 0, false, 'not this witness']]\n"
    )
    assert run(capsys, "corpus", "verify", "MINE", "--records", str(rec))[0] == 1


def test_export_dot_to_file(capsys, tmp_path):
    out = tmp_path / "g.dot"
    assert run(capsys, "export-dot", "--hyp", "N1", "--out", str(out))[0] == 0
    text = out.read_text()
    assert text.startswith('digraph "pointwise"')
    assert run(capsys, "export-dot", "--hyp", "N1", "--out", str(tmp_path / "h.dot"))[0] == 0
    assert (tmp_path / "h.dot").read_text() == text


def test_small_sweep_and_cross_validate(capsys):
    code, out, _ = run(capsys, "sweep", "--n-max", "2", "--grid", "0,1")
    assert code == 0 and "edge violations\t0" in out
    code, out, _ = run(capsys, "cross-validate", "--n-max", "2", "--grid", "0,1,+inf")
    assert code == 0 and "mismatches\t0" in out


def subprocess_run(args, env=None):
    full_env = dict(os.environ, PYTHONPATH=str(ROOT / "src"))
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "semicont.cli", *args], capture_output=True, text=True, env=full_env)


def test_data_dir_override(tmp_path):
    (tmp_path / "edges.txt").write_text("LSC | TWLC | | both | custom shortcut\n")
    res = subprocess_run(["implies", "LSC", "TWLC"], {"SEMICONT_DATA_DIR": str(tmp_path)})
    assert res.returncode == 0
    assert "custom shortcut" in res.stdout
    res = subprocess_run(["implies", "LSC", "LPC"], {"SEMICONT_DATA_DIR": str(tmp_path)})
    assert res.returncode == 1


def test_reruns_are_byte_identical():
    a = subprocess_run(["sweep", "--n-max", "3", "--grid", "0,1,+inf"])
    b = subprocess_run(["sweep", "--n-max", "3", "--grid", "0,1,+inf"])
    assert a.returncode == 0
    assert a.stdout == b.stdout
