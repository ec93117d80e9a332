from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from coprimegraph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_graph_dot_golden(capsys):
    code, out, _ = run(capsys, "graph", "Z(6)", "--format", "dot")
    assert code == 0
    assert out == (FIXTURES / "z6.dot").read_text()


def test_graph_s8_reduced(capsys):
    code, out, _ = run(capsys, "graph", "S(8)", "--reduced", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["classes"]) <= 16
    assert sum(c["multiplicity"] for c in data["classes"]) == 40320


def test_graph_trivial(capsys):
    code, out, _ = run(capsys, "graph", "Z(1)", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["vertices"]) == 1 and data["edges"] == []


def test_graph_from_table(capsys):
    code, out, _ = run(capsys, "graph", str(FIXTURES / "q8.json"), "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["edges"]) == 7


def test_classify_example(capsys):
    code, out, _ = run(capsys, "classify", "S(3)xZ(5)", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["report"]["flags"]["at_free"] == {"detector": True, "criterion": True, "agrees": True}
    assert "timing_ms" in data and "timing_ms" not in data["report"]


def test_classify_z30_table(capsys):
    code, out, _ = run(capsys, "classify", "Z(30)")
    line = next(line for line in out.splitlines() if line.startswith("cograph"))
    assert "false" in line and "P4" in line
    assert code == 0


def test_classify_z2(capsys):
    code, out, _ = run(capsys, "classify", "Z(2)", "--format", "json")
    assert code == 0
    assert all(f["detector"] for f in json.loads(out)["report"]["flags"].values())


def test_classify_disagreement_exit_code(capsys):
    code, _, _ = run(capsys, "classify", "S(3)")
    assert code == 1


def test_verify_cyclic(capsys):
    code, out, _ = run(capsys, "verify", "--families", "cyclic", "--max-order", "200", "--theorems", "3.2,3.6")
    assert code == 0
    assert "VIOLATED" not in out


def test_verify_symmetric_prints_s8_witness(capsys):
    code, out, _ = run(capsys, "verify", "--families", "symmetric", "--max-n", "8", "--theorems", "4.3")
    assert code == 0
    s8 = next(line for line in out.splitlines() if "S(8)" in line)
    assert "AT orders" in s8 and all(str(d) in s8 for d in (6, 10, 15))


def test_verify_trivial(capsys):
    code, out, _ = run(capsys, "verify", "--families", "cyclic", "--max-order", "1", "--theorems", "3.3",
                       "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["reports"][0]["flags"]["claw_free"]["detector"] is True


def test_verify_dihedral_readings(capsys):
    code, out, _ = run(capsys, "verify", "--families", "dihedral", "--max-order", "60", "--theorems", "4.2")
    assert code == 0
    assert "reading D(30)" in out and "reading D(60)" in out


def test_verify_unknown_theorem(capsys):
    code, _, err = run(capsys, "verify", "--theorems", "3.2,7.7")
    assert code == 2 and "7.7" in err


def test_verify_json_parallel(capsys):
    args = ["verify", "--families", "dihedral,dicyclic", "--max-order", "48", "--format", "json"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args, "--jobs", "2")
    a, b = json.loads(a), json.loads(b)
    a.pop("timing_ms"), b.pop("timing_ms")
    assert a == b


def test_embed_literal_collision(capsys):
    code, out, _ = run(capsys, "embed", str(FIXTURES / "p3.txt"), "--literal")
    data = json.loads(out)
    assert code == 1 and data["error"] == "CollisionError" and data["order"] == 2


def test_embed_default(capsys):
    code, out, _ = run(capsys, "embed", str(FIXTURES / "p3.txt"))
    data = json.loads(out)
    assert code == 0 and data["k"] == "210" and data["verified"] is True


def test_embed_single_vertex_with_dot(capsys):
    code, out, _ = run(capsys, "embed", str(FIXTURES / "single.txt"), "--dot")
    assert code == 0
    assert json.loads(out[: out.index("graph embedded")])["k"] == "2"
    assert "graph embedded {" in out


def test_embed_dot_input(capsys):
    code, out, _ = run(capsys, "embed", str(FIXTURES / "example8.dot"))
    assert code == 0 and json.loads(out)["verified"] is True


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "classify", "Z(3)xQ(2)")
    assert code == 2 and "position 5" in err


def test_bad_embed_input(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3 5\n0 1\n")
    code, _, err = run(capsys, "embed", str(path))
    assert code == 2 and "header" in err


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_order_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("COPRIME_ORDER_CAP", "5")
    code, _, err = run(capsys, "graph", "Z(6)")
    assert code == 2 and "cap" in err
    code, _, _ = run(capsys, "graph", "Z(6)", "--order-cap", "6")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coprimegraph", "classify", "Z(2)"], capture_output=True, text=True)
    assert proc.returncode == 0 and "c4_free" in proc.stdout
