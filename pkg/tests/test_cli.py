import json
import math
import subprocess
import sys

import numpy as np
import pytest

from isotet.harness.cli import main


@pytest.fixture
def tet_file(tmp_path):
    path = tmp_path / "tet.json"
    path.write_text(json.dumps({"params": [1, 2, 3]}))
    return path


def test_conjugate_params_file(tet_file, capsys):
    assert main(["conjugate", "--tet", str(tet_file), "--point", "0.7,-0.4,0.42", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["kind"] == "point" and np.allclose(out["point"], (-0.7, 0.4, 0.42))


def test_conjugate_vertices_file(tmp_path, capsys):
    path = tmp_path / "tet.json"
    path.write_text(json.dumps({"vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]}))
    assert main(["conjugate", "--tet", str(path), "--point=0,0,0"]) == 0
    assert "vertex A" in capsys.readouterr().out


def test_conjugate_negative_and_edge(tet_file, capsys):
    assert main(["conjugate", "--tet", str(tet_file), "--point=1,0,0", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"kind": "edge_line", "edge": "BC"}


def test_conjugate_bad_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"params": [1, 2, 0]}))
    assert main(["conjugate", "--tet", str(path), "--point", "1,1,1"]) == 2
    assert "isotet:" in capsys.readouterr().err


def test_mesh_command(tmp_path):
    out = tmp_path / "m.obj"
    assert main(["mesh", "--surface", "hpc", "--params", "1,2,3", "--extent", "2", "--res", "3", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert sum(line.startswith("v ") for line in lines) == 9
    assert sum(line.startswith("f ") for line in lines) == 8


def test_verify_single_and_exit_codes(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["verify", "--suite", "P2.1i", "--trials", "20", "--seed", "5", "--json", str(path)]) == 0
    report = json.loads(path.read_text())
    assert report["suite"] == "P2.1i" and report["seed"] == 5 and report["passed"] is True
    assert "PASS" in capsys.readouterr().out
    assert main(["verify", "--suite", "C3.4", "--trials", "5", "--tol-pos", "1e-30", "--tol-ang", "1e-30"]) == 1
    assert main(["verify", "--suite", "nope"]) == 2


def test_verify_all_is_an_array(tmp_path):
    path = tmp_path / "all.json"
    assert main(["verify", "--suite", "all", "--trials", "3", "--json", str(path)]) == 0
    reports = json.loads(path.read_text())
    assert isinstance(reports, list) and len(reports) == 18
    assert all(math.isfinite(r["max_residual"]) for r in reports)


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "isotet.harness.cli", "verify", "--suite", "P4.1", "--trials", "5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("PASS")
