import json
import subprocess
import sys

import numpy as np
import pytest

from spherical_ta.cli import main


def _json(capsys):
    return json.loads(capsys.readouterr().out)


@pytest.fixture
def triangle(tmp_path):
    path = tmp_path / "pts.csv"
    path.write_text("1,0\n-1,1\n-1,-1\n")
    return str(path)


def test_chm_inside(triangle, capsys):
    assert main(["chm", "--points", triangle, "--query", "0,0"]) == 0
    doc = _json(capsys)
    assert doc["status"] == "inside" and doc["witness"] is None
    assert sum(w for _, w in doc["coefficients"]) == pytest.approx(1.0)


def test_chm_outside_with_trace(triangle, tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    out = tmp_path / "out.json"
    assert main(["chm", "--points", triangle, "--query", "5,0", "--oracle", "ta",
                 "--trace", str(trace), "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["status"] == "outside"
    n = np.array(doc["witness"]["plane"]["normal"])
    assert np.sign(n @ [5, 0] - doc["witness"]["plane"]["offset"]) != np.sign(
        n @ [1, 0] - doc["witness"]["plane"]["offset"])
    assert trace.read_text().startswith("k,delta")


def test_chm_limit_exit_code(triangle, capsys):
    assert main(["chm", "--points", triangle, "--query", "0.3,0.1", "--epsilon", "1e-6",
                 "--max-iters", "1"]) == 3
    assert _json(capsys)["status"] == "limit"


def test_bad_query_reports_error(triangle, capsys):
    assert main(["chm", "--points", triangle, "--query", "0,0,0"]) == 2
    assert "error" in capsys.readouterr().err


def test_gen_and_solve_strict(tmp_path, capsys):
    pre = str(tmp_path / "s")
    assert main(["gen", "--problem", "strictlp", "--kind", "uniform", "--m", "3", "--n", "8",
                 "--prefix", pre]) == 0
    truth = json.loads(open(pre + "_truth.json").read())
    assert main(["strictlp", "--matrix", pre + "_A.csv", "--rhs", pre + "_b.csv"]) == 0
    doc = _json(capsys)
    assert (doc["status"] == "feasible") == truth["feasible"]
    A = np.loadtxt(pre + "_A.csv", delimiter=",", ndmin=2)
    b = np.loadtxt(pre + "_b.csv", delimiter=",")
    assert np.all(A @ np.array(doc["x"]) < b)


def test_lpfeas_infeasible(tmp_path, capsys):
    pre = str(tmp_path / "l")
    main(["gen", "--problem", "lpfeas", "--kind", "uniform", "--m", "3", "--n", "6",
          "--infeasible", "--prefix", pre])
    assert main(["lpfeas", "--matrix", pre + "_A.csv", "--rhs", pre + "_b.csv"]) == 0
    doc = _json(capsys)
    assert doc["status"] == "infeasible" and doc["certificate"] is not None


def test_vertices_and_mvee(tmp_path, capsys):
    pre = str(tmp_path / "v")
    main(["gen", "--problem", "irredundancy", "--kind", "sphere", "--m", "3", "--n", "30",
          "--K", "8", "--prefix", pre])
    truth = json.loads(open(pre + "_truth.json").read())
    assert main(["vertices", "--points", pre + "_points.csv", "--gamma", "0.01"]) == 0
    assert _json(capsys)["vertices"] == truth["vertices"]
    assert main(["mvee", "--points", pre + "_points.csv", "--gamma", "0.01"]) == 0
    doc = _json(capsys)
    assert doc["points_used"] == 8 and len(doc["center"]) == 3


def test_bench_to_file(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--suite", "chm", "--sizes", "5x20", "--epsilons", "0.01",
                 "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("suite,feasibility,epsilon")
    assert len(lines) == 1 + 4


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "spherical_ta", "--help"], capture_output=True,
                         text=True)
    assert res.returncode == 0
    for cmd in ("chm", "lpfeas", "strictlp", "vertices", "mvee", "gen", "bench"):
        assert cmd in res.stdout
