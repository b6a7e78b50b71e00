import json
import math
import subprocess
import sys

import numpy as np
import pytest
from click.testing import CliRunner

from ripslab import io as rio
from ripslab.cli import main
from ripslab.metric_spaces import sample_circle, validate
from ripslab.persistence import INF, Barcode


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def square(tmp_path):
    path = tmp_path / "square.json"
    rio.write_matrix(sample_circle(4, 1.0), path)
    return path


def test_jsonable():
    assert rio.jsonable({"a": INF, 1: [0.1 + 0.2]}) == {"a": "inf", "1": [0.3]}
    assert rio.dumps({"b": 1, "a": 2}).index('"a"') < rio.dumps({"b": 1, "a": 2}).index('"b"')


def test_matrix_roundtrip(tmp_path):
    D = sample_circle(5, 1.0)
    for name in ("m.json", "m.csv"):
        rio.write_matrix(D, tmp_path / name)
        back = rio.read_matrix(tmp_path / name)
        np.testing.assert_allclose(back.d, D.d, rtol=0, atol=1e-14)


def test_barcode_roundtrip(tmp_path):
    b = Barcode({0: [(0, INF), (0, 1)], 2: [(0.5, 2)]}, 3)
    rio.write_barcode(b, tmp_path / "b.json")
    assert rio.read_barcode(tmp_path / "b.json") == b
    data = json.loads((tmp_path / "b.json").read_text())
    assert data == {"field": 3, "dims": {"0": [[0.0, 1.0], [0.0, "inf"]], "2": [[0.5, 2.0]]}}


def test_svg():
    svg = rio.render_svg(Barcode({0: [(0, INF), (0, 1)], 1: [(0.5, 2)]}))
    assert svg.startswith("<svg") and svg.count("<line") >= 3


def test_cli_barcode(runner, square):
    res = runner.invoke(main, ["barcode", str(square), "--max-dim", "1"])
    assert res.exit_code == 0, res.output
    data = json.loads(res.output)
    (b, d), = data["dims"]["1"]
    assert b == pytest.approx(math.pi / 2) and d == pytest.approx(math.pi)
    assert data["truncated"] is False


def test_cli_barcode_truncated(runner, square, tmp_path):
    svg = tmp_path / "b.svg"
    res = runner.invoke(main, ["barcode", str(square), "--r-max", "2.0", "--svg", str(svg)])
    data = json.loads(res.output)
    assert data["truncated"] is True and "warning" in data
    assert data["dims"]["1"][0][1] == "inf"
    assert svg.read_text().startswith("<svg")


def test_cli_deterministic(runner, square):
    a = runner.invoke(main, ["barcode", str(square), "--max-dim", "2"]).output
    b = runner.invoke(main, ["barcode", str(square), "--max-dim", "2"]).output
    assert a == b


def test_cli_sample(runner, tmp_path):
    out = tmp_path / "c.csv"
    res = runner.invoke(main, ["sample", "--kind", "circle-geodesic", "--count", "6", "--out", str(out)])
    assert res.exit_code == 0
    assert rio.read_matrix(out).n == 6
    res = runner.invoke(main, ["sample", "--kind", "sphere-geodesic", "--count", "5", "--seed", "3"])
    assert json.loads(res.output)["n"] == 5


def test_cli_invalid_matrix_exit_1(runner, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,1\n2,0\n")
    res = runner.invoke(main, ["barcode", str(bad)])
    assert res.exit_code == 1
    assert "AsymmetricEntry" in res.output


def test_cli_usage_exit_2(runner):
    assert runner.invoke(main, ["barcode"]).exit_code == 2
    assert runner.invoke(main, ["sample"]).exit_code == 2
    assert runner.invoke(main, ["suite", "nope"]).exit_code == 2


def test_cli_bottleneck_kunneth_wedge(runner, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    rio.write_barcode(Barcode({0: [(0, INF)], 1: [(1, 2)]}), a)
    rio.write_barcode(Barcode({0: [(0, INF)], 1: [(1, 3)]}), b)
    res = json.loads(runner.invoke(main, ["bottleneck", str(a), str(b)]).output)
    assert res["distance"] == 1.0 and res["matching"]["pairs"] == [[0, 0]]
    res = json.loads(runner.invoke(main, ["kunneth", str(a), str(b)]).output)
    assert res["dims"]["2"] == [[1.0, 2.0]]
    res = json.loads(runner.invoke(main, ["wedge", str(a), str(b)]).output)
    assert res["dims"]["1"] == [[1.0, 2.0], [1.0, 3.0]]
    f3 = tmp_path / "f3.json"
    rio.write_barcode(Barcode({}, 3), f3)
    assert runner.invoke(main, ["bottleneck", str(a), str(f3)]).exit_code == 1


def test_cli_oracle(runner):
    res = json.loads(runner.invoke(main, ["oracle", "circle", "--l-max", "1"]).output)
    assert res["dims"]["3"][0][1] == pytest.approx(4 * math.pi / 5)
    res = json.loads(runner.invoke(main, ["oracle", "linf-square", "--n", "3"]).output)
    assert res["dims"]["2"] == [[0.0, 2.0]]
    assert runner.invoke(main, ["oracle", "linf-sphere", "--n", "1"]).exit_code == 1


def test_cli_invariants_assert(runner, square):
    res = runner.invoke(main, ["invariants", str(square), "--assert"])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["hyperbolicity"] == pytest.approx(math.pi)
    assert {b["name"] for b in data["bounds"]} >= {"length <= spread"}


def test_cli_cech_and_bicombing(runner, tmp_path):
    pts = tmp_path / "p.csv"
    pts.write_text("0,0\n1,0\n0,1\n0.5,0.7\n")
    res = runner.invoke(main, ["cech-check", str(pts)])
    assert res.exit_code == 0 and json.loads(res.output)["ok"] is True
    res = runner.invoke(main, ["bicombing-check", "--trials", "50"])
    assert res.exit_code == 0 and json.loads(res.output)["passed"] is True


def test_cli_suite_and_render(runner, tmp_path):
    res = runner.invoke(main, ["suite", "wedge", "--seed", "1"])
    assert res.exit_code == 0 and json.loads(res.output)["passed"] is True
    bfile = tmp_path / "b.json"
    rio.write_barcode(Barcode({0: [(0, INF)]}), bfile)
    assert runner.invoke(main, ["render", str(bfile)]).output.startswith("<svg")


def test_console_script_exit_codes(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,1,3\n1,0,1\n3,1,0\n")
    proc = subprocess.run([sys.executable, "-m", "ripslab.cli", "barcode", str(bad)],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "TriangleViolation" in proc.stderr
    good = tmp_path / "good.json"
    rio.write_matrix(validate([[0, 1], [1, 0]]), good)
    proc = subprocess.run([sys.executable, "-m", "ripslab.cli", "barcode", str(good), "--max-dim", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dims"]["0"] == [[0.0, 1.0], [0.0, "inf"]]
