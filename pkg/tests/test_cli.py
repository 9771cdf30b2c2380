import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from pentagram.cli import main
from pentagram.io import fmt_scalar, parse_scalar, polygon_from_json, polygon_to_json
from pentagram.octagon import canonical_vertices
from pentagram.polygons import Polygon, projectively_equivalent


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def csv_rows(text):
    lines = text.splitlines()
    assert lines[0].startswith("# pentagram ")
    return [l.split(",") for l in lines[1:]]


def test_iterate_diagonal_rational(capsys):
    code, out, _ = run(capsys, "iterate", "--seed", "1", "1", "--n-fwd", "3", "--backend", "rational")
    assert code == 0
    rows = csv_rows(out)
    assert rows[0] == ["j", "x", "y", "psi", "convex", "pole"]
    # (1 + x) / (1 + 2x) from x = 1
    assert [r[1] for r in rows[1:]] == ["1", "2/3", "5/7", "12/17"]


def test_iterate_fixed_point(capsys):
    s = "0.70710678118654757"
    code, out, _ = run(capsys, "iterate", "--seed", s, s, "--n-fwd", "4")
    assert code == 0
    xs = {float(r[1]) for r in csv_rows(out)[1:]}
    assert max(xs) - min(xs) < 1e-15


def test_iterate_backward_loses_convexity(capsys):
    code, out, _ = run(capsys, "iterate", "--seed", "0.8", "0.8", "--n-bwd", "50", "--n-fwd", "0")
    rows = csv_rows(out)[1:]
    assert [int(r[0]) for r in rows] == list(range(-50, 1))
    assert any(r[4] == "false" for r in rows if int(r[0]) < 0)
    assert rows[-1][4] == "true"


def test_iterate_degenerate_seed(capsys):
    code, _, err = run(capsys, "iterate", "--seed", "0", "1")
    assert code == 2 and "degenerate" in err


def test_bad_arguments_exit_2(capsys):
    assert run(capsys, "iterate", "--seed", "a", "1")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "iterate")[0] == 2


def test_seed_list(tmp_path, capsys):
    f = tmp_path / "seeds.txt"
    f.write_text("# two seeds\n5 6\n1/2, 3/4\n")
    code, out, _ = run(capsys, "invariant", "--seed-list", str(f), "--backend", "rational")
    assert code == 0
    assert csv_rows(out)[1:] == [["5", "6", "-2"], ["1/2", "3/4", "1/8"]]
    code, out, _ = run(capsys, "iterate", "--seed-list", str(f), "--n-fwd", "6", "--backend", "rational")
    rows = csv_rows(out)
    assert rows[0][0] == "seed"
    first = [r for r in rows[1:] if r[0] == "0"]
    assert first[0][2:4] == first[6][2:4] == ["5", "6"]


def test_invariant_undefined_on_axes(capsys):
    _, out, _ = run(capsys, "invariant", "--seed", "2", "0", "--backend", "rational")
    assert csv_rows(out)[1] == ["2", "0", "undefined"]


def test_dual_seed(capsys):
    _, out, _ = run(capsys, "dual", "--seed", "4/5", "4/5", "--backend", "rational")
    x, y = (Fraction(v) for v in csv_rows(out)[1][2:])
    assert x * x + y * y == 1


def test_dual_polygon_json(tmp_path, capsys):
    p = Polygon(tuple(canonical_vertices((Fraction(9, 10), Fraction(2, 5)))))
    f = tmp_path / "p.json"
    f.write_text(polygon_to_json(p))
    code, out, _ = run(capsys, "dual", "--polygon", str(f))
    assert code == 0
    d = polygon_from_json(out)
    assert d.n == 8 and all(v.exact for v in d.vertices)
    f.write_text('{"n": 3, "vertices": [[1, 0, 1]]}')
    assert run(capsys, "dual", "--polygon", str(f))[0] == 2


def test_polygon_json_roundtrip():
    exact = Polygon(tuple(canonical_vertices((Fraction(-7, 3), Fraction(11, 13)))))
    assert polygon_from_json(polygon_to_json(exact)) == exact
    flt = Polygon(tuple(canonical_vertices((0.1 + 0.2, 1 / 3))))
    back = polygon_from_json(polygon_to_json(flt))
    assert back == flt
    assert json.loads(polygon_to_json(exact))["vertices"][1] == ["-7/3", "11/13", "1"]


def test_scalar_format():
    assert fmt_scalar(Fraction(3, 4)) == "3/4"
    assert fmt_scalar(0.1) == "0.10000000000000001"
    assert parse_scalar(fmt_scalar(1 / 3), exact=False) == 1 / 3
    assert fmt_scalar(None) == "undefined"


def test_levelset(tmp_path, capsys):
    svg, csv = tmp_path / "e.svg", tmp_path / "e.csv"
    code, _, _ = run(capsys, "levelset", "--lambda", "1", "--resolution", "1024", "--out-svg", str(svg), "--out-csv", str(csv))
    assert code == 0
    root = ET.fromstring(svg.read_text())
    assert root.get("viewBox") == "0 0 600 600"
    classes = {el.get("class") for el in root.iter() if el.get("class")}
    assert {"bounded", "unbounded", "antidiagonal", "diagonal", "unit-circle", "convex-region"} <= classes
    rows = csv_rows(csv.read_text())
    assert rows[0] == ["component", "bounded", "x", "y"]
    assert {r[0] for r in rows[1:]} == {"0", "1"}


def test_levelset_singular(tmp_path, capsys):
    assert run(capsys, "levelset", "--lambda", "2", "--out-svg", str(tmp_path / "x.svg"))[0] == 2


def test_levelset_reflection(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "levelset", "--lambda", "1", "--resolution", "512", "--out-svg", str(tmp_path / "a.svg"), "--out-csv", str(a))
    run(capsys, "levelset", "--lambda", "-1", "--resolution", "512", "--out-svg", str(tmp_path / "b.svg"), "--out-csv", str(b))
    import numpy as np
    from scipy.spatial import cKDTree

    pa = np.array([[float(r[2]), float(r[3])] for r in csv_rows(a.read_text())[1:]])
    pb = np.array([[float(r[3]), float(r[2])] for r in csv_rows(b.read_text())[1:]])
    d, _ = cKDTree(pb).query(pa)
    assert d.max() < 0.05


def test_escape_map_deterministic(tmp_path, capsys):
    out, svg = tmp_path / "f.csv", tmp_path / "f.svg"
    args = ["escape-map", "--resolution", "24", "--cap", "2000", "--out", str(out), "--svg", str(svg)]
    assert run(capsys, *args)[0] == 0
    first, first_svg = out.read_bytes(), svg.read_bytes()
    run(capsys, *args)
    assert out.read_bytes() == first and svg.read_bytes() == first_svg
    rows = csv_rows(first.decode())
    assert rows[0] == ["x", "y", "fwd", "bwd"] and len(rows) == 24 * 24 + 1
    diag = [r for r in rows[1:] if r[0] == r[1] and int(r[2]) != 0]
    assert diag and all(r[2] == "-1" for r in diag)
    assert ET.fromstring(first_svg.decode()).get("viewBox") == "0 0 600 600"


def test_verify_and_exit_codes(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "identities", "--trials", "60", "--backend", "rational")
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert all(c["passed"] and c["failures"] == 0 for s in rep["suites"] for c in s["checks"])

    from pentagram import verify

    monkeypatch.setattr(verify, "order_three_seed", lambda: False)
    code, out, _ = run(capsys, "verify", "escape")
    assert code == 1 and not json.loads(out)["passed"]


def test_verify_calibration(capsys):
    code, out, _ = run(capsys, "verify", "calibration")
    assert code == 0
    assert json.loads(out)["suites"][0]["checks"][1]["trials"] == 200


def test_poncelet_and_calibrate(tmp_path, capsys):
    poly = tmp_path / "p.json"
    code, out, _ = run(capsys, "poncelet", "--out-polygon", str(poly))
    rep = json.loads(out)
    assert code == 0 and rep["equivalent_to_image"] and rep["convex"]
    assert float(rep["closure_defect"]) < 1e-10
    p = polygon_from_json(poly.read_text())
    from pentagram.polygons import deep_diagonal

    assert projectively_equivalent(p, deep_diagonal(p, 3), 1e-8)
    code, out, _ = run(capsys, "calibrate")
    assert code == 0 and json.loads(out)["shift"] == 0


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "pentagram", "invariant", "--seed", "1", "2", "--backend", "rational"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert res.stdout.splitlines()[-1] == "1,2,-2"
