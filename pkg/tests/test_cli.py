import csv
import json
import math
import os
import shutil
import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np
import pytest

from jordancenters.cli import run

import oracles

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_center_ellipse_steiner(capsys):
    code, doc, _ = call(capsys, "center", "--shape", "ellipse", "--a", "2", "--b", "1", "--kind", "steiner")
    assert code == 0
    assert set(doc) == {"command", "result", "residuals", "config"}
    assert math.hypot(*doc["result"]["point"]) <= 1e-3
    assert doc["config"]["shape_params"] == {"a": 2.0, "b": 1.0}


def test_center_lune_is_interior(capsys):
    code, doc, _ = call(capsys, "center", "--in", str(FIXTURE_DIR / "lune.json"), "--kind", "centroid")
    assert code == 0
    r = doc["result"]
    assert r["clearance"] > 0 and r["retracted"]
    boundary = np.array(json.loads((FIXTURE_DIR / "lune.json").read_text())["samples"])
    assert oracles.winding_number(boundary, r["point"]) == 1


def test_flow_circle_frames_are_identical(capsys, tmp_path):
    out = tmp_path / "flow.csv"
    code, doc, _ = call(capsys, "flow", "--shape", "circle", "--r", "1", "--frames", "8", "--out", str(out))
    assert code == 0 and doc["result"]["frames"] == 8
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["frame_index", "time", "x", "y"]
    frames = {}
    for row in rows:
        frames.setdefault(int(row["frame_index"]), []).append((float(row["x"]), float(row["y"])))
    assert sorted(frames) == list(range(8))
    for pts in frames.values():
        assert np.abs(np.hypot(*np.array(pts).T) - 1).max() <= 1e-3


def test_flow_svg(capsys, tmp_path):
    out = tmp_path / "flow.svg"
    code, _, _ = call(capsys, "flow", "--shape", "egg", "--frames", "5", "--out", str(out))
    assert code == 0
    root = ET.parse(out).getroot()
    assert len(root.findall("{http://www.w3.org/2000/svg}path")) == 5


def test_map_commands(capsys, tmp_path):
    out = tmp_path / "map.json"
    code, doc, _ = call(capsys, "map", "--shape", "egg", "--point", "0.1", "0", "--direction", "0", "1", "--out", str(out))
    assert code == 0
    assert doc["residuals"]["boundary_defect"] <= 1e-3 * 2
    assert doc["residuals"]["direction_angle"] <= 1e-3
    assert json.loads(out.read_text())["kind"] == "interior"
    code, doc, _ = call(capsys, "map", "--shape", "blob", "--exterior")
    assert code == 0 and doc["result"]["kind"] == "exterior"


def test_retract_point(capsys):
    code, doc, _ = call(capsys, "retract-point", "--shape", "circle", "--point", "2", "0", "--t", "1")
    assert code == 0
    np.testing.assert_allclose(doc["result"]["point"], [1.0, 0.0], atol=1e-3)


def test_reach_and_offset(capsys, tmp_path):
    ma = tmp_path / "ma.csv"
    code, doc, _ = call(capsys, "reach", "--shape", "ellipse", "--out", str(ma))
    assert code == 0
    assert abs(doc["result"]["reach"] - 0.5) <= 0.01
    assert ma.read_text().splitlines()[0] == "x,y,radius"
    off = tmp_path / "off.json"
    code, doc, _ = call(capsys, "offset", "--shape", "ellipse", "--s", "0.25", "--out", str(off))
    assert code == 0 and doc["residuals"]["reconstruction"] <= 1e-3
    assert json.loads(off.read_text())["closed"] is True


def test_render_writes_png(capsys, tmp_path):
    out = tmp_path / "fig.png"
    code, doc, _ = call(capsys, "render", "--shape", "blob", "--frames", "6", "--out", str(out))
    assert code == 0
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert set(doc["result"]["centers"]) == {"centroid", "circumcenter", "steiner"}
    assert os.listdir(tmp_path) == ["fig.png"]


def test_verify_reach_suite(capsys):
    code, doc, err = call(capsys, "verify", "--suite", "reach")
    assert code == 0 and doc["result"]["passed"]
    assert "reach: pass" in err
    names = [c["name"] for c in doc["result"]["suites"][0]["checks"]]
    assert "ellipse-2-1" in names


@pytest.mark.parametrize(
    "argv",
    [
        ["center"],
        ["center", "--shape", "circle", "--a", "2"],
        ["center", "--shape", "circle", "--n", "4"],
        ["center", "--shape", "circle", "--tol", "-1"],
        ["flow", "--shape", "circle", "--frames", "2"],
        ["retract-point", "--shape", "circle", "--point", "2", "0", "--t", "2"],
        ["map", "--shape", "circle", "--point", "5", "5"],
        ["map", "--shape", "circle", "--direction", "0", "0"],
        ["offset", "--shape", "ellipse", "--s", "0.9"],
        ["center", "--in", "/nonexistent/curve.json"],
        ["reach", "--shape", "circle", "--medial-n", "100"],
    ],
)
def test_invalid_input_exits_2(capsys, argv):
    code, doc, err = call(capsys, *argv)
    assert code == 2
    assert doc is None and err.startswith("error:")


def test_figure_eight_file_exits_2(capsys, tmp_path):
    t = 2 * np.pi * np.arange(64) / 64
    p = tmp_path / "eight.json"
    p.write_text(json.dumps({"samples": np.column_stack([np.sin(t), np.sin(t) * np.cos(t)]).tolist(), "closed": True}))
    code, _, err = call(capsys, "center", "--in", str(p))
    assert code == 2 and "not simple" in err


def test_nonconvergence_exits_3(capsys):
    code, _, err = call(capsys, "map", "--shape", "lune-smoothed", "--point", "-0.9", "0", "--tol", "1e-12")
    assert code == 3 and err.startswith("error:")


def test_unknown_subcommand_is_argparse_error(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_output_is_deterministic(capsys):
    argv = ["verify", "--suite", "equivariance", "--trials", "2", "--seed", "3"]
    run(argv)
    a = capsys.readouterr().out
    run(argv)
    b = capsys.readouterr().out
    assert a == b


def test_console_script(tmp_path):
    exe = shutil.which("jordancenters") or [sys.executable, "-m", "jordancenters"]
    cmd = ([exe] if isinstance(exe, str) else exe) + ["center", "--shape", "circle"]
    proc = subprocess.run(cmd, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "center"


def test_failed_check_exits_4(capsys, monkeypatch):
    from jordancenters import verify

    def failing(name, **kwargs):
        rep = verify.SuiteReport(name)
        rep.at_most("always", 1.0, 0.5)
        return [rep]

    monkeypatch.setattr(verify, "run_suite", failing)
    code, doc, err = call(capsys, "verify", "--suite", "reach")
    assert code == 4
    assert doc["result"]["passed"] is False
    assert "FAIL" in err
