import json
import re

import numpy as np
import pytest

from helpers import random_instance
from transitloc import cli
from transitloc.captation import captation_partition
from transitloc.model import Segment, make_instance
from transitloc.objective import evaluate
from transitloc.oracle import OracleResult
from transitloc.report import SolveReport, build_report
from transitloc.solver import solve
from transitloc.svg import render_svg

THREE = {"points": [{"x": 0, "y": 6, "w": 1}, {"x": 4, "y": 4, "w": 2}, {"x": -10, "y": -10, "w": 1}], "length": 5, "k": 5}


@pytest.fixture
def instance_file(tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(THREE))
    return path


def test_solve_ok(instance_file, capsys):
    assert cli.run(["solve", str(instance_file), "--oracle", "--grid", "33", "--angles", "64"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["oracle"]["agreement"] is True
    assert out["orientation"] in ("Q1-Q3", "Q2-Q4", "Q3-Q1", "Q4-Q2")
    seg = Segment(tuple(out["entrance"]), tuple(out["facility"]))
    inst = make_instance([(p["x"], p["y"], p["w"]) for p in THREE["points"]], 5, 5)
    assert abs(evaluate(inst, seg) - out["objective"]) <= 1e-9


def test_invalid_speedup_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({**THREE, "k": 0.5}))
    assert cli.run(["solve", str(path)]) == 2
    err = capsys.readouterr().err
    assert "k:" in err and "speedup" in err


def test_missing_and_malformed_files_exit_2(tmp_path, capsys):
    assert cli.run(["solve", str(tmp_path / "nope.json")]) == 2
    bad = tmp_path / "broken.json"
    bad.write_text("{points: ")
    assert cli.run(["solve", str(bad)]) == 2


def test_disagreement_exit_3(instance_file, monkeypatch, capsys):
    fake = OracleResult(Segment((5.0, 0.0), (0.0, 0.0)), 1.0, 0.1, 0.01, 0.5)
    monkeypatch.setattr(cli, "brute_force", lambda *a, **k: fake)
    assert cli.run(["solve", str(instance_file), "--oracle"]) == 3
    assert "disagrees" in capsys.readouterr().err


def test_report_round_trip():
    rng = np.random.default_rng(21)
    for _ in range(10):
        inst = random_instance(rng)
        rep = build_report(inst, solve(inst))
        again = SolveReport.from_json(rep.to_json())
        assert again == rep
        assert again.to_json() == rep.to_json()
        seg = Segment(tuple(again.entrance), tuple(again.facility))
        assert abs(evaluate(inst, seg) - again.objective) <= 1e-9


def test_svg_written_and_deterministic(instance_file, tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert cli.run(["solve", str(instance_file), "--svg", str(a)]) == 0
    assert cli.run(["solve", str(instance_file), "--svg", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("<?xml")


def test_svg_single_point_one_circle():
    inst = make_instance([(3, 4, 1)], 1, 2)
    sol = solve(inst)
    text = render_svg(inst, sol, captation_partition(inst, sol.segment))
    assert len(re.findall(r"<circle ", text)) == 1


def test_svg_captured_classes_match_partition():
    rng = np.random.default_rng(4)
    for _ in range(10):
        inst = random_instance(rng)
        sol = solve(inst)
        part = captation_partition(inst, sol.segment)
        text = render_svg(inst, sol, part)
        captured = {int(i) for i in re.findall(r'class="demand captured" data-index="(\d+)"', text)}
        assert captured == set(part.captured)
        assert len(re.findall(r"<circle ", text)) == len(inst)
