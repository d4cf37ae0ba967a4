import json
import subprocess
import sys

import pytest

from cyclefig import document
from cyclefig.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_fillmore_springer(capsys):
    code, out, _ = run(capsys, "eval", "fillmore_springer")
    assert code == 0
    row = [l for l in out.splitlines() if l.startswith("D\t")][0]
    assert "(1, [0, 0], -1)" in row
    assert "(0.00694444444444, [0.0892857142857, -0.0372023809524], 1)" in row


def test_eval_empty_document(tmp_path, capsys):
    p = tmp_path / "empty.json"
    p.write_text(json.dumps({"dim": 2, "point_metric": [-1, -1], "nodes": []}))
    code, out, _ = run(capsys, "eval", str(p))
    assert code == 0
    assert [l.split("\t")[0] for l in out.splitlines()] == ["R", "infty"]


def contradictory(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"dim": 2, "point_metric": [-1, -1], "nodes": [
        {"key": "D", "relations": [{"kind": "orthogonal", "to": "D"}, {"kind": "orthogonal", "to": "R"},
                                   {"kind": "orthogonal", "to": "infty"},
                                   {"kind": "product_sign", "to": "D", "parameter": -1}]}],
        "assertions": [{"check": "orthogonal", "a": "D", "b": "R"}]}))
    return p


def test_contradictory_relations_exit_2(tmp_path, capsys):
    code, out, err = run(capsys, "eval", str(contradictory(tmp_path)))
    assert code == 2
    assert "D\t1\t{}\t" in out and "empty solutions: D" in err


@pytest.mark.parametrize("name", ["nine_points", "nine_points_hyperbolic", "hello_cycle", "fillmore_springer",
                                  "modular_group", "apollonius3d", "lobachevsky_anim"])
def test_check_shipped_documents(name, capsys):
    code, out, _ = run(capsys, "check", name)
    assert code == 0, out
    assert out.strip().endswith("0 failed")


def test_check_failing_expectation(tmp_path, capsys):
    doc = json.loads(document.shipped("fillmore_springer").read_text())
    doc["assertions"] = [{"measure": "sq_cross_t_distance", "a": "D", "b": "A", "expect": 42, "tol": 1e-6}]
    p = tmp_path / "fs42.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "check", str(p))
    assert code == 2
    line = out.splitlines()[0]
    assert line.startswith("FAIL") and line.endswith("residual 1")


def test_usage_and_parse_errors(tmp_path, capsys):
    assert run(capsys)[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "render", "hello_cycle")[0] == 1  # missing -o
    assert run(capsys, "eval", "no_such_document")[0] == 1
    p = tmp_path / "broken.json"
    p.write_text("{ not json")
    code, _, err = run(capsys, "eval", str(p))
    assert code == 1 and "line 1" in err
    assert run(capsys, "check", "hello_cycle", "--bogus")[0] == 1


def test_render_lobachevsky(tmp_path, capsys):
    out = tmp_path / "l.svg"
    code, _, _ = run(capsys, "render", "hello_cycle", "-o", str(out), "--viewport", "-3", "3", "-3", "3",
                     "--size", "300")
    assert code == 0
    svg = out.read_text()
    assert svg.count("<circle") == 2 and svg.count("<path") == 2
    run(capsys, "render", "hello_cycle", "-o", str(out), "--no-real-line")
    assert 'id="R"' not in out.read_text()


def test_render_rejects_3d(tmp_path, capsys):
    assert run(capsys, "render", "apollonius3d", "-o", str(tmp_path / "x.svg"))[0] == 1


def test_animate(tmp_path, capsys):
    code, _, _ = run(capsys, "animate", "lobachevsky_anim", "--param", "t", "--from", str(2 / 30),
                     "--to", str(41 / 30), "--frames", "40", "-o", str(tmp_path / "frames"), "--grid", "64")
    assert code == 0
    files = sorted(p.name for p in (tmp_path / "frames").iterdir())
    assert len(files) == 40 and files[0] == "frame_000.svg" and files[-1] == "frame_039.svg"
    assert run(capsys, "animate", "lobachevsky_anim", "--param", "t", "--from", "0", "--to", "1",
               "--frames", "0", "-o", str(tmp_path / "f"))[0] == 1


def test_eval_is_stable(capsys):
    a = run(capsys, "eval", "nine_points")[1]
    b = run(capsys, "eval", "nine_points")[1]
    assert a == b


def test_console_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "cyclefig.cli", "check", str(contradictory(tmp_path))],
                         capture_output=True, text=True)
    assert res.returncode == 2
