import json
import subprocess
import sys

import pytest
from conftest import DATA, svg_orders_and_gaps

from storyline.cli import main
from storyline.model import parse_diagram, parse_storyline


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def star(tmp_path, capsys):
    path = tmp_path / "star.json"
    assert run(capsys, "gen", "star", 4, "--out", path)[0] == 0
    return path


def test_pipeline(tmp_path, capsys):
    src = tmp_path / "s.json"
    diagram = tmp_path / "d.json"
    svg = tmp_path / "s.svg"
    assert run(capsys, "gen", "random-general", 5, "--seed", 42, "--out", src)[0] == 0
    code, out, _ = run(capsys, "solve", src, "--out", diagram)
    assert code == 0
    crossings = int(out.split(":")[1])
    code, out, _ = run(capsys, "verify", src, diagram)
    assert code == 0
    assert out.splitlines() == ["valid: true", f"crossings: {crossings}"]
    assert run(capsys, "render", src, diagram, "--svg", svg)[0] == 0
    s = parse_storyline(src.read_bytes())
    orders, _ = svg_orders_and_gaps(svg.read_text(), s)
    assert orders == list(parse_diagram(diagram.read_bytes(), s).orders)


def test_solve_prints_diagram_without_out(star, capsys):
    code, out, _ = run(capsys, "solve", star)
    assert code == 0
    body, last = out.rsplit("}\n", 1)
    assert last == "crossings: 1\n"
    assert json.loads(body + "}")["orders"]


def test_layout_tree(star, tmp_path, capsys):
    diagram = tmp_path / "d.json"
    code, out, _ = run(capsys, "layout-tree", star, "--out", diagram)
    assert (code, out) == (0, "crossings: 1\nbound: 60\n")
    assert run(capsys, "verify", star, diagram)[0] == 0


def test_layout_tree_json(star, capsys):
    code, out, _ = run(capsys, "layout-tree", star, "--json")
    payload = json.loads(out)
    assert code == 0
    assert (payload["crossings"], payload["bound"], payload["solver"]) == (1, 60, "tree_heuristic")
    assert len(payload["diagram"]["orders"]) == len(payload["diagram"]["times"])


def test_layout_tree_rejects_cycle(capsys):
    code, _, err = run(capsys, "layout-tree", DATA / "fig1.json")
    assert code == 1 and "tree" in err


def test_bound(star, capsys):
    code, out, _ = run(capsys, "bound", star)
    assert code == 0
    assert out.splitlines() == ["L*: 4", "delta: 3", "m: 3", "bound: 1", "exact: true"]


def test_bound_over_budget(tmp_path, capsys):
    path = tmp_path / "t.json"
    run(capsys, "gen", "path", 13, "--out", path)
    code, out, _ = run(capsys, "bound", path, "--json")
    assert code == 0
    assert json.loads(out) == {"l_star": 12, "delta": 2, "m": 12, "bound": 0, "exact": False}


@pytest.mark.parametrize("kind, n, events", [("path", 4, 3), ("complete-binary-tree", 7, 6), ("star", 5, 4)])
def test_gen_event_counts(capsys, kind, n, events):
    code, out, _ = run(capsys, "gen", kind, n)
    assert code == 0
    assert len(json.loads(out)["events"]) == events


def test_gen_is_byte_stable(capsys):
    first = run(capsys, "gen", "random-general", 7, "--seed", 3, "--events", 9)[1]
    assert run(capsys, "gen", "random-general", 7, "--seed", 3, "--events", 9)[1] == first
    assert parse_storyline(first).m == 9


def test_gen_bad_size(capsys):
    assert run(capsys, "gen", "path", 0)[0] == 1


def test_verify_reports_violation(tmp_path, capsys):
    diagram = tmp_path / "d.json"
    diagram.write_text(json.dumps({"times": [-1, 0, 1, 2, 3], "orders": [["a", "b", "c"]] * 5}))
    code, out, _ = run(capsys, "verify", DATA / "three_cycle.json", diagram)
    assert code == 1
    assert "valid: false" in out
    assert "violation: event 2 {a, c} at time 2" in out


def test_verify_json(tmp_path, capsys):
    diagram = tmp_path / "d.json"
    run(capsys, "solve", DATA / "three_cycle.json", "--out", diagram)
    code, out, _ = run(capsys, "verify", DATA / "three_cycle.json", diagram, "--json")
    assert code == 0
    assert json.loads(out) == {"valid": True, "crossings": 1, "violations": []}


def test_render_refuses_invalid_without_force(tmp_path, capsys):
    diagram = tmp_path / "d.json"
    diagram.write_text(json.dumps({"times": [-1, 0, 1, 2, 3], "orders": [["a", "b", "c"]] * 5}))
    assert run(capsys, "render", DATA / "three_cycle.json", diagram)[0] == 1
    code, out, _ = run(capsys, "render", DATA / "three_cycle.json", diagram, "--force")
    assert code == 0 and out.startswith("<?xml")


def test_render_bad_deltas(tmp_path, capsys):
    diagram = tmp_path / "d.json"
    run(capsys, "solve", DATA / "three_cycle.json", "--out", diagram)
    code = run(capsys, "render", DATA / "three_cycle.json", diagram, "--delta-group", 30)[0]
    assert code == 1


def test_budget_exit_code(tmp_path, capsys):
    path = tmp_path / "big.json"
    run(capsys, "gen", "random-general", 10, "--out", path)
    code, _, err = run(capsys, "solve", path)
    assert code == 2 and "k=10" in err
    assert run(capsys, "solve", DATA / "fig1.json", "--budget", 5)[0] == 2


def test_invalid_and_missing_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "solve", bad)[0] == 1
    assert run(capsys, "solve", tmp_path / "missing.json")[0] == 3


def test_hidden_oracle(capsys):
    code, out, _ = run(capsys, "oracle", DATA / "three_cycle.json", "--json")
    assert (code, json.loads(out)) == (0, {"crossings": 1})
    assert run(capsys, "oracle", DATA / "fig1.json", "--max-k", 3)[0] == 2
    assert "oracle" not in subprocess.run(
        [sys.executable, "-m", "storyline.cli", "--help"], capture_output=True, text=True, check=True
    ).stdout


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "storyline.cli", "solve", str(DATA / "single_event.json"), "--json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["crossings"] == 0
