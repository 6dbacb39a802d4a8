import json
import subprocess
import sys

import pytest

from tilemealy.cli import main
from tilemealy.mealy import format_automaton, parse_automaton


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_nw_check(capsys, fixtures_dir):
    assert report(capsys, "nw-check", fixtures_dir / "mono.tiles")[0] == 0
    code, rep = report(capsys, "nw-check", fixtures_dir / "collision.tiles")
    assert code == 1 and rep["conflict"] == ["a", "a2"]
    code, _, err = run(capsys, "nw-check", fixtures_dir / "badcolor.tiles")
    assert code == 2 and "line 2, col 8" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "nw-check", tmp_path / "nope.tiles")
    assert code == 2 and "nope.tiles" in err


def test_tile_torus_least(capsys, fixtures_dir, tmp_path):
    svg = tmp_path / "t.svg"
    code, rep = report(capsys, "tile", fixtures_dir / "stripes.tiles", 4, 4, "--svg", svg)
    assert code == 0 and rep["status"] == "found" and len(rep["tiling"]["rows"]) == 4
    assert svg.read_text().startswith("<svg")
    code, rep = report(capsys, "torus", fixtures_dir / "vert.tiles", "--max", 4, 4)
    assert code == 0 and rep["status"] == "none_up_to_max"
    code, rep = report(capsys, "least-n", fixtures_dir / "vert.tiles", "--max-n", 3)
    assert code == 0 and rep["n"] == 1
    code, _, _ = run(capsys, "tile", fixtures_dir / "stripes.tiles", 0, 4)
    assert code == 2


def test_reduce(capsys, fixtures_dir, tmp_path):
    out = tmp_path / "mono.mealy"
    code, rep = report(capsys, "reduce", fixtures_dir / "mono.tiles", "-o", out)
    assert code == 0
    text = out.read_text()
    rules = [line for line in text.splitlines() if "->" in line]
    assert len(rules) == 4
    assert format_automaton(parse_automaton(text)) == text
    code, text, _ = run(capsys, "reduce", fixtures_dir / "vert.tiles")
    outputs = {line.split("/")[1].strip() for line in text.splitlines() if "->" in line}
    assert outputs == {"_bot"}
    code, rep = report(capsys, "reduce", fixtures_dir / "collision.tiles")
    assert code == 1


def test_enumerate_and_order(capsys, fixtures_dir, tmp_path):
    code, rep = report(capsys, "enumerate", fixtures_dir / "identity.mealy")
    assert code == 0 and rep["verdict"] == "finite" and rep["size"] == 1
    for name, sink in (("vert", True), ("mono", True)):
        path = tmp_path / f"{name}.mealy"
        run(capsys, "reduce", fixtures_dir / f"{name}.tiles", "-o", path, *(["--sink"] if sink else []))
    code, rep = report(capsys, "enumerate", tmp_path / "vert.mealy")
    assert rep["verdict"] == "finite" and rep["size"] == 1
    code, rep = report(capsys, "enumerate", tmp_path / "mono.mealy", "--budget-elements", 500)
    assert code == 3 and rep["verdict"] == "budget_exceeded" and rep["size"] >= 500
    code, rep = report(capsys, "order", tmp_path / "vert.mealy", "_bot", "c")
    assert code == 0 and rep["n"] == 1
    code, rep = report(capsys, "order", tmp_path / "mono.mealy", "_bot", "c", "--max-n", 50)
    assert code == 1 and rep["n"] is None
    code, _, err = run(capsys, "order", tmp_path / "mono.mealy", "_bot", "nope")
    assert code == 2 and "nope" in err


def test_verify_and_semidecide(capsys, fixtures_dir):
    code, rep = report(capsys, "verify-lemma1", fixtures_dir / "mono.tiles", "-M", 8, "-N", 8,
                       "--prefix-len", 32)
    assert code == 0 and rep["pass"] and rep["distinct_powers"] == 9
    code, rep = report(capsys, "verify-claim", fixtures_dir / "vert.tiles", "--prefix-len", 3)
    assert code == 0 and rep["pass"] and rep["least_n"]["n"] == 1
    code, rep = report(capsys, "verify-claim", fixtures_dir / "vert.tiles", "--mode", "sample",
                       "--samples", 50)
    assert code == 0 and rep["checked"] == 50
    code, rep = report(capsys, "verify-lemma1", fixtures_dir / "vert.tiles", "--max-px", 2, "--max-py", 2)
    assert code == 3
    code, rep = report(capsys, "semidecide", fixtures_dir / "mono.tiles")
    assert code == 0 and rep["status"] == "infinite_certified"
    code, rep = report(capsys, "semidecide", fixtures_dir / "vert.tiles")
    assert code == 0 and rep["certificate"]["n"] == 1 and rep["certificate"]["bound"] == 7
    code, rep = report(capsys, "semidecide", fixtures_dir / "stripes.tiles", "--budget-nodes", 1)
    assert code == 3 and rep["status"] == "unknown"
    code, _, _ = run(capsys, "semidecide", fixtures_dir / "collision.tiles")
    assert code == 2


def test_render(capsys, fixtures_dir, tmp_path):
    tiling = tmp_path / "tiling.json"
    run(capsys, "torus", fixtures_dir / "stripes.tiles", "--json", tiling)
    svg = tmp_path / "out.svg"
    code, rep = report(capsys, "render", fixtures_dir / "stripes.tiles", tiling, "--svg", svg)
    assert code == 0 and rep["valid"]
    assert svg.read_text().count("<polygon") == 8


def test_text_format(capsys, fixtures_dir):
    code, out, _ = run(capsys, "least-n", fixtures_dir / "vert.tiles", "--format", "text")
    assert "n: 1" in out.splitlines()


def test_env_budget(capsys, fixtures_dir, monkeypatch):
    monkeypatch.setenv("TILEMEALY_DEFAULT_BUDGET", "1")
    code, rep = report(capsys, "tile", fixtures_dir / "stripes.tiles", 3, 3)
    assert code == 3 and rep["status"] == "budget_exceeded"
    monkeypatch.setenv("TILEMEALY_DEFAULT_BUDGET", "0")
    assert run(capsys, "tile", fixtures_dir / "stripes.tiles", 3, 3)[0] == 2


def test_json_output_deterministic(capsys, fixtures_dir, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        run(capsys, "semidecide", fixtures_dir / "stripes.tiles", "--json", path)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_console_entry_point(fixtures_dir):
    proc = subprocess.run([sys.executable, "-m", "tilemealy.cli", "nw-check",
                           str(fixtures_dir / "collision.tiles")], capture_output=True, text=True)
    assert proc.returncode == 1
