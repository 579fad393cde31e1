import io
import json
import math
from fractions import Fraction

import pandas as pd
import pytest

from src.cli import _glue_signed_values, run
from src.designer.library import write_path_library
from src.graphs.io import load_graph, save_graph
from src.graphs.operations import parallel_compose, path_graph


@pytest.fixture
def graphs(tmp_path):
    files = {}
    for length in (1, 2, 3, 4, 5):
        files[length] = str(save_graph(path_graph(length), tmp_path / f"path_{length}.json"))
    return files


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_signed_values_are_glued():
    assert _glue_signed_values(['smatrix', 'g.json', '--k', '-pi/4']) == ['smatrix', 'g.json', '--k=-pi/4']
    assert _glue_signed_values(['-v', 'calibrate']) == ['-v', 'calibrate']


def test_calibrate(capsys):
    assert run(['calibrate']) == 0
    doc = _json(capsys)
    assert doc["schema"] == "qws/1"
    assert doc["sigma"] == -1


def test_charpoly(graphs, capsys):
    assert run(['charpoly', graphs[2]]) == 0
    doc = _json(capsys)
    assert doc["coefficients"] == ["0", "-2", "0", "1"]
    assert "vertex_deleted" in doc
    assert run(['charpoly', graphs[2], '--delete', '0']) == 0
    assert _json(capsys)["coefficients"] == ["-1", "0", "1"]


def test_smatrix_methods_agree(graphs, capsys):
    assert run(['smatrix', graphs[3], '--k', '-pi/4', '--method', 'all']) == 0
    doc = _json(capsys)
    assert set(doc["smatrices"]) == {"oracle", "closed", "munu"}
    assert all(d is not None and d < 1e-9 for d in doc["differences"].values())


def test_smatrix_oracle_entries(graphs, capsys):
    assert run(['smatrix', graphs[1], '--k', '-0.7']) == 0
    entry = _json(capsys)["entries"][0][1]
    assert abs(complex(entry["re"], entry["im"]) - complex(math.cos(0.7), -math.sin(0.7))) < 1e-12


def test_munu_display_convention(graphs, capsys):
    assert run(['--sign-convention', 'printed', 'munu', graphs[1], '--k', '-pi/4']) == 0
    doc = _json(capsys)
    assert doc["mu1"] == "0"
    assert doc["nu"] == "-1"
    assert doc["convention"] == "printed"
    assert run(['munu', graphs[1], '--k', '-pi/4']) == 0
    assert _json(capsys)["nu"] == "1"


def test_munu_at_pole(graphs, capsys):
    assert run(['munu', graphs[2], '--y', '0']) == 0
    doc = _json(capsys)
    assert doc["finite"] is False
    assert doc["laurent"]["nu"]["order"] == -1


def test_check_pt_example1_gadget(tmp_path, capsys):
    gadget = parallel_compose([path_graph(3)] * 4 + [path_graph(5)] * 9)
    path = save_graph(gadget, tmp_path / "example1.json")
    assert run(['check-pt', str(path), '--k', '-pi/4']) == 0
    doc = _json(capsys)
    assert doc["status"] == "perfect_transmission"
    assert doc["exact"] is True


def test_check_pt_human_output(graphs, capsys):
    assert run(['--output', 'human', 'check-pt', graphs[3], '--k', '-pi/4']) == 0
    out = capsys.readouterr().out
    assert out.startswith("=" * 70)
    assert "perfect_transmission" in out


def test_compose(graphs, tmp_path, capsys):
    out = tmp_path / "composed.json"
    assert run(['compose', '--series', graphs[1], graphs[2], '-o', str(out)]) == 0
    assert load_graph(out) == path_graph(3)
    assert _json(capsys)["n"] == 4
    assert run(['compose', '--parallel', graphs[3], graphs[5], '-o', str(out)]) == 0
    assert load_graph(out).n == 8


def test_search_jsonl(tmp_path, capsys):
    write_path_library(tmp_path / "lib", [1, 3, 4, 5])
    code = run(['search', '--library', str(tmp_path / "lib"), '--k', '-pi/4',
                '--max-total', '3', '--max-per', '3'])
    assert code == 0
    lines = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert lines
    assert all(line["pt"]["status"] == "perfect_transmission" for line in lines)
    assert {"path_3": 1, "path_5": 2} in [line["counts"] for line in lines]


def test_search_no_solution(tmp_path, capsys):
    save_graph(path_graph(1, Fraction(2)), tmp_path / "heavy.json")
    code = run(['search', '--library', str(tmp_path), '--k', '-pi/4', '--max-total', '2'])
    assert code == 0
    assert _json(capsys)["status"] == "no_solution"


def test_search_csv(tmp_path, capsys):
    write_path_library(tmp_path / "lib", [3, 5])
    assert run(['--output', 'csv', 'search', '--library', str(tmp_path / "lib"),
                '--k', '-pi/4', '--max-total', '3']) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert "1xpath_3+2xpath_5" in set(frame["counts"])


def test_efflength(graphs, capsys):
    assert run(['efflength', graphs[3], '--k', '-pi/4']) == 0
    doc = _json(capsys)
    assert doc["effective_length"] == pytest.approx(3.0)
    assert doc["exact"] == "3"
    assert run(['efflength', graphs[4], '--k', '-pi/4']) == 0
    doc = _json(capsys)
    assert doc["effective_length"] is None
    assert doc["prerequisite"]["branch"] == "pole"
    assert doc["prerequisite"]["satisfied"] is False


def test_hyperbola_csv(capsys):
    assert run(['hyperbola', '--k', '-pi/4', '--samples', '3', '--format', 'csv']) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert list(frame.columns) == ["theta", "mu", "nu"]
    row = frame[(frame.theta + math.pi / 4).abs() < 1e-12].iloc[0]
    assert row.mu == pytest.approx(0.0, abs=1e-12)
    assert row.nu == pytest.approx(-1.0)


def test_hyperbola_json(capsys):
    assert run(['hyperbola', '--k', '-pi/3', '--samples', '4']) == 0
    doc = _json(capsys)
    assert doc["convention"] == "printed"
    assert len(doc["points"]) == 2 * 4


@pytest.mark.parametrize("argv, code", [
    (['smatrix', 'missing.json', '--k', '-pi/4'], 2),
    (['frobnicate'], 1),
    (['smatrix'], 1),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv) == code


def test_bad_momentum_exit_code(graphs, capsys):
    assert run(['smatrix', graphs[1], '--k', 'north']) == 2
    assert run(['smatrix', graphs[1], '--k', '0.5']) == 2
