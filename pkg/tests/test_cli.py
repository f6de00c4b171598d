import json

import pytest

from coarseplane.cli import main
from coarseplane.planar import load


@pytest.fixture
def grid_file(tmp_path):
    path = tmp_path / "grid.json"
    assert main(["gen", "grid", "--n", "6", "-o", str(path)]) == 0
    return path


def test_gen_round_trip(grid_file):
    text = grid_file.read_text()
    assert load(grid_file).dumps() == text


@pytest.mark.parametrize("argv", [
    ["gen", "tessellation", "--p", "3", "--q", "7", "--r", "2"],
    ["gen", "g1", "--ns", "2,3", "--seed", "1"],
    ["gen", "g2", "--ns", "2,3", "--seed", "1"],
    ["gen", "dyadic", "--levels", "2", "--width", "2"],
    ["gen", "dyadic_square", "--a", "2"],
    ["gen", "composite", "--N", "2"],
])
def test_gen_families(argv, tmp_path, capsys):
    out = tmp_path / "m.json"
    assert main(argv + ["-o", str(out)]) == 0
    assert json.loads(out.read_text())["format"] == "planar-map-v1"


def test_subcommands(grid_file, tmp_path, capsys):
    assert main(["analyze", "-i", str(grid_file), "--size-cap", "5"]) == 0
    assert json.loads(capsys.readouterr().out)["format"] == "report-v1"
    face = load(grid_file).bounded_faces()[0].id
    assert main(["hull", "-i", str(grid_file), "--face", str(face)]) == 0
    assert json.loads(capsys.readouterr().out)["face"] == face
    outer = load(grid_file).outer_face
    assert main(["hull", "-i", str(grid_file), "--face", str(outer)]) == 2
    assert main(["profile", "-i", str(grid_file), "--cap", "4"]) == 0
    assert "cheeger" in json.loads(capsys.readouterr().out)
    assert main(["export", "-i", str(grid_file), "--format", "dot"]) == 0
    assert capsys.readouterr().out.startswith("graph")
    assert main(["export", "-i", str(grid_file), "--format", "svg"]) == 0
    assert "<svg" in capsys.readouterr().out


def test_exit_codes(grid_file, tmp_path, capsys):
    assert main(["gen", "grid"]) == 2
    assert main(["hull", "-i", str(grid_file), "--face", "999"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "nope"}')
    assert main(["analyze", "-i", str(bad)]) == 2
    assert main(["analyze", "-i", str(tmp_path / "missing.json")]) == 2
    assert main(["profile", "-i", str(grid_file), "--cap", "6", "--enum-budget", "3"]) == 3
    with pytest.raises(SystemExit) as info:
        main(["gen", "nosuchfamily"])
    assert info.value.code == 2
