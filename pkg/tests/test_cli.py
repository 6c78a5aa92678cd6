import json

import pytest

from knotmosaic.cli import EXIT_INVALID, EXIT_MISSING, EXIT_PARSE, EXIT_USAGE, main, parse_crossings

from conftest import FIXTURES


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", FIXTURES / "unknot_2mosaic.txt")
    assert code == 0 and "connected, tiles=4, components=1" in out
    code, out, _ = run(capsys, "validate", FIXTURES / "knot_9_10_6mosaic.txt")
    assert code == 0 and "tiles=32, components=1" in out
    assert run(capsys, "validate", FIXTURES / "broken.txt")[0] == EXIT_PARSE
    assert run(capsys, "validate", FIXTURES / "disconnected.txt")[0] == EXIT_INVALID
    assert run(capsys, "validate", FIXTURES / "nope.txt")[0] == EXIT_MISSING


def test_trace(capsys):
    code, out, _ = run(capsys, "trace", FIXTURES / "trefoil_4mosaic.txt")
    assert code == 0 and out.startswith("PD[X(") and "crossings=3" in out
    code, _, err = run(capsys, "trace", FIXTURES / "link_4mosaic.txt")
    assert code == EXIT_INVALID and "2 components" in err


@pytest.mark.parametrize(
    "fixture,name",
    [
        ("trefoil_4mosaic.txt", "3_1"),
        ("knot_9_10_7mosaic.txt", "9_10"),
        ("unknot_2mosaic.txt", "unknot"),
        ("double_trefoil_8mosaic.txt", "composite: 3_1 # 3_1"),
    ],
)
def test_identify(capsys, fixture, name):
    code, out, _ = run(capsys, "identify", FIXTURES / fixture)
    assert code == 0
    assert out.splitlines()[0] == name


def test_identify_unknown_fingerprint(capsys, tmp_path):
    table = tmp_path / "tiny.csv"
    table.write_text("unknot,0,PD[]\n")
    code, out, err = run(capsys, "identify", FIXTURES / "trefoil_4mosaic.txt", "--table", table)
    assert code == 0
    assert out.startswith("unidentified") and "det=3" in out
    assert "warning" in err


def test_table_from_environment(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("KNOTMOSAIC_TABLE", str(tmp_path / "missing.csv"))
    assert run(capsys, "identify", FIXTURES / "trefoil_4mosaic.txt")[0] == EXIT_MISSING


def test_render(capsys, tmp_path):
    code, out, _ = run(capsys, "render", FIXTURES / "unknot_2mosaic.txt")
    assert code == 0 and "+--+" in out
    svg = tmp_path / "k.svg"
    assert run(capsys, "render", FIXTURES / "trefoil_4mosaic.txt", "--format", "svg", "--out", svg)[0] == 0
    assert svg.read_text().startswith("<svg")


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--masks", "23"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit):
        main(["enumerate", "--crossings", "2..5"])
    assert parse_crossings("8..9") == (8, 9)
    assert parse_crossings("9") == (9, 9)


def test_enumerate_then_tables(capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, out, _ = run(capsys, "enumerate", "--masks", "22a,22b", "--crossings", "8..9", "--workers", "1", "--out", rep, "-q")
    assert code == 0 and rep.exists()
    code, out, _ = run(capsys, "tables", rep, "--min-crossing-number", "8")
    assert code == 0
    assert "tile number 22: MATCH (10/10 expected names covered)" in out
    assert "not enumerated: tile numbers 24, 27, 32" in out


def test_enumerate_32_at_nine(capsys, tmp_path):
    rep = tmp_path / "r.json"
    assert run(capsys, "enumerate", "--masks", "32", "--crossings", "9", "--workers", "1", "--out", rep, "-q")[0] == 0
    data = json.loads(rep.read_text())
    (cell,) = data["cells"]
    nine = {n for n in cell["names"] if n.startswith("9_")}
    assert "9_8" in nine
    assert all(k["tile_number"] == 32 for k in data["knots"])
    code, out, _ = run(capsys, "tables", rep)
    assert "tile number 32" in out and "unexpected (0)" in out


def test_catalog_of_empty_report(capsys, tmp_path):
    rep = tmp_path / "empty.json"
    rep.write_text(json.dumps({"cells": [], "knots": []}))
    code, out, _ = run(capsys, "catalog", rep, "--out", tmp_path / "cat")
    assert code == 0
    assert (tmp_path / "cat" / "catalog.txt").read_text().startswith("# 0 knots")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "catalog", bad, "--out", tmp_path / "cat")[0] == EXIT_PARSE
