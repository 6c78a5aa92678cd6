import gzip

import pytest

from knotmosaic.knotdb import (
    TABLE_ENV,
    Fingerprint,
    TableError,
    default_table_path,
    fingerprint,
    identify,
    identify_detailed,
    knot_sort_key,
    load_table,
    name_crossings,
    read_table,
)
from knotmosaic.mosaic import apply_symmetry
from knotmosaic.trace import to_diagram

from conftest import fixture_mosaic

TREFOIL = "PD[X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)]"


def test_bundled_table_size(index):
    counts = {}
    for rec in index.records.values():
        counts[rec.crossing_number] = counts.get(rec.crossing_number, 0) + 1
    assert counts[3] == 1 and counts[8] == 21 and counts[10] == 165
    assert counts[11] == 552 and counts[12] == 2176 and counts[13] == 9988


def test_known_collisions_are_listed(index):
    groups = [set(v) for v in index.collisions().values()]
    assert any({"5_1", "10_132"} <= g for g in groups)
    assert any({"8_8", "10_129"} <= g for g in groups)


@pytest.mark.parametrize(
    "fixture,name",
    [
        ("unknot_2mosaic.txt", "unknot"),
        ("trefoil_4mosaic.txt", "3_1"),
        ("figure_eight_5mosaic.txt", "4_1"),
        ("kink_4mosaic.txt", "unknot"),
        ("knot_9_10_6mosaic.txt", "9_10"),
        ("knot_9_10_7mosaic.txt", "9_10"),
    ],
)
def test_identify_fixtures_over_the_symmetry_orbit(index, fixture, name):
    m = fixture_mosaic(fixture)
    for g in range(8):
        assert identify(to_diagram(apply_symmetry(m, g)), index) == {name}


def test_table_knots_identify_as_themselves(index):
    for name in ("3_1", "7_3", "9_10", "10_100", "11n71", "12a1148"):
        assert name in identify(index.records[name].pd, index)


def test_composite_is_not_a_prime_name(index):
    d = to_diagram(fixture_mosaic("double_trefoil_8mosaic.txt"))
    res = identify_detailed(d, index)
    assert res.composite
    assert res.summands == (frozenset({"3_1"}), frozenset({"3_1"}))
    assert res.label() == "3_1 # 3_1"
    assert not res.names


def test_unknot_fingerprint(index):
    fp = fingerprint(to_diagram(fixture_mosaic("unknot_2mosaic.txt")))
    assert fp == Fingerprint("1*t^0", "1*t^0", 1)
    assert identify_detailed(to_diagram(fixture_mosaic("unknot_2mosaic.txt")), index).label() == "unknot"


def test_sort_key_and_names():
    names = ["11n2", "10_3", "unknot", "11a9", "3_1", "10_12"]
    assert sorted(names, key=knot_sort_key) == ["unknot", "3_1", "10_3", "10_12", "11a9", "11n2"]
    assert name_crossings("13n2399") == 13
    assert name_crossings("weird") is None


def _write(path, text, gz=False):
    if gz:
        path.write_bytes(gzip.compress(text.encode()))
    else:
        path.write_text(text)
    return path


def test_small_table_and_cache(tmp_path):
    table = _write(tmp_path / "mini.csv.gz", f"# name,crossings,pd\nunknot,0,PD[]\n3_1,3,{TREFOIL}\n", gz=True)
    idx = load_table(table)
    assert len(idx) == 2
    assert (tmp_path / "mini.fingerprints.tsv.gz").exists()
    again = load_table(table)
    assert again.prints == idx.prints
    # a changed table invalidates the cache
    _write(table, f"3_1,3,{TREFOIL}\n")
    assert len(load_table(table)) == 1


@pytest.mark.parametrize(
    "text",
    [
        f"3_1,3,{TREFOIL}\n3_1,3,{TREFOIL}\n",
        f"3_1,4,{TREFOIL}\n",
        "3_1,3,PD[X(1,2,3)]\n",
        "3_1 3 PD[]\n",
    ],
)
def test_table_errors(tmp_path, text):
    with pytest.raises(TableError):
        read_table(_write(tmp_path / "bad.csv", text))


def test_missing_table(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_table(tmp_path / "absent.csv")


def test_env_variable_sets_default(monkeypatch, tmp_path):
    monkeypatch.setenv(TABLE_ENV, str(tmp_path / "t.csv"))
    assert default_table_path() == tmp_path / "t.csv"
