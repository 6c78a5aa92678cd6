"""Invariants checked against KnotInfo's own values (an independent oracle)."""
import csv

import pytest
from hypothesis import given, settings, strategies as st

from knotmosaic.invariants import (
    CrossingLimitError,
    alexander,
    alexander_fast,
    determinant,
    jones,
    kauffman_bracket,
)
from knotmosaic.knotdb import fold_jones
from knotmosaic.poly import LaurentPoly
from knotmosaic.trace import parse_pd, to_diagram

from conftest import DATA, fixture_mosaic


def _reference():
    with open(DATA / "knotinfo_reference.csv", encoding="utf-8") as fh:
        rows = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(rows, delimiter=";"))


REFERENCE = _reference()
NAMES = [r["name"] for r in REFERENCE]


def test_reference_covers_all_knots_to_ten_crossings():
    assert len(REFERENCE) == 250  # unknot + 249 prime knots


@pytest.fixture(scope="module")
def diagrams(index):
    return {name: index.records[name].pd for name in NAMES}


def test_jones_alexander_determinant_match_reference(diagrams):
    for row in REFERENCE:
        d = diagrams[row["name"]]
        v = jones(d)
        ref_v = LaurentPoly.from_text(row["jones"])
        assert fold_jones(v) == fold_jones(ref_v), row["name"]
        assert alexander(d) == LaurentPoly.from_text(row["alexander"]), row["name"]
        assert determinant(d) == int(row["determinant"]), row["name"]


def test_modular_alexander_matches_exact(diagrams):
    for name, d in diagrams.items():
        assert alexander_fast(d) == alexander(d), name


@pytest.mark.parametrize("name", ["3_1", "4_1", "8_19", "10_132", "10_161"])
def test_basic_properties(diagrams, name):
    d = diagrams[name]
    v = jones(d)
    a = alexander(d)
    assert v(1) == 1
    assert a(1) == 1
    assert a == a.invert_variable()
    assert determinant(d) % 2 == 1
    assert jones(d.mirror()) == v.invert_variable()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NAMES))
def test_properties_over_the_table(diagrams, name):
    d = diagrams[name]
    v = jones(d)
    a = alexander_fast(d)
    assert v(1) == 1
    assert a == a.invert_variable()
    assert a(1) == 1
    assert abs(v(-1)) == abs(a(-1)) and abs(a(-1)) % 2 == 1


def test_trefoil_values():
    d = parse_pd("PD[X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)]")
    assert fold_jones(jones(d)) == fold_jones(LaurentPoly({1: 1, 3: 1, 4: -1}))
    assert alexander(d) == LaurentPoly({-1: 1, 0: -1, 1: 1})
    assert determinant(d) == 3


def test_unknot_and_kink():
    assert kauffman_bracket(parse_pd("PD[]")) == LaurentPoly({0: 1})
    d = to_diagram(fixture_mosaic("kink_4mosaic.txt"))
    assert jones(d) == LaurentPoly({0: 1})
    assert alexander(d) == LaurentPoly({0: 1})


def test_crossing_limit():
    d = to_diagram(fixture_mosaic("knot_9_10_6mosaic.txt"))
    with pytest.raises(CrossingLimitError):
        jones(d, limit=10)
