import numpy as np
import pytest
from hypothesis import given, strategies as st

from knotmosaic.mosaic import (
    SYMMETRIES,
    Mosaic,
    MosaicError,
    apply_symmetry,
    canonical_form,
    compose,
    crossing_count,
    is_suitably_connected,
    parse_mosaic,
    ports,
    stabilizer,
    symmetry_images,
    tile_number,
)

from conftest import fixture_mosaic

FIXTURE_FILES = [
    "unknot_2mosaic.txt",
    "trefoil_4mosaic.txt",
    "figure_eight_5mosaic.txt",
    "kink_4mosaic.txt",
    "link_4mosaic.txt",
    "knot_9_10_6mosaic.txt",
    "knot_9_10_7mosaic.txt",
]


def test_tile_ports():
    assert ports(0) == frozenset()
    assert ports(5) == frozenset({0, 2})
    assert all(len(ports(c)) == 4 for c in range(7, 13))
    assert all(len(ports(c)) == 2 for c in range(1, 7))


def test_parse_and_text_round_trip():
    m = fixture_mosaic("trefoil_4mosaic.txt")
    assert m.n == 4
    assert parse_mosaic(m.to_text()) == m
    assert tile_number(m) == 12
    assert crossing_count(m) == 3


@pytest.mark.parametrize(
    "text",
    ["", "# only a comment\n", "1 2\n3\n", "2 1\n3 x\n", "2 1\n3 13\n", "0 -1\n0 0\n"],
)
def test_parse_errors(text):
    with pytest.raises(MosaicError):
        parse_mosaic(text)


def test_connectivity():
    assert is_suitably_connected(fixture_mosaic("unknot_2mosaic.txt"))
    assert not is_suitably_connected(fixture_mosaic("disconnected.txt"))
    assert not is_suitably_connected(Mosaic([[5]]))
    assert is_suitably_connected(Mosaic([[0]]))


def test_mosaic_is_immutable():
    m = fixture_mosaic("unknot_2mosaic.txt")
    with pytest.raises(ValueError):
        m.cells[0, 0] = 0


def test_group_structure():
    assert SYMMETRIES[0] == (0, False)
    table = [[compose(g, h) for h in range(8)] for g in range(8)]
    for g in range(8):
        assert sorted(table[g]) == list(range(8))
        assert table[0][g] == g


@pytest.mark.parametrize("name", FIXTURE_FILES)
def test_symmetry_action(name):
    m = fixture_mosaic(name)
    for g in range(8):
        for h in range(8):
            assert apply_symmetry(apply_symmetry(m, h), g) == apply_symmetry(m, compose(g, h))
        img = apply_symmetry(m, g)
        assert is_suitably_connected(img)
        assert tile_number(img) == tile_number(m)
        assert crossing_count(img) == crossing_count(m)


def test_rotation_swaps_t7_t8_and_crossing_types():
    m = Mosaic([[7]])
    assert apply_symmetry(m, 1).cells[0, 0] == 8
    assert apply_symmetry(Mosaic([[9]]), 1).cells[0, 0] == 10
    assert apply_symmetry(Mosaic([[9]]), 4).cells[0, 0] == 9  # reflection keeps the over-strand direction


@given(st.sampled_from(FIXTURE_FILES), st.integers(0, 7))
def test_canonical_form_idempotent_and_orbit_invariant(name, g):
    m = fixture_mosaic(name)
    canon = canonical_form(m)
    assert canonical_form(canon) == canon
    assert canonical_form(apply_symmetry(m, g)) == canon
    assert canon in symmetry_images(m)


def test_stabilizer_of_symmetric_mosaic():
    assert len(stabilizer(fixture_mosaic("unknot_2mosaic.txt"))) == 8


def test_ordering_and_hash():
    a = Mosaic(np.zeros((2, 2), np.int8))
    b = fixture_mosaic("unknot_2mosaic.txt")
    assert a < b
    assert len({a, b, Mosaic(b.cells.copy())}) == 2
