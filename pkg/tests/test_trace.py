import pytest

from knotmosaic.mosaic import Mosaic, apply_symmetry
from knotmosaic.trace import (
    Diagram,
    TraceError,
    components,
    connected_sum_factors,
    euler_ok,
    face_count,
    gauss_factors,
    is_alternating,
    is_reduced,
    mosaic_is_reduced,
    parse_pd,
    to_diagram,
    trace_knot,
    writhe,
)

from conftest import fixture_mosaic

KNOTS = [
    "unknot_2mosaic.txt",
    "trefoil_4mosaic.txt",
    "figure_eight_5mosaic.txt",
    "kink_4mosaic.txt",
    "knot_9_10_6mosaic.txt",
    "knot_9_10_7mosaic.txt",
]


def test_components():
    assert components(fixture_mosaic("unknot_2mosaic.txt")) == 1
    assert components(fixture_mosaic("link_4mosaic.txt")) == 2
    assert components(Mosaic([[0, 0], [0, 0]])) == 0


def test_link_and_undecided_are_rejected():
    with pytest.raises(TraceError):
        to_diagram(fixture_mosaic("link_4mosaic.txt"))
    with pytest.raises(TraceError):
        to_diagram(Mosaic([[0, 2, 1, 0], [2, 11, 9, 1], [3, 9, 10, 4], [0, 3, 4, 0]]))


def test_trefoil_trace():
    m = fixture_mosaic("trefoil_4mosaic.txt")
    steps = trace_knot(m)
    assert len(steps) == 12 + 4  # crossings and the double-arc cell are passed twice
    d = to_diagram(m)
    assert d.n_crossings == 3
    assert abs(writhe(d)) == 3
    assert is_alternating(d)
    assert is_reduced(d)


@pytest.mark.parametrize("name", KNOTS)
def test_euler_face_check(name):
    d = to_diagram(fixture_mosaic(name))
    assert euler_ok(d)
    if d.n_crossings:
        assert face_count(d) == d.n_crossings + 2


def test_kink_is_not_reduced():
    m = fixture_mosaic("kink_4mosaic.txt")
    assert not is_reduced(to_diagram(m))
    assert not mosaic_is_reduced(m)
    assert mosaic_is_reduced(fixture_mosaic("trefoil_4mosaic.txt"))


@pytest.mark.parametrize("name", KNOTS)
def test_symmetry_preserves_crossings_and_writhe_magnitude(name):
    m = fixture_mosaic(name)
    d = to_diagram(m)
    for g in range(8):
        e = to_diagram(apply_symmetry(m, g))
        assert e.n_crossings == d.n_crossings
        assert abs(writhe(e)) == abs(writhe(d))


def test_pd_round_trip_and_errors():
    d = parse_pd("PD[X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)]")
    assert parse_pd(d.pd_text()) == d
    assert d.signs == (1, 1, 1)
    assert d.mirror().signs == (-1, -1, -1)
    assert parse_pd("PD[]").n_crossings == 0
    for bad in ("X(1,2,3,4)", "PD[X(1,2,3)]", "PD[X(1,5,2,4);X(3,1,4,6);X(5,3,6,7)]"):
        with pytest.raises(ValueError):
            parse_pd(bad)


def test_gauss_factors():
    assert gauss_factors([0, 1, 2, 0, 1, 2]) == [[0, 1, 2, 3, 4, 5]]
    # 3_1 # 3_1: two closed runs
    parts = gauss_factors([0, 1, 2, 0, 1, 2, 3, 4, 5, 3, 4, 5])
    assert sorted(map(sorted, parts)) == [[0, 1, 2, 3, 4, 5], [6, 7, 8, 9, 10, 11]]


def test_connected_sum_factors_of_double_trefoil():
    one = parse_pd("PD[X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)]")
    assert connected_sum_factors(one) == [one]
    m = fixture_mosaic("double_trefoil_8mosaic.txt")
    assert components(m) == 1
    parts = connected_sum_factors(to_diagram(m))
    assert [p.n_crossings for p in parts] == [3, 3]
    assert all(isinstance(p, Diagram) and euler_ok(p) for p in parts)
