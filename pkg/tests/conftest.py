from __future__ import annotations

from pathlib import Path

import pytest

from knotmosaic.enumeration import run_full_enumeration
from knotmosaic.knotdb import load_table
from knotmosaic.mosaic import read_mosaic

FIXTURES = Path(__file__).resolve().parent / "fixtures"
DATA = Path(__file__).resolve().parent / "data"


def fixture_mosaic(name: str):
    return read_mosaic(FIXTURES / name)


@pytest.fixture(scope="session")
def index():
    return load_table()


@pytest.fixture(scope="session")
def full_report(index):
    """Default run over all five layouts (pruned, default crossing ranges)."""
    return run_full_enumeration(index=index, workers=1)


# -- one summary line per acceptance criterion ------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _CRITERIA[number] = ("PASS" if rep.passed else "FAIL", text)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        verdict, text = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {verdict}  {text}")
