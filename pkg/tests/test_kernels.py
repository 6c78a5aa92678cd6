"""The numba kernels and their numpy fallbacks agree exactly."""
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from knotmosaic import _accel, kernels
from knotmosaic.enumeration import CHOICE_INTRA, CHOICE_IS_CROSSING, choice_rows, mask_geometry, run_cell, skeleton
from knotmosaic.invariants import pass_arrays, state_arrays
from knotmosaic.masks import load_mask
from knotmosaic.trace import to_diagram

from conftest import fixture_mosaic

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


@needs_numba
@pytest.mark.parametrize("name", ["trefoil_4mosaic.txt", "figure_eight_5mosaic.txt", "knot_9_10_7mosaic.txt"])
def test_loop_counts_agree(name):
    arrays = state_arrays(to_diagram(fixture_mosaic(name)))
    np.testing.assert_array_equal(kernels.loop_counts_numba(*arrays), kernels.loop_counts_numpy(*arrays))


@needs_numba
@pytest.mark.parametrize("mask_id,c", [("22a", 6), ("24", 9), ("32", 12)])
def test_placement_flags_agree(mask_id, c):
    geo = mask_geometry(load_mask(mask_id))
    rows = choice_rows(len(geo.slot_cells), c)[:3000]
    args = (
        geo.ext,
        geo.intra_fixed,
        geo.slot_cells,
        np.array(CHOICE_INTRA, np.int64),
        np.ascontiguousarray(rows, np.int64),
        np.array(CHOICE_IS_CROSSING, np.bool_),
    )
    a = kernels.placement_flags_numba(*args)
    b = kernels.placement_flags_numpy(*args)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)


@needs_numba
def test_alexander_batch_agrees():
    rng = np.random.default_rng(7)
    d = to_diagram(fixture_mosaic("knot_9_10_6mosaic.txt"))
    cx, over, sign = pass_arrays(d)
    # switching a set of crossings flips both of its passes and its sign
    flips = rng.integers(0, 2, size=(20, d.n_crossings)).astype(bool)
    overs = np.ascontiguousarray(over[0] ^ flips[:, cx])
    signs = np.ascontiguousarray(np.where(flips, -sign[0], sign[0]))
    a = kernels.alexander_batch_numba(cx, overs, signs)
    b = kernels.alexander_batch_numpy(cx, overs, signs)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)


def test_env_flag_selects_numpy():
    env = dict(os.environ, KNOTMOSAIC_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from knotmosaic import _accel; print(_accel.backend())"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_skeleton_counts_match_trace():
    m = fixture_mosaic("knot_9_10_7mosaic.txt")
    sk = skeleton(m)
    assert sk.c == 9
    assert len(sk.passes) == 18


def test_numpy_backend_gives_identical_cell(index):
    script = (
        "import json\n"
        "from knotmosaic.enumeration import run_cell\n"
        "from knotmosaic.knotdb import load_table\n"
        "from knotmosaic.masks import load_mask\n"
        "cell, w = run_cell(load_mask('22b'), 8, load_table())\n"
        "print(json.dumps([cell.to_json(), {k: v.hex() for k, v in sorted(w.items())}]))\n"
    )
    env = dict(os.environ, KNOTMOSAIC_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    cell, w = run_cell(load_mask("22b"), 8, index)
    assert json.loads(out.stdout) == [cell.to_json(), {k: v.hex() for k, v in sorted(w.items())}]
