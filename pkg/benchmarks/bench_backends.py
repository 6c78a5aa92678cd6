"""Compare the numba kernels with the pure-numpy fallbacks.

Kernel timings call both variants directly in this process.  The end-to-end
timing runs one enumeration cell in a fresh interpreter per backend, with
``KNOTMOSAIC_NO_NUMBA=1`` for the numpy side.

    python3 benchmarks/bench_backends.py [--repeat 5] [--cell 27:10]
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from knotmosaic import _accel, kernels
from knotmosaic.enumeration import CHOICE_INTRA, CHOICE_IS_CROSSING, choice_rows, mask_geometry
from knotmosaic.invariants import pass_arrays, state_arrays
from knotmosaic.masks import load_mask
from knotmosaic.mosaic import parse_mosaic
from knotmosaic.trace import to_diagram

KNOT_9_10 = """
0  2  1  2  1  0
2  8  9  8  9  1
3  9 10  9 10  4
2  8  8  7 10  1
3 10  9 10  9  4
0  3  4  3  4  0
"""

CELL_SCRIPT = """
import time
from knotmosaic import _accel
from knotmosaic.enumeration import run_cell
from knotmosaic.knotdb import load_table
from knotmosaic.masks import load_mask
index = load_table()
mask = load_mask({mask!r})
run_cell(mask, {c}, index)  # compile / warm caches
t = time.perf_counter()
cell, _ = run_cell(mask, {c}, index)
print(_accel.backend(), time.perf_counter() - t, cell.assignments)
"""


def best_of(fn, repeat: int) -> float:
    fn()  # warm up (numba compiles on first call)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_cases():
    d = to_diagram(parse_mosaic(KNOT_9_10))
    arrays = state_arrays(d)
    yield "loop counts, 11 crossings (2048 states)", (kernels.loop_counts_numba, kernels.loop_counts_numpy), arrays

    geo = mask_geometry(load_mask("32"))
    rows = np.ascontiguousarray(choice_rows(len(geo.slot_cells), 12), np.int64)
    args = (
        geo.ext, geo.intra_fixed, geo.slot_cells,
        np.array(CHOICE_INTRA, np.int64), rows, np.array(CHOICE_IS_CROSSING, np.bool_),
    )
    yield f"placement filter, layout 32 (12 crossings, {len(rows)} rows)", (
        kernels.placement_flags_numba, kernels.placement_flags_numpy), args

    cx, over, sign = pass_arrays(d)
    rng = np.random.default_rng(0)
    flips = rng.integers(0, 2, size=(512, d.n_crossings)).astype(bool)
    overs = np.ascontiguousarray(over[0] ^ flips[:, cx])
    signs = np.ascontiguousarray(np.where(flips, -sign[0], sign[0]))
    yield "Alexander mod p, 512 assignments", (kernels.alexander_batch_numba, kernels.alexander_batch_numpy), (cx, overs, signs)


def run_cell_backend(mask: str, c: int, no_numba: bool) -> tuple[str, float, int]:
    env = dict(os.environ)
    if no_numba:
        env["KNOTMOSAIC_NO_NUMBA"] = "1"
    else:
        env.pop("KNOTMOSAIC_NO_NUMBA", None)
    out = subprocess.run(
        [sys.executable, "-c", CELL_SCRIPT.format(mask=mask, c=c)],
        env=env, capture_output=True, text=True, check=True,
    )
    name, secs, n = out.stdout.split()
    return name, float(secs), int(n)


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--cell", default="27:10", help="layout:crossings for the end-to-end timing")
    args = p.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        sys.exit("numba is not installed; nothing to compare")

    print(f"{'case':<62} {'numba':>10} {'numpy':>10} {'ratio':>7}")
    for label, (fast, slow), fargs in kernel_cases():
        a = best_of(lambda: fast(*fargs), args.repeat)
        b = best_of(lambda: slow(*fargs), args.repeat)
        print(f"{label:<62} {a * 1e3:>8.2f}ms {b * 1e3:>8.2f}ms {b / a:>6.1f}x")

    mask, c = args.cell.split(":")
    _, a, n = run_cell_backend(mask, int(c), no_numba=False)
    _, b, _ = run_cell_backend(mask, int(c), no_numba=True)
    label = f"whole cell, layout {mask} at {c} crossings ({n} assignments)"
    print(f"{label:<62} {a:>9.2f}s {b:>9.2f}s {b / a:>6.1f}x")


if __name__ == "__main__":
    main()
