"""The five 6x6 layout masks and their 3x3 corner blocks.

A mask is a mosaic whose undecided cells carry code 12 (four connection
points).  Every decided cell is a fixed arc tile.  Four of the masks are
assembled from two corner templates, a *filled block* (8 tiles) and a
*partially filled block* (3 tiles), placed in the four quadrants; the fifth
(tile number 24) is the octagon-shaped inner board.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .mosaic import FOUR_POINT_ANY, Mosaic, MosaicError, is_suitably_connected, read_mosaic, transform_grid

MASK_DIR = Path(__file__).resolve().parent / "data" / "masks"
MASK_IDS = ("22a", "22b", "24", "27", "32")

# quadrant name -> symmetry index carrying the upper-right corner onto it
# (all four are involutions, so the same index maps back)
QUADRANTS = {"UR": 0, "UL": 4, "LR": 6, "LL": 2}

# the four inner cells of the upper-right block, in the order I3, I4, I7, I8
BLOCK_CELLS = ((1, 3), (1, 4), (2, 3), (2, 4))

_FILLED_UR = {(0, 3): 2, (0, 4): 1, (1, 5): 1, (2, 5): 4, (1, 3): 12, (1, 4): 12, (2, 3): 12, (2, 4): 12}
_PARTIAL_UR = {(1, 3): 1, (2, 3): 12, (2, 4): 1}


def corner_template(kind: str) -> np.ndarray:
    grid = np.zeros((6, 6), np.int8)
    for rc, code in (_FILLED_UR if kind == "filled" else _PARTIAL_UR).items():
        grid[rc] = code
    return grid


def assemble(blocks: dict[str, str]) -> np.ndarray:
    """Overlay corner templates; ``blocks`` maps quadrant -> 'filled' | 'partial'."""
    grid = np.zeros((6, 6), np.int8)
    for quad, kind in blocks.items():
        part = transform_grid(corner_template(kind), QUADRANTS[quad])
        grid = np.where(part != 0, part, grid)
    return grid


def octagon() -> np.ndarray:
    grid = np.full((6, 6), 0, np.int8)
    grid[1:5, 1:5] = FOUR_POINT_ANY
    grid[1, 1], grid[1, 4], grid[4, 1], grid[4, 4] = 2, 1, 3, 4
    grid[0, 2], grid[0, 3] = 2, 1
    grid[5, 2], grid[5, 3] = 3, 4
    grid[2, 0], grid[3, 0] = 2, 3
    grid[2, 5], grid[3, 5] = 1, 4
    return grid


BLOCK_LAYOUTS: dict[str, dict[str, str] | None] = {
    "22a": {"UL": "partial", "UR": "partial", "LL": "filled", "LR": "filled"},
    "22b": {"UL": "partial", "UR": "filled", "LL": "filled", "LR": "partial"},
    "24": None,
    "27": {"UL": "partial", "UR": "filled", "LL": "filled", "LR": "filled"},
    "32": {"UL": "filled", "UR": "filled", "LL": "filled", "LR": "filled"},
}


def build_grid(mask_id: str) -> np.ndarray:
    layout = BLOCK_LAYOUTS[mask_id]
    return octagon() if layout is None else assemble(layout)


@dataclass(frozen=True)
class LayoutMask:
    mask_id: str
    mosaic: Mosaic

    @property
    def tile_number(self) -> int:
        return int(np.count_nonzero(self.mosaic.cells))

    @property
    def blocks(self) -> dict[str, str] | None:
        return BLOCK_LAYOUTS.get(self.mask_id)

    @cached_property
    def slots(self) -> list[tuple[int, int]]:
        """Four-point cells in row-major order."""
        rows, cols = np.nonzero(self.mosaic.cells == FOUR_POINT_ANY)
        return list(zip(rows.tolist(), cols.tolist()))

    def quadrant_slots(self, quad: str) -> list[int] | None:
        """Slot indices of I3, I4, I7, I8 of the block in ``quad`` (upper-right frame).

        Cells that are fixed in a partial block give -1.
        """
        index = {rc: i for i, rc in enumerate(self.slots)}
        out = []
        for r, c in BLOCK_CELLS:
            probe = np.zeros((6, 6), np.int8)
            probe[r, c] = 1
            img = transform_grid(probe, QUADRANTS[quad])
            rr, cc = (int(v[0]) for v in np.nonzero(img))
            out.append(index.get((rr, cc), -1))
        return out


def load_mask(mask_id: str, directory: Path | None = None) -> LayoutMask:
    if mask_id not in MASK_IDS:
        raise MosaicError(f"unknown mask id {mask_id!r}; expected one of {', '.join(MASK_IDS)}")
    path = (directory or MASK_DIR) / f"{mask_id}.txt"
    m = read_mosaic(path)
    if m.n != 6 or not is_suitably_connected(m):
        raise MosaicError(f"mask {mask_id} is not a suitably connected 6x6 grid")
    return LayoutMask(mask_id, m)


def all_masks() -> list[LayoutMask]:
    return [load_mask(k) for k in MASK_IDS]


_DESCRIPTIONS = {
    "22a": "two filled corner blocks (bottom) and two partially filled blocks sharing a side (top)",
    "22b": "two filled corner blocks and two partially filled blocks on a diagonal",
    "24": "octagonal layout: the inner 4x4 board with its corners cut, plus two arcs per side",
    "27": "three filled corner blocks and one partially filled block",
    "32": "four filled corner blocks",
}


def mask_text(mask_id: str) -> str:
    grid = build_grid(mask_id)
    head = [
        f"# layout {mask_id}: {_DESCRIPTIONS[mask_id]}",
        f"# tile number {int(np.count_nonzero(grid))}, {int((grid == FOUR_POINT_ANY).sum())} four-point cells (code 12)",
    ]
    return "\n".join(head) + "\n" + Mosaic(grid).to_text()


def write_mask_files(directory: Path | None = None) -> None:
    directory = directory or MASK_DIR
    directory.mkdir(parents=True, exist_ok=True)
    for k in MASK_IDS:
        (directory / f"{k}.txt").write_text(mask_text(k), encoding="utf-8")
