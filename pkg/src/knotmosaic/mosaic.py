"""Mosaic tiles, n x n mosaics, connectivity, symmetry and the text format.

Tile codes follow the usual ordering T0..T10.  Two extra codes stand for
undecided tiles during layout work: 11 is a crossing of either type and 12 is
any tile with four connection points.

Ports are edge midpoints, numbered N=0, E=1, S=2, W=3.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

N, E, S, W = 0, 1, 2, 3
PORT_NAMES = "NESW"
# (dr, dc) for leaving a cell through each port; rows grow southwards
STEP = ((-1, 0), (0, 1), (1, 0), (0, -1))

BLANK = 0
T7, T8, T9, T10 = 7, 8, 9, 10
CROSSING_ANY = 11
FOUR_POINT_ANY = 12
N_CODES = 13

CROSSINGS = (T9, T10, CROSSING_ANY)
TILE_NAMES = tuple(f"T{i}" for i in range(11)) + ("CrossingAny", "FourPointAny")

# partner[code][port] -> paired port, -1 if the port is unused.
# FourPointAny has all four ports but no decided pairing (-2).
_PAIRS = {
    0: (),
    1: ((S, W),),
    2: ((S, E),),
    3: ((N, E),),
    4: ((N, W),),
    5: ((N, S),),
    6: ((E, W),),
    7: ((N, E), (S, W)),
    8: ((N, W), (S, E)),
    9: ((N, S), (E, W)),
    10: ((N, S), (E, W)),
    11: ((N, S), (E, W)),
}


def _partner_table() -> np.ndarray:
    table = np.full((N_CODES, 4), -1, dtype=np.int8)
    for code, pairs in _PAIRS.items():
        for a, b in pairs:
            table[code, a] = b
            table[code, b] = a
    table[FOUR_POINT_ANY, :] = -2
    return table


PARTNER = _partner_table()
PARTNER.setflags(write=False)
HAS_PORT = PARTNER != -1


def ports(code: int) -> frozenset[int]:
    """Connection points of a tile."""
    return frozenset(p for p in range(4) if HAS_PORT[code, p])


# -- the dihedral group of the square ---------------------------------------

# A symmetry is (k, flip): reflect left-right if flip, then rotate k quarter
# turns counterclockwise.  Index 0 is the identity.
SYMMETRIES: tuple[tuple[int, bool], ...] = tuple((k, f) for f in (False, True) for k in range(4))


def _port_map(k: int, flip: bool) -> tuple[int, ...]:
    out = []
    for p in range(4):
        q = p
        if flip and q in (E, W):
            q = E if q == W else W
        for _ in range(k):
            q = (q + 3) % 4  # ccw quarter turn: N->W, W->S, S->E, E->N
        out.append(q)
    return tuple(out)


def _tile_map(k: int, flip: bool) -> np.ndarray:
    pm = _port_map(k, flip)
    by_pairs = {}
    for code in range(11):
        key = frozenset(frozenset(p) for p in _PAIRS[code])
        if code in (T9, T10):
            over = frozenset((E, W)) if code == T9 else frozenset((N, S))
            key = (key, over)
        by_pairs[key] = code
    out = np.arange(N_CODES, dtype=np.int8)
    for code in range(11):
        img = frozenset(frozenset(pm[p] for p in pair) for pair in _PAIRS[code])
        if code in (T9, T10):
            over = frozenset((E, W)) if code == T9 else frozenset((N, S))
            img = (img, frozenset(pm[p] for p in over))
        out[code] = by_pairs[img]
    return out


PORT_MAPS = tuple(_port_map(k, f) for k, f in SYMMETRIES)
TILE_MAPS = np.stack([_tile_map(k, f) for k, f in SYMMETRIES])
TILE_MAPS.setflags(write=False)


def transform_grid(grid: np.ndarray, g: int) -> np.ndarray:
    """Apply symmetry index ``g`` to a code grid (cells and tile kinds)."""
    k, flip = SYMMETRIES[g]
    out = np.fliplr(grid) if flip else grid
    out = np.rot90(out, k)
    return TILE_MAPS[g][out]


def compose(g: int, h: int) -> int:
    """Index of the symmetry 'apply h, then g'."""
    probe = np.arange(9, dtype=np.int8).reshape(3, 3)
    target = np.rot90(np.fliplr(probe) if SYMMETRIES[h][1] else probe, SYMMETRIES[h][0])
    target = np.rot90(np.fliplr(target) if SYMMETRIES[g][1] else target, SYMMETRIES[g][0])
    for i, (k, f) in enumerate(SYMMETRIES):
        img = np.rot90(np.fliplr(probe) if f else probe, k)
        if np.array_equal(img, target):
            return i
    raise AssertionError("group not closed")


# -- mosaics ----------------------------------------------------------------


class MosaicError(ValueError):
    """Malformed mosaic text or an operation on an unsuitable mosaic."""


class Mosaic:
    """An immutable n x n grid of tile codes."""

    __slots__ = ("cells",)

    def __init__(self, cells: np.ndarray | Sequence[Sequence[int]]):
        arr = np.array(cells, dtype=np.int8)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise MosaicError(f"mosaic must be a non-empty square grid, got shape {arr.shape}")
        if arr.min() < 0 or arr.max() >= N_CODES:
            raise MosaicError("tile codes must lie in 0..12")
        arr.setflags(write=False)
        self.cells = arr

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    def __getitem__(self, rc: tuple[int, int]) -> int:
        return int(self.cells[rc])

    def __eq__(self, other) -> bool:
        return isinstance(other, Mosaic) and np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash((self.n, self.cells.tobytes()))

    def __lt__(self, other: "Mosaic") -> bool:
        return self.key() < other.key()

    def key(self) -> tuple[int, ...]:
        """Row-major code sequence; the order used by :func:`canonical_form`."""
        return tuple(int(x) for x in self.cells.ravel())

    def __repr__(self) -> str:
        return f"Mosaic({self.cells.tolist()})"

    def to_text(self) -> str:
        width = 2 if self.cells.max() >= 10 else 1
        return "\n".join(" ".join(f"{int(c):>{width}}" for c in row) for row in self.cells) + "\n"

    __str__ = to_text

    def is_determinate(self) -> bool:
        return bool((self.cells < CROSSING_ANY).all())

    def crossing_cells(self) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(np.isin(self.cells, CROSSINGS))
        return list(zip(rows.tolist(), cols.tolist()))

    def nonblank_cells(self) -> Iterator[tuple[int, int]]:
        for r, c in zip(*np.nonzero(self.cells)):
            yield int(r), int(c)

    def replace(self, changes: dict[tuple[int, int], int]) -> "Mosaic":
        arr = self.cells.copy()
        for (r, c), code in changes.items():
            arr[r, c] = code
        return Mosaic(arr)


def parse_mosaic(text: str) -> Mosaic:
    """Parse the plain-text grid format; ``#`` starts a comment line.

    Connectivity is not checked here.
    """
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise MosaicError(f"line {lineno}: non-integer token") from exc
        for code in row:
            if not 0 <= code < N_CODES:
                raise MosaicError(f"line {lineno}: unknown tile code {code}")
        rows.append(row)
    if not rows:
        raise MosaicError("empty mosaic")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise MosaicError(f"mosaic is not square ({n} rows, row lengths {[len(r) for r in rows]})")
    return Mosaic(rows)


def read_mosaic(path) -> Mosaic:
    with open(path, encoding="utf-8") as fh:
        return parse_mosaic(fh.read())


def is_suitably_connected(m: Mosaic) -> bool:
    """Every connection point meets one on the neighbouring tile, none face outward."""
    cells = m.cells
    n = m.n
    for r in range(n):
        for c in range(n):
            code = cells[r, c]
            for p in range(4):
                if not HAS_PORT[code, p]:
                    continue
                dr, dc = STEP[p]
                rr, cc = r + dr, c + dc
                if not (0 <= rr < n and 0 <= cc < n):
                    return False
                if not HAS_PORT[cells[rr, cc], (p + 2) % 4]:
                    return False
    return True


def tile_number(m: Mosaic) -> int:
    return int(np.count_nonzero(m.cells))


def crossing_count(m: Mosaic) -> int:
    return int(np.isin(m.cells, CROSSINGS).sum())


def apply_symmetry(m: Mosaic, g: int) -> Mosaic:
    """Image of ``m`` under symmetry index ``g`` (see :data:`SYMMETRIES`)."""
    return Mosaic(transform_grid(m.cells, g))


def symmetry_images(m: Mosaic) -> list[Mosaic]:
    return [apply_symmetry(m, g) for g in range(8)]


def canonical_form(m: Mosaic) -> Mosaic:
    """Lexicographically least row-major code sequence over the 8 images."""
    return min(symmetry_images(m), key=Mosaic.key)


def stabilizer(m: Mosaic) -> list[int]:
    return [g for g in range(8) if apply_symmetry(m, g) == m]


def from_rows(rows: Iterable[Iterable[int]]) -> Mosaic:
    return Mosaic([list(r) for r in rows])
