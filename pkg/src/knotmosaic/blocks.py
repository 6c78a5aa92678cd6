"""Building blocks: the admissible fillings of a 3x3 corner block.

Fillings are written in the upper-right frame as the tiles of I3, I4, I7, I8
(the inner cells of the corner), with slot choices 0 = T7, 1 = T8,
2 = crossing.  A block in another quadrant is read through the reflection or
rotation that carries it to the upper right, which swaps T7 and T8 exactly
when that map is a reflection.
"""
from __future__ import annotations

import numpy as np

from .masks import LayoutMask

T7C, T8C, XC = 0, 1, 2

# filled blocks: name -> (I3, I4, I7, I8)
FILLED_BLOCKS: dict[str, tuple[int, int, int, int]] = {
    "2a": (XC, XC, T8C, T8C),
    "2a'": (T8C, XC, T8C, XC),
    "2b": (XC, T7C, XC, T8C),
    "2b'": (T8C, T7C, XC, XC),
    "3a": (XC, XC, T8C, XC),
    "3b": (XC, T7C, XC, XC),
    "3c": (XC, XC, XC, T8C),
    "3c'": (T8C, XC, XC, XC),
    "4": (XC, XC, XC, XC),
}
# partially filled blocks: only I7 is undecided
PARTIAL_BLOCKS: dict[str, int] = {"p0": T7C, "p1": XC}

BLOCK_NAMES = tuple(FILLED_BLOCKS) + tuple(PARTIAL_BLOCKS)
INVALID = -1
_ID = {name: i for i, name in enumerate(BLOCK_NAMES)}

# blocks that may occur at most once per mosaic
TURNBACK = ("4", "2b", "2b'")
TWO_A = ("2a", "2a'")

_REFLECTING = {"UR": False, "UL": True, "LR": True, "LL": False}
_ADJACENT = {
    "UL": ("UR", "LL"),
    "UR": ("UL", "LR"),
    "LL": ("UL", "LR"),
    "LR": ("UR", "LL"),
}
_DIAGONAL = {"UL": "LR", "UR": "LL", "LL": "UR", "LR": "UL"}


def _filled_table() -> np.ndarray:
    table = np.full(81, INVALID, np.int64)
    for name, pat in FILLED_BLOCKS.items():
        code = ((pat[0] * 3 + pat[1]) * 3 + pat[2]) * 3 + pat[3]
        table[code] = _ID[name]
    return table


_FILLED = _filled_table()
_SWAP78 = np.array([T8C, T7C, XC])


def block_types(mask: LayoutMask, choices: np.ndarray) -> dict[str, np.ndarray]:
    """Block id (index into :data:`BLOCK_NAMES`, or -1) per quadrant and row."""
    choices = np.asarray(choices)
    out = {}
    for quad, kind in (mask.blocks or {}).items():
        cols = mask.quadrant_slots(quad)
        if kind == "filled":
            vals = choices[:, cols]
            if _REFLECTING[quad]:
                vals = _SWAP78[vals]
            code = ((vals[:, 0] * 3 + vals[:, 1]) * 3 + vals[:, 2]) * 3 + vals[:, 3]
            out[quad] = _FILLED[code]
        else:
            v = choices[:, cols[2]]
            if _REFLECTING[quad]:
                v = _SWAP78[v]
            ids = np.full(len(v), INVALID, np.int64)
            ids[v == T7C] = _ID["p0"]
            ids[v == XC] = _ID["p1"]
            out[quad] = ids
    return out


def _is(ids: np.ndarray, names) -> np.ndarray:
    return np.isin(ids, [_ID[n] for n in names])


def prune_by_observations(mask: LayoutMask, choices: np.ndarray, extra_rules: bool = True) -> np.ndarray:
    """Boolean keep-mask over placement rows.

    A row survives iff every corner block is a building block and at most one
    block is a four-crossing or turnback block.  On the 27 layout the three
    extra reductions for a partially filled block next to two-crossing blocks
    also apply when ``extra_rules`` is set.  Layouts without corner blocks
    (the 24 layout) are returned unpruned.
    """
    choices = np.asarray(choices)
    keep = np.ones(len(choices), bool)
    types = block_types(mask, choices)
    if not types:
        return keep
    turnbacks = np.zeros(len(choices), np.int64)
    for ids in types.values():
        keep &= ids != INVALID
        turnbacks += _is(ids, TURNBACK)
    keep &= turnbacks <= 1
    if extra_rules and mask.mask_id == "27":
        keep &= ~_reducible_27(mask, types)
    return keep


def _reducible_27(mask: LayoutMask, types: dict[str, np.ndarray]) -> np.ndarray:
    quad = next(q for q, kind in mask.blocks.items() if kind == "partial")
    part = types[quad]
    adj = [types[q] for q in _ADJACENT[quad]]
    diag = types[_DIAGONAL[quad]]
    p0 = part == _ID["p0"]
    p1 = part == _ID["p1"]
    r1 = p0 & (_is(adj[0], TWO_A) | _is(adj[1], TWO_A))
    r2 = p0 & _is(diag, TWO_A) & (_is(adj[0], ("3a",)) | _is(adj[1], ("3a",)))
    n_two_a = sum(_is(t, TWO_A).astype(np.int64) for t in (*adj, diag))
    r3 = p1 & (n_two_a >= 2)
    return r1 | r2 | r3


def describe(mask: LayoutMask, row: np.ndarray) -> dict[str, str]:
    """Block names of one placement row, for reports and debugging."""
    types = block_types(mask, np.asarray(row)[None, :])
    return {q: (BLOCK_NAMES[int(ids[0])] if ids[0] >= 0 else "invalid") for q, ids in types.items()}
