"""Exhaustive search over layout masks.

For a mask and a crossing count c, every way of turning c four-point cells
into crossings and the rest into T7/T8 is generated, filtered (single
component, reduced, optional building-block pruning) and reduced to one
representative per symmetry class.  Each surviving placement is then swept
over all 2^c over/under assignments at once: the bracket of every assignment
comes from one table of state loop counts, and assignments are identified by
fingerprint lookup.
"""
from __future__ import annotations

import itertools
import json
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from pathlib import Path

import numpy as np

from . import blocks, kernels
from .knotdb import KnotIndex, fold_jones, knot_sort_key
from .masks import MASK_IDS, LayoutMask, load_mask
from .mosaic import (
    CROSSING_ANY,
    E,
    PARTNER,
    STEP,
    T7,
    T8,
    T9,
    T10,
    TILE_MAPS,
    W,
    Mosaic,
    SYMMETRIES,
)
from .poly import LaurentPoly
from .trace import gauss_factors

CHOICE_TILES = np.array([T7, T8, CROSSING_ANY], np.int8)
CHOICE_INTRA = np.array([[1, 0, 3, 2], [3, 2, 1, 0], [2, 3, 0, 1]])  # T7, T8, crossing
CHOICE_IS_CROSSING = np.array([False, False, True])

# in-crossing slot pairings of the two geometric smoothings
PAIR_T8 = np.array([3, 2, 1, 0])
PAIR_T7 = np.array([1, 0, 3, 2])

DEFAULT_RANGES = {"22a": (3, 13), "22b": (3, 13), "24": (3, 13), "27": (9, 13), "32": (9, 13)}
PRUNED_BY_DEFAULT = {"22a": True, "22b": True, "24": False, "27": True, "32": True}
# crossing counts beyond which the search is not run (mask 27 stops at 11)
DEFAULT_CAPS = {"22a": 13, "22b": 13, "24": 13, "27": 11, "32": 13}

_DIR = ((0, 1), (1, 0), (0, -1), (-1, 0))  # travel direction leaving by N, E, S, W (x east, y north)


# -- placements ----------------------------------------------------------------


@dataclass(frozen=True)
class MaskGeometry:
    ext: np.ndarray
    intra_fixed: np.ndarray
    slot_cells: np.ndarray


@lru_cache(maxsize=None)
def _geometry_cached(mask_id: str, cells_bytes: bytes, n: int) -> MaskGeometry:
    cells = np.frombuffer(cells_bytes, np.int8).reshape(n, n)
    m = 4 * n * n
    ext = np.full(m, -1, np.int64)
    intra = np.full(m, -1, np.int64)
    slots = []
    for r in range(n):
        for c in range(n):
            code = int(cells[r, c])
            if code == 0:
                continue
            if code == 12:
                slots.append(r * n + c)
            for p in range(4):
                q = int(PARTNER[code, p])
                if q == -1:
                    continue
                dr, dc = STEP[p]
                ext[4 * (r * n + c) + p] = 4 * ((r + dr) * n + c + dc) + (p + 2) % 4
                if q >= 0:
                    intra[4 * (r * n + c) + p] = 4 * (r * n + c) + q
    return MaskGeometry(ext, intra, np.array(slots, np.int64))


def mask_geometry(mask: LayoutMask) -> MaskGeometry:
    cells = mask.mosaic.cells
    return _geometry_cached(mask.mask_id, cells.tobytes(), cells.shape[0])


def choice_rows(n_slots: int, c: int) -> np.ndarray:
    """All slot fillings with exactly c crossings (codes 0=T7, 1=T8, 2=crossing)."""
    if not 0 <= c <= n_slots:
        raise ValueError(f"cannot place {c} crossings on {n_slots} four-point cells")
    combos = np.array(list(itertools.combinations(range(n_slots), c)), np.int64).reshape(comb(n_slots, c), c)
    k = len(combos)
    is_x = np.zeros((k, n_slots), bool)
    if c:
        np.put_along_axis(is_x, combos, True, axis=1)
    rest = np.nonzero(~is_x)[1].reshape(k, n_slots - c)
    nf = 1 << (n_slots - c)
    fills = ((np.arange(nf)[:, None] >> np.arange(n_slots - c)[None, :]) & 1).astype(np.int8)
    rows = np.full((k, nf, n_slots), 2, np.int8)
    kk = np.arange(k)[:, None, None]
    ff = np.arange(nf)[None, :, None]
    rows[kk, ff, rest[:, None, :]] = fills[None, :, :]
    return rows.reshape(k * nf, n_slots)


def rows_to_grids(mask: LayoutMask, rows: np.ndarray) -> np.ndarray:
    n = mask.mosaic.n
    grids = np.broadcast_to(mask.mosaic.cells.ravel(), (len(rows), n * n)).copy()
    geo = mask_geometry(mask)
    grids[:, geo.slot_cells] = CHOICE_TILES[rows]
    return grids.reshape(len(rows), n, n)


@lru_cache(maxsize=None)
def _symmetry_perms(n: int) -> np.ndarray:
    base = np.arange(n * n).reshape(n, n)
    out = []
    for k, flip in SYMMETRIES:
        img = np.fliplr(base) if flip else base
        out.append(np.rot90(img, k).ravel())
    return np.array(out)


def canonical_grids(grids: np.ndarray) -> np.ndarray:
    """Row-wise canonical forms (least row-major image over the 8 symmetries)."""
    b = len(grids)
    n = grids.shape[1]
    flat = grids.reshape(b, n * n)
    perms = _symmetry_perms(n)
    best = flat.copy()
    rows = np.arange(b)
    for g in range(1, 8):
        img = TILE_MAPS[g][flat[:, perms[g]]]
        diff = img != best
        has = diff.any(axis=1)
        first = diff.argmax(axis=1)
        less = has & (img[rows, first] < best[rows, first])
        best[less] = img[less]
    return best.reshape(b, n, n)


@dataclass
class FilterStats:
    generated: int = 0
    pruned: int = 0
    multi_component: int = 0
    not_reduced: int = 0
    symmetric_duplicates: int = 0
    survivors: int = 0

    def add(self, other: "FilterStats") -> None:
        for k in self.__dataclass_fields__:
            setattr(self, k, getattr(self, k) + getattr(other, k))

    def as_dict(self) -> dict[str, int]:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def generate_placements(
    mask: LayoutMask, c: int, prune: bool | None = None, stats: FilterStats | None = None
) -> list[Mosaic]:
    """Canonical placements (crossings as code 11) surviving the filters, sorted."""
    if prune is None:
        prune = PRUNED_BY_DEFAULT.get(mask.mask_id, False)
    geo = mask_geometry(mask)
    rows = choice_rows(len(geo.slot_cells), c)
    st = FilterStats(generated=len(rows))
    if prune and mask.blocks:
        keep = blocks.prune_by_observations(mask, rows)
        st.pruned = int((~keep).sum())
        rows = rows[keep]
    comps, reduced = kernels.placement_flags(geo.ext, geo.intra_fixed, geo.slot_cells, CHOICE_INTRA, rows, CHOICE_IS_CROSSING)
    st.multi_component = int((comps != 1).sum())
    st.not_reduced = int(((comps == 1) & ~reduced).sum())
    rows = rows[(comps == 1) & reduced]
    grids = canonical_grids(rows_to_grids(mask, rows)) if len(rows) else np.zeros((0, 6, 6), np.int8)
    uniq = np.unique(grids.reshape(len(grids), -1), axis=0) if len(grids) else grids.reshape(0, 36)
    st.symmetric_duplicates = len(rows) - len(uniq)
    st.survivors = len(uniq)
    if stats is not None:
        stats.add(st)
    n = mask.mosaic.n
    return [Mosaic(u.reshape(n, n)) for u in uniq]


# -- sweeping over/under assignments -------------------------------------------


@dataclass(frozen=True)
class Skeleton:
    """Crossing structure of a placement, independent of the over/under choice."""

    cells: tuple[tuple[int, int], ...]  # crossing cells, row-major
    ext: np.ndarray  # slot 4i+p -> slot reached by following the strand out of port p
    passes: np.ndarray  # (crossing, entry port, exit port) per pass, in traversal order
    eps: np.ndarray  # crossing sign when the horizontal strand is over

    @property
    def c(self) -> int:
        return len(self.cells)

    @property
    def cx(self) -> np.ndarray:
        return self.passes[:, 0]

    @property
    def horiz(self) -> np.ndarray:
        return (self.passes[:, 1] == E) | (self.passes[:, 1] == W)


def _from_passes(cells, passes: np.ndarray, eps: np.ndarray) -> Skeleton:
    nc = len(cells)
    ext = np.full(4 * nc, -1, np.int64)
    p = len(passes)
    for k in range(p):
        i, _, out_port = passes[k]
        j, in_port, _ = passes[(k + 1) % p]
        ext[4 * i + out_port] = 4 * j + in_port
        ext[4 * j + in_port] = 4 * i + out_port
    return Skeleton(tuple(cells), ext, passes, eps)


def skeleton(m: Mosaic) -> Skeleton:
    grid = m.cells
    n = m.n
    cells = tuple(m.crossing_cells())
    idx = {rc: i for i, rc in enumerate(cells)}
    start = min(m.nonblank_cells())
    code = int(grid[start])
    exit_port = min(p for p in range(4) if PARTNER[code, p] >= 0)
    r, c = start
    entry = int(PARTNER[code, exit_port])
    first = (r, c, entry)
    passes = []
    hdir: dict[int, tuple[int, int]] = {}
    vdir: dict[int, tuple[int, int]] = {}
    while True:
        if (r, c) in idx:
            i = idx[(r, c)]
            passes.append((i, entry, exit_port))
            (hdir if entry in (E, W) else vdir)[i] = _DIR[exit_port]
        dr, dc = STEP[exit_port]
        r, c = r + dr, c + dc
        if not (0 <= r < n and 0 <= c < n):
            raise ValueError("strand leaves the grid")
        entry = (exit_port + 2) % 4
        exit_port = int(PARTNER[grid[r, c], entry])
        if (r, c, entry) == first:
            break
    nc = len(cells)
    if len(passes) != 2 * nc:
        raise ValueError("placement is not a single closed curve through every crossing")
    eps = np.array(
        [1 if hdir[i][0] * vdir[i][1] - hdir[i][1] * vdir[i][0] > 0 else -1 for i in range(nc)], np.int64
    )
    return _from_passes(cells, np.array(passes, np.int64).reshape(-1, 3), eps)


def sub_skeleton(sk: Skeleton, part: list[int]) -> tuple[Skeleton, np.ndarray]:
    """Connected-sum factor made of the given passes; also returns its crossings' global indices."""
    xs = np.array(sorted(set(sk.cx[part].tolist())), np.int64)
    local = {int(x): i for i, x in enumerate(xs)}
    passes = sk.passes[part].copy()
    passes[:, 0] = [local[int(x)] for x in passes[:, 0]]
    return _from_passes([sk.cells[x] for x in xs], passes, sk.eps[xs]), xs


def assign(m: Mosaic, tau: int) -> Mosaic:
    """Determinate mosaic: crossing i (row-major) is T10 iff bit i of ``tau`` is set."""
    cells = m.cells.copy()
    for i, rc in enumerate(m.crossing_cells()):
        cells[rc] = T10 if (tau >> i) & 1 else T9
    return Mosaic(cells)


UNIDENTIFIED = -1
COMPOSITE = -2


@dataclass
class SweepResult:
    taus: np.ndarray  # assignments examined (one of each mirror pair)
    outcome: np.ndarray  # index into ``outcomes``; UNIDENTIFIED or COMPOSITE otherwise
    outcomes: list[tuple[str, ...]]
    alternating: np.ndarray
    factors: int = 1


def _jones_rows(arr: np.ndarray, offset: int, writhe: np.ndarray) -> tuple[np.ndarray, int]:
    """Writhe-normalize bracket rows and substitute A = t^(-1/4).

    Returns (rows, lowest t exponent) on a common exponent grid.
    """
    width = arr.shape[1]
    wmax = int(np.abs(writhe).max()) if len(writhe) else 0
    tmin = -((offset + 3 * wmax) // 4) - 1
    tmax = (offset + 3 * wmax) // 4 + 1
    out = np.zeros((len(arr), tmax - tmin + 1), np.int64)
    ts = np.arange(tmin, tmax + 1)
    for w in np.unique(writhe):
        sel = np.nonzero(writhe == w)[0]
        pos = offset + 3 * int(w) - 4 * ts
        ok = (pos >= 0) & (pos < width)
        sign = -1 if w % 2 else 1
        out[np.ix_(sel, np.nonzero(ok)[0])] = sign * arr[np.ix_(sel, pos[ok])]
        # exponents not divisible by four must carry zero coefficients
        residue = (np.arange(width) - offset - 3 * int(w)) % 4 != 0
        if arr[np.ix_(sel, np.nonzero(residue)[0])].any():
            raise ArithmeticError("bracket exponents incompatible with a knot")
    return out, tmin


def _bits(taus: np.ndarray, c: int) -> np.ndarray:
    return (taus[:, None] >> np.arange(c)[None, :]) & 1


def _alternating(sk: Skeleton, bits: np.ndarray) -> np.ndarray:
    over = sk.horiz[None, :] ^ (bits[:, sk.cx] == 1)
    return (over != np.roll(over, -1, axis=1)).all(axis=1)


def _sweep_prime(sk: Skeleton, index: KnotIndex, taus: np.ndarray):
    """Identify assignments ``taus`` of a diagram treated as a single factor."""
    c = sk.c
    pair0 = 4 * np.repeat(np.arange(c), 4) + np.tile(PAIR_T8, c)
    pair1 = 4 * np.repeat(np.arange(c), 4) + np.tile(PAIR_T7, c)
    loops = kernels.loop_counts(sk.ext, pair0, pair1)
    arr, offset = kernels.bracket_transform(loops, c)
    arr = arr[taus]
    bits = _bits(taus, c)
    signs = sk.eps[None, :] * (1 - 2 * bits)
    writhe = signs.sum(axis=1)
    jrows, tmin = _jones_rows(arr, offset, writhe)
    over = sk.horiz[None, :] ^ (bits[:, sk.cx] == 1)
    alternating = _alternating(sk, bits)

    uj, jinv = np.unique(jrows, axis=0, return_inverse=True)
    jinv = jinv.reshape(-1)
    jtext = []
    for row in uj:
        if row.sum() != 1:
            raise ArithmeticError("V(1) != 1 for a traced knot diagram")
        jtext.append(fold_jones(LaurentPoly.from_coeffs(row.tolist(), tmin)))
    jones_hit = np.array([t in index.jones_texts for t in jtext], bool)
    todo = np.nonzero(jones_hit[jinv])[0]
    outcome = np.full(len(taus), UNIDENTIFIED, np.int64)
    outcomes: list[tuple[str, ...]] = []
    if len(todo):
        alex, ok = kernels.alexander_batch(sk.cx, over[todo], signs[todo])
        if not ok.all():
            raise ArithmeticError("Alexander polynomial failed validation on a knot diagram")
        ua, ainv = np.unique(alex, axis=0, return_inverse=True)
        ainv = ainv.reshape(-1)
        atext = []
        for row in ua:
            nz = np.flatnonzero(row)
            span = int(nz[-1])
            atext.append(LaurentPoly.from_coeffs(row[: span + 1].tolist(), -(span // 2)))
        key_of: dict[tuple, int] = {}
        for pos, t in enumerate(todo):
            key = (jinv[t], ainv[pos], bool(alternating[t]))
            if key not in key_of:
                a = atext[ainv[pos]]
                v = jrows[t]
                det = abs(int(sum(int(x) * (-1) ** ((e + tmin) % 2) for e, x in enumerate(v) if x)))
                if det != abs(a(-1)):
                    raise ArithmeticError("|V(-1)| and |Delta(-1)| disagree")
                fp = (jtext[jinv[t]], a.to_text(), det)
                names = _filter_names(index, index.by_print.get(fp, ()), c, bool(alternating[t]))
                if names:
                    outcomes.append(names)
                    key_of[key] = len(outcomes) - 1
                else:
                    key_of[key] = UNIDENTIFIED
            outcome[t] = key_of[key]
    return outcome, outcomes, alternating


def sweep_assignments(placement: Mosaic, index: KnotIndex, sk: Skeleton | None = None) -> SweepResult:
    """Identify the knot of every over/under assignment of a placement.

    Assignments ``tau`` and its complement are mirror images with equal
    fingerprints, so only those with the top bit clear are examined.  A
    placement whose curve is a visible connected sum is cut into factors,
    each factor is identified on its own, and an assignment counts as a prime
    knot only when at most one factor is knotted.
    """
    sk = sk or skeleton(placement)
    c = sk.c
    if c == 0:
        raise ValueError("placement has no crossings")
    taus = np.arange(1 << (c - 1), dtype=np.int64)
    parts = gauss_factors(sk.cx.tolist())
    if len(parts) == 1:
        outcome, outcomes, alternating = _sweep_prime(sk, index, taus)
        return SweepResult(taus, outcome, outcomes, alternating)

    bits = _bits(taus, c)
    per_factor = []
    for part in parts:
        sub, xs = sub_skeleton(sk, part)
        o, outs, _ = _sweep_prime(sub, index, np.arange(1 << sub.c, dtype=np.int64))
        local = (bits[:, xs] << np.arange(len(xs))[None, :]).sum(axis=1)
        per_factor.append((o[local], outs))
    outcome = np.full(len(taus), UNIDENTIFIED, np.int64)
    outcomes: list[tuple[str, ...]] = []
    slot: dict[tuple[str, ...], int] = {}
    for t in range(len(taus)):
        knotted = []
        unknown = False
        for o, outs in per_factor:
            if o[t] < 0:
                unknown = True
                break
            if outs[o[t]] != ("unknot",):
                knotted.append(outs[o[t]])
        if unknown:
            continue
        if len(knotted) > 1:
            outcome[t] = COMPOSITE
            continue
        names = knotted[0] if knotted else ("unknot",)
        if names not in slot:
            outcomes.append(names)
            slot[names] = len(outcomes) - 1
        outcome[t] = slot[names]
    return SweepResult(taus, outcome, outcomes, _alternating(sk, bits), len(parts))


def _filter_names(index: KnotIndex, names, c: int, alternating: bool) -> tuple[str, ...]:
    """Drop names ruled out by crossing number.

    A diagram with c crossings shows a knot of crossing number at most c, and
    a reduced alternating diagram shows one of crossing number exactly c.
    """
    out = []
    for name in names:
        cn = index.crossing_number(name)
        if cn > c or (alternating and cn != c):
            continue
        out.append(name)
    return tuple(sorted(out, key=knot_sort_key))


# -- full enumeration ----------------------------------------------------------


@dataclass
class CellResult:
    """Outcomes for one (mask, crossing count)."""

    mask_id: str
    c: int
    stats: dict[str, int] = field(default_factory=dict)
    placements: int = 0
    assignments: int = 0
    names: dict[str, int] = field(default_factory=dict)  # unambiguous name -> hit count
    ties: dict[str, int] = field(default_factory=dict)  # "a|b" -> hit count
    alternating: dict[str, int] = field(default_factory=dict)
    alternating_ties: dict[str, int] = field(default_factory=dict)
    unidentified: int = 0
    composite: int = 0  # assignments whose diagram is a sum of two or more knotted factors

    def to_json(self) -> dict:
        return {
            "mask": self.mask_id,
            "crossings": self.c,
            "stats": self.stats,
            "placements": self.placements,
            "assignments": self.assignments,
            "names": dict(sorted(self.names.items(), key=lambda kv: knot_sort_key(kv[0]))),
            "ties": dict(sorted(self.ties.items())),
            "alternating": dict(sorted(self.alternating.items(), key=lambda kv: knot_sort_key(kv[0]))),
            "alternating_ties": dict(sorted(self.alternating_ties.items())),
            "unidentified": self.unidentified,
            "composite": self.composite,
        }

    @classmethod
    def from_json(cls, d: dict) -> "CellResult":
        return cls(
            d["mask"], d["crossings"], d["stats"], d["placements"], d["assignments"], d["names"], d["ties"],
            d["alternating"], d["alternating_ties"], d["unidentified"], d.get("composite", 0),
        )


@dataclass
class KnotEntry:
    name: str
    crossing_number: int
    tile_number: int
    crossings: int
    mask_id: str
    witness: Mosaic

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "crossing_number": self.crossing_number,
            "tile_number": self.tile_number,
            "crossing_tiles": self.crossings,
            "mask": self.mask_id,
            "witness": self.witness.cells.tolist(),
        }

    @classmethod
    def from_json(cls, d: dict) -> "KnotEntry":
        return cls(d["name"], d["crossing_number"], d["tile_number"], d["crossing_tiles"], d["mask"], Mosaic(d["witness"]))


@dataclass
class EnumerationReport:
    cells: list[CellResult] = field(default_factory=list)
    knots: dict[str, KnotEntry] = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def cell(self, mask_id: str, c: int) -> CellResult | None:
        return next((x for x in self.cells if x.mask_id == mask_id and x.c == c), None)

    def names_at(self, tile: int | None = None, masks=None, crossings=None, alternating: bool = False) -> set[str]:
        out: set[str] = set()
        for x in self.cells:
            if masks is not None and x.mask_id not in masks:
                continue
            if tile is not None and mask_tile(x.mask_id) != tile:
                continue
            if crossings is not None and x.c not in crossings:
                continue
            out |= set(x.alternating if alternating else x.names)
        return out

    def ties_at(self, tile: int | None = None, alternating: bool = False) -> set[tuple[str, ...]]:
        out = set()
        for x in self.cells:
            if tile is not None and mask_tile(x.mask_id) != tile:
                continue
            for key in x.alternating_ties if alternating else x.ties:
                out.add(tuple(key.split("|")))
        return out

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "cells": [x.to_json() for x in self.cells],
            "knots": [self.knots[k].to_json() for k in sorted(self.knots, key=knot_sort_key)],
        }

    @classmethod
    def from_json(cls, d: dict) -> "EnumerationReport":
        rep = cls(config=d.get("config", {}))
        rep.cells = [CellResult.from_json(x) for x in d.get("cells", [])]
        for k in d.get("knots", []):
            e = KnotEntry.from_json(k)
            rep.knots[e.name] = e
        return rep

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1, sort_keys=False) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "EnumerationReport":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def mask_tile(mask_id: str) -> int:
    return int(mask_id[:2])


# worker state for process pools
_INDEX: KnotIndex | None = None


def _init_worker(index: KnotIndex) -> None:
    global _INDEX
    _INDEX = index


def _sweep_batch(grids: list[bytes]) -> list[tuple]:
    """Sweep a batch of placements; returns compact per-placement outcomes."""
    out = []
    for raw in grids:
        m = _grid_from_bytes(raw)
        res = sweep_assignments(m, _INDEX)
        hits: dict[tuple[str, ...], list[int]] = defaultdict(list)
        alt_hits: set[tuple[str, ...]] = set()
        for t, o, a in zip(res.taus.tolist(), res.outcome.tolist(), res.alternating.tolist()):
            if o < 0:
                continue
            names = res.outcomes[o]
            hits[names].append(t)
            if a:
                alt_hits.add(names)
        unident = int((res.outcome == UNIDENTIFIED).sum())
        composite = int((res.outcome == COMPOSITE).sum())
        out.append((dict(hits), alt_hits, unident, composite, len(res.taus), res.factors > 1))
    return out


def _witness_candidates(m: Mosaic, taus: list[int]) -> list[bytes]:
    c = len(m.crossing_cells())
    full = (1 << c) - 1
    grids = np.stack([assign(m, t).cells for tt in taus for t in (tt, full ^ tt)])
    canon = canonical_grids(grids)
    return [g.tobytes() for g in canon]


def run_cell(
    mask: LayoutMask, c: int, index: KnotIndex, workers: int = 1, prune: bool | None = None, batch: int = 64
) -> tuple[CellResult, dict[str, bytes]]:
    """Enumerate one (mask, c); returns outcomes and the least witness per unambiguous name."""
    stats = FilterStats()
    placements = generate_placements(mask, c, prune=prune, stats=stats)
    cell = CellResult(mask.mask_id, c, stats.as_dict(), len(placements))
    raws = [p.cells.tobytes() for p in placements]
    chunks = [raws[i : i + batch] for i in range(0, len(raws), batch)]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(index,)) as pool:
            results = [r for part in pool.map(_sweep_batch, chunks) for r in part]
    else:
        _init_worker(index)
        results = [r for part in map(_sweep_batch, chunks) for r in part]
    witness: dict[str, tuple[bool, bytes]] = {}
    for m, (hits, alt_hits, unident, composite, n_taus, is_sum) in zip(placements, results):
        cell.assignments += n_taus
        cell.unidentified += unident
        cell.composite += composite
        for names, taus in hits.items():
            target = cell.names if len(names) == 1 else cell.ties
            key = "|".join(names)
            target[key] = target.get(key, 0) + len(taus)
            if len(names) == 1:
                # prefer diagrams that are not visibly connected sums
                best = (is_sum, min(_witness_candidates(m, taus)))
                if names[0] not in witness or best < witness[names[0]]:
                    witness[names[0]] = best
        for names in alt_hits:
            target = cell.alternating if len(names) == 1 else cell.alternating_ties
            key = "|".join(names)
            target[key] = target.get(key, 0) + 1
    return cell, {k: v[1] for k, v in witness.items()}


def _grid_from_bytes(raw: bytes) -> Mosaic:
    n = int(round(len(raw) ** 0.5))
    return Mosaic(np.frombuffer(raw, np.int8).reshape(n, n))


def resolve_ranges(masks=None, crossings: tuple[int, int] | None = None) -> list[tuple[str, int]]:
    """(mask, c) pairs in processing order: tile number, then mask id, then c."""
    masks = list(masks) if masks else list(MASK_IDS)
    for k in masks:
        if k not in MASK_IDS:
            raise ValueError(f"unknown mask id {k!r}")
    out = []
    for k in sorted(masks, key=lambda k: (mask_tile(k), k)):
        lo, hi = crossings if crossings else DEFAULT_RANGES[k]
        if lo < 3 or hi > 13 or lo > hi:
            raise ValueError(f"crossing range {lo}..{hi} is not within 3..13")
        nslots = len(load_mask(k).slots)
        for c in range(lo, min(hi, nslots, DEFAULT_CAPS[k] if crossings is None else hi) + 1):
            out.append((k, c))
    return out


def run_full_enumeration(
    masks=None,
    crossings: tuple[int, int] | None = None,
    index: KnotIndex | None = None,
    workers: int = 1,
    prune: bool | None = None,
    progress=None,
) -> EnumerationReport:
    """Sweep every requested (mask, c) and record minimal tile numbers and witnesses."""
    if index is None:
        raise ValueError("a loaded knot index is required")
    plan = resolve_ranges(masks, crossings)
    report = EnumerationReport(
        config={
            "masks": sorted({k for k, _ in plan}, key=lambda k: (mask_tile(k), k)),
            "crossings": list(crossings) if crossings else None,
            "prune": prune,
        }
    )
    best: dict[str, tuple[int, int, bytes, str]] = {}
    for mask_id, c in plan:
        mask = load_mask(mask_id)
        cell, witness = run_cell(mask, c, index, workers=workers, prune=prune)
        report.cells.append(cell)
        if progress:
            progress(cell)
        tile = mask.tile_number
        for name, raw in witness.items():
            cand = (tile, c, raw, mask_id)
            if name not in best or cand[:3] < best[name][:3]:
                best[name] = cand
    for name, (tile, c, raw, mask_id) in best.items():
        m = _grid_from_bytes(raw)
        report.knots[name] = KnotEntry(name, index.crossing_number(name), tile, c, mask_id, m)
    return report


def cross_check_pruning(mask_id: str, c: int, index: KnotIndex, ignore=()) -> bool:
    """Pruned and unpruned searches give the same knot names and ties.

    Names in ``ignore`` (knots known to fit on fewer tiles) are left out of
    the comparison.
    """
    mask = load_mask(mask_id)
    pruned, _ = run_cell(mask, c, index, prune=True)
    full, _ = run_cell(mask, c, index, prune=False)
    ignore = set(ignore)
    ties = lambda cell: {k for k in cell.ties if not set(k.split("|")) <= ignore}
    return set(pruned.names) - ignore == set(full.names) - ignore and ties(pruned) == ties(full)


def default_workers() -> int:
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1))
