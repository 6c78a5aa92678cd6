"""Strand following on mosaics and oriented planar-diagram (PD) codes.

PD crossings use the common ``X(a,b,c,d)`` convention: ``a`` is the incoming
under-edge and the labels run counterclockwise, so the under-strand goes
``a -> c``.  Edges are numbered 1..2n along the orientation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .mosaic import (
    CROSSINGS,
    E,
    FOUR_POINT_ANY,
    N,
    PARTNER,
    S,
    STEP,
    T9,
    T10,
    W,
    Mosaic,
    MosaicError,
    is_suitably_connected,
)

# unit direction (x east, y north) of travel when leaving through a port
_DIR = {N: (0, 1), E: (1, 0), S: (0, -1), W: (-1, 0)}


def _ccw(p: int) -> int:
    return (p + 3) % 4


class TraceError(MosaicError):
    """Mosaic cannot be traced (unmatched port, placeholder tile, several components)."""


# -- strand following --------------------------------------------------------


def _check_traceable(m: Mosaic, allow_crossing_any: bool = False) -> None:
    if (m.cells == FOUR_POINT_ANY).any():
        raise TraceError("FourPointAny placeholders cannot be traced")
    if not allow_crossing_any and (m.cells == 11).any():
        raise TraceError("CrossingAny placeholders cannot be traced")
    if not is_suitably_connected(m):
        raise TraceError("mosaic is not suitably connected")


def _walk(m: Mosaic, r: int, c: int, exit_port: int):
    """Yield (row, col, entry, exit) steps of the closed strand leaving (r,c) by ``exit_port``."""
    entry = int(PARTNER[m.cells[r, c], exit_port])
    start = (r, c, entry)
    while True:
        yield r, c, entry, exit_port
        dr, dc = STEP[exit_port]
        r, c = r + dr, c + dc
        entry = (exit_port + 2) % 4
        exit_port = int(PARTNER[m.cells[r, c], entry])
        if (r, c, entry) == start:
            return


def _strand_pieces(m: Mosaic):
    for r, c in m.nonblank_cells():
        for p in range(4):
            q = PARTNER[m.cells[r, c], p]
            if q >= 0 and p < q:
                yield r, c, p


def components(m: Mosaic, allow_crossing_any: bool = False) -> int:
    """Number of closed curves; crossings join N-S and E-W."""
    _check_traceable(m, allow_crossing_any)
    seen = set()
    count = 0
    for r, c, p in _strand_pieces(m):
        if (r, c, p) in seen:
            continue
        count += 1
        for rr, cc, a, b in _walk(m, r, c, p):
            seen.add((rr, cc, min(a, b)))
    return count


def trace_knot(m: Mosaic, allow_crossing_any: bool = False) -> list[tuple[int, int, int, int]]:
    """Steps of the single component, starting at the least non-blank cell and port."""
    if components(m, allow_crossing_any) != 1:
        raise TraceError("mosaic is not a single-component knot")
    cells = list(m.nonblank_cells())
    if not cells:
        return []
    r, c = min(cells)
    first = min(p for p in range(4) if PARTNER[m.cells[r, c], p] >= 0)
    return list(_walk(m, r, c, first))


# -- diagrams ----------------------------------------------------------------


@dataclass(frozen=True)
class Diagram:
    """Oriented knot diagram as a PD code with crossing signs."""

    pd: tuple[tuple[int, int, int, int], ...]
    signs: tuple[int, ...] = field(default=())

    def __post_init__(self):
        pd = tuple(tuple(int(v) for v in x) for x in self.pd)
        object.__setattr__(self, "pd", pd)
        if not self.signs:
            object.__setattr__(self, "signs", tuple(_infer_sign(x, 2 * len(pd)) for x in pd))
        if len(self.signs) != len(pd):
            raise ValueError("one sign per crossing required")
        counts: dict[int, int] = {}
        for x in pd:
            for label in x:
                counts[label] = counts.get(label, 0) + 1
        if any(v != 2 for v in counts.values()) or sorted(counts) != list(range(1, 2 * len(pd) + 1)):
            raise ValueError("every edge label 1..2n must appear exactly twice")

    @property
    def n_crossings(self) -> int:
        return len(self.pd)

    def passes(self) -> list[tuple[int, bool]]:
        """(crossing index, is_over) for each edge-entry in orientation order."""
        n2 = 2 * len(self.pd)
        entry: dict[int, tuple[int, bool]] = {}
        for i, ((a, b, c, d), s) in enumerate(zip(self.pd, self.signs)):
            entry[a] = (i, False)
            entry[d if s > 0 else b] = (i, True)
        return [entry[label] for label in range(1, n2 + 1)]

    def pd_text(self) -> str:
        return "PD[" + ";".join("X(%d,%d,%d,%d)" % x for x in self.pd) + "]"

    def mirror(self) -> "Diagram":
        """Switch every crossing (the mirror image on the same projection)."""
        new_pd = []
        for x, s in zip(self.pd, self.signs):
            k = 3 if s > 0 else 1  # slot of the incoming over-edge
            new_pd.append(x[k:] + x[:k])
        return Diagram(tuple(new_pd), tuple(-s for s in self.signs))


def _infer_sign(x: tuple[int, int, int, int], n2: int) -> int:
    a, b, c, d = x
    if n2 == 2:
        raise ValueError("cannot infer crossing signs of a one-crossing PD code; pass signs")
    if c != a % n2 + 1:
        raise ValueError(f"crossing {x}: under-strand must run a -> a+1")
    if b == d % n2 + 1:
        return 1
    if d == b % n2 + 1:
        return -1
    raise ValueError(f"crossing {x}: over-strand labels are not consecutive")


_X = re.compile(r"X\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_pd(text: str) -> Diagram:
    text = text.strip()
    if not (text.startswith("PD[") and text.endswith("]")):
        raise ValueError(f"malformed PD code {text!r}")
    body = text[3:-1].strip()
    if not body:
        return Diagram(())
    parts = body.split(";")
    crossings = []
    for part in parts:
        m = _X.fullmatch(part.strip())
        if m is None:
            raise ValueError(f"malformed crossing {part!r}")
        crossings.append(tuple(int(v) for v in m.groups()))
    return Diagram(tuple(crossings))


def to_diagram(m: Mosaic) -> Diagram:
    """Trace a determinate single-component mosaic into an oriented PD code."""
    steps = trace_knot(m)
    idx = {rc: i for i, rc in enumerate(m.crossing_cells())}
    passes = [(r, c, a, b) for r, c, a, b in steps if (r, c) in idx]
    n2 = len(passes)
    # port labels per crossing cell
    labels: dict[tuple[int, int], dict[int, int]] = {rc: {} for rc in idx}
    dirs: dict[tuple[int, int], dict[bool, tuple[int, int]]] = {rc: {} for rc in idx}
    for k, (r, c, a, b) in enumerate(passes):
        labels[(r, c)][a] = k + 1
        labels[(r, c)][b] = (k + 1) % n2 + 1
        dirs[(r, c)][a in (E, W)] = _DIR[b]
    pd = []
    signs = []
    for rc in m.crossing_cells():
        code = m.cells[rc]
        horiz_over = code == T9
        lab = labels[rc]
        # under-strand entry port
        under_entry = next(
            p for p in range(4) if (p in (N, S)) == horiz_over and dirs[rc][p in (E, W)] == _DIR[(p + 2) % 4]
        )
        order = [under_entry]
        for _ in range(3):
            order.append(_ccw(order[-1]))
        pd.append(tuple(lab[p] for p in order))
        over = dirs[rc][horiz_over]
        under = dirs[rc][not horiz_over]
        signs.append(1 if over[0] * under[1] - over[1] * under[0] > 0 else -1)
    return Diagram(tuple(pd), tuple(signs))


# -- faces, reducedness, writhe ---------------------------------------------


def _slot_partner(d: Diagram) -> list[int]:
    """For slot 4*i+j, the slot holding the other end of the same edge."""
    where: dict[int, list[int]] = {}
    for i, x in enumerate(d.pd):
        for j, label in enumerate(x):
            where.setdefault(label, []).append(4 * i + j)
    out = [0] * (4 * len(d.pd))
    for a, b in where.values():
        out[a], out[b] = b, a
    return out


def diagram_faces(d: Diagram) -> list[int]:
    """Face id of every crossing corner; corner 4*i+j lies between slots j and j+1 (ccw)."""
    other = _slot_partner(d)
    n4 = 4 * len(d.pd)
    face = [-1] * n4
    nf = 0
    for s in range(n4):
        if face[s] >= 0:
            continue
        cur = s
        while face[cur] < 0:
            face[cur] = nf
            i, j = divmod(cur, 4)
            nxt = other[4 * i + (j + 1) % 4]
            cur = nxt
        nf += 1
    return face


def face_count(d: Diagram) -> int:
    if not d.pd:
        return 2
    return len(set(diagram_faces(d)))


def euler_ok(d: Diagram) -> bool:
    """V - E + F = 2 with E = 2V."""
    if not d.pd:
        return True
    v = len(d.pd)
    return v - 2 * v + face_count(d) == 2


def nugatory_crossings(d: Diagram) -> list[int]:
    face = diagram_faces(d) if d.pd else []
    bad = []
    for i in range(len(d.pd)):
        f = face[4 * i : 4 * i + 4]
        if f[0] == f[2] or f[1] == f[3]:
            bad.append(i)
    return bad


def is_reduced(d: Diagram) -> bool:
    """No crossing whose diagonally opposite corners lie in one face."""
    return not nugatory_crossings(d)


def writhe(d: Diagram) -> int:
    return sum(d.signs)


def is_alternating(d: Diagram) -> bool:
    ps = d.passes()
    return all(ps[k][1] != ps[(k + 1) % len(ps)][1] for k in range(len(ps)))


def mosaic_faces(m: Mosaic) -> dict[tuple[int, int, int], int]:
    """Faces from the grid embedding by a turn-left walk.

    Keys are (row, col, entry port); at a crossing cell the walk entering at
    port ``p`` bounds the corner between ``p`` and the next port clockwise.
    """
    _check_traceable(m, allow_crossing_any=True)
    crossing = {rc: True for rc in m.crossing_cells()}
    face: dict[tuple[int, int, int], int] = {}
    nf = 0
    for r, c in m.nonblank_cells():
        for p in range(4):
            if PARTNER[m.cells[r, c], p] < 0 or (r, c, p) in face:
                continue
            cur = (r, c, p)
            while cur not in face:
                face[cur] = nf
                rr, cc, q = cur
                out = (q + 1) % 4 if (rr, cc) in crossing else int(PARTNER[m.cells[rr, cc], q])
                dr, dc = STEP[out]
                cur = (rr + dr, cc + dc, (out + 2) % 4)
            nf += 1
    return face


def mosaic_is_reduced(m: Mosaic) -> bool:
    face = mosaic_faces(m)
    for r, c in m.crossing_cells():
        if face[(r, c, N)] == face[(r, c, S)] or face[(r, c, E)] == face[(r, c, W)]:
            return False
    return True


def is_crossing_code(code: int) -> bool:
    return code in CROSSINGS


# -- connected sums ------------------------------------------------------------


def _closed(seg: list[int]) -> bool:
    counts: dict[int, int] = {}
    for x in seg:
        counts[x] = counts.get(x, 0) + 1
    return all(v == 2 for v in counts.values())


def gauss_factors(word: list[int]) -> list[list[int]]:
    """Split a cyclic Gauss word into connected-sum factors.

    ``word`` lists the crossing met at each pass.  A proper cyclic interval in
    which every crossing occurs twice is a factor: for a planar knot diagram
    the strand crosses a circle around it exactly twice.  Returns lists of
    pass positions (indices into ``word``), each in traversal order.
    """

    def split(pos: list[int]) -> list[list[int]]:
        size = len(pos)
        for length in range(2, size - 1, 2):
            for s in range(size):
                seg = [pos[(s + i) % size] for i in range(length)]
                if _closed([word[k] for k in seg]):
                    rest = [pos[(s + length + i) % size] for i in range(size - length)]
                    return split(seg) + split(rest)
        return [pos]

    if not word:
        return []
    return split(list(range(len(word))))


def connected_sum_factors(d: Diagram) -> list[Diagram]:
    """The diagram cut along every two-point circle; one entry if it is not a visible sum."""
    n2 = 2 * d.n_crossings
    if n2 == 0:
        return [d]
    word = [x for x, _ in d.passes()]
    parts = gauss_factors(word)
    if len(parts) == 1:
        return [d]
    out = []
    for part in parts:
        # pass k is entered by edge k+1; relabel the entering edges 1..L in order
        relabel = {part[i] + 1: i + 1 for i in range(len(part))}
        last_exit = part[-1] + 2 if part[-1] + 2 <= n2 else 1
        relabel[last_exit] = 1
        xs = sorted({word[k] for k in part})
        pd = tuple(tuple(relabel[v] for v in d.pd[x]) for x in xs)
        out.append(Diagram(pd, tuple(d.signs[x] for x in xs)))
    return out


__all__ = [
    "Diagram",
    "TraceError",
    "components",
    "diagram_faces",
    "euler_ok",
    "face_count",
    "is_alternating",
    "is_reduced",
    "mosaic_faces",
    "mosaic_is_reduced",
    "nugatory_crossings",
    "parse_pd",
    "to_diagram",
    "trace_knot",
    "writhe",
    "gauss_factors",
    "connected_sum_factors",
]
