"""Catalog of witness mosaics, renderings and expected-versus-computed tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .enumeration import EnumerationReport, mask_tile
from .knotdb import KnotIndex, knot_sort_key, name_crossings
from .mosaic import (
    BLANK,
    CROSSING_ANY,
    FOUR_POINT_ANY,
    PARTNER,
    T7,
    T8,
    T9,
    T10,
    Mosaic,
)

# knots whose tile number is below 22 (4, 12 and 17)
KNOWN_TILE_NUMBERS: dict[int, tuple[str, ...]] = {
    4: ("unknot",),
    12: ("3_1",),
    17: ("4_1", "5_1", "5_2", "6_1", "6_2", "7_4"),
}

EXPECTED: dict[int, tuple[str, ...]] = {
    22: tuple("6_3 7_1 7_2 7_3 7_5 7_6 7_7 8_1 8_2 8_3 8_4 8_7 8_8 8_9 8_13 9_5 9_20".split()),
    24: tuple(
        "8_5 8_6 8_10 8_11 8_12 8_14 8_16 8_17 8_18 8_19 8_20 8_21 "
        "9_8 9_11 9_12 9_14 9_17 9_19 9_21 9_23 9_26 9_27 9_31 "
        "10_41 10_44 10_85 10_100 10_116 10_124 10_125 10_126 10_127 10_141 10_143 10_148 10_155 10_159".split()
    ),
    27: tuple(
        "8_15 9_1 9_2 9_3 9_4 9_7 9_9 9_13 9_24 9_28 9_37 9_46 9_48 "
        "10_1 10_2 10_3 10_4 10_12 10_22 10_28 10_34 10_63 10_65 10_66 10_75 10_78 10_140 10_142 10_144 "
        "11a107 11a140 11a343".split()
    ),
    32: tuple(
        "9_10 9_16 9_35 10_11 10_20 10_21 10_61 10_62 10_64 10_74 10_76 10_77 10_139 "
        "11a43 11a44 11a46 11a47 11a58 11a59 11a106 11a139 11a165 11a166 11a179 11a181 11a246 11a247 "
        "11a339 11a340 11a341 11a342 11a364 11a367 11n71 11n72 11n73 11n74 11n75 11n76 11n77 11n78 "
        "12a119 12a165 12a169 12a373 12a376 12a379 12a380 12a444 12a503 12a722 12a803 12a1148 12a1149 "
        "12a1166 13a1230 13a1236 13a1461 13a4573 13n2399 13n2400 13n2401 13n2402 13n2403".split()
    ),
}


def _claims() -> dict[str, int]:
    """Least number of crossing tiles at the minimal tile number, where stated."""
    out: dict[str, int] = {"7_3": 8, "8_6": 9}
    for name in "8_2 8_4 8_13".split():
        out[name] = 8
    for name in "8_1 8_3 8_7 8_8 8_9 9_5 9_20".split():
        out[name] = 9
    for name in "9_12 9_19 9_21 9_26".split():
        out[name] = 10
    for name in "9_1 9_2 9_28".split():
        out[name] = 9
    for name in "9_3 9_4 9_13 9_37 9_46 9_48 10_2 10_4 10_28 10_66 10_75".split():
        out[name] = 10
    for name in "9_7 9_9 9_24 10_1 10_3 10_12 10_22 10_34 10_63 10_65 10_78 10_140 10_142 10_144".split():
        out[name] = 11
    for name in "11a107 11a140 11a343".split():
        out[name] = 11
    c11 = "9_10 9_16 10_20 10_21 10_77 11a43 11a46 11a59 11a179 11a247 11a367 11n71 11n72 11n73 11n74 11n75"
    c12 = (
        "9_35 10_11 10_62 10_64 10_74 10_139 11a106 11a139 11a166 11a181 11a341 11a342 11a364 "
        "12a373 12a380 12a503 12a722 12a1149"
    )
    c13 = (
        "10_61 10_76 11a44 11a47 11a58 11a165 11a246 11a339 11a340 11n76 11n77 11n78 12a119 12a165 12a169 "
        "12a376 12a379 12a444 12a803 12a1148 12a1166 13a1230 13a1236 13a1461 13a4573 "
        "13n2399 13n2400 13n2401 13n2402 13n2403"
    )
    for c, names in ((11, c11), (12, c12), (13, c13)):
        for name in names.split():
            out[name] = c
    return out


MIN_CROSSING_CLAIMS = _claims()


# -- catalog -----------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    witness: Mosaic
    tile_number: int
    crossing_tiles: int
    crossing_number: int

    @property
    def extra_crossings(self) -> bool:
        """Marked with an asterisk: more crossing tiles than the crossing number."""
        return self.crossing_tiles > self.crossing_number


def build_catalog(report: EnumerationReport) -> list[CatalogEntry]:
    """One entry per prime knot first reached on a layout, in table order.

    Knots with tile number below 22 are skipped; their minimal mosaics are
    smaller than the layouts.
    """
    known = {n for names in KNOWN_TILE_NUMBERS.values() for n in names}
    out = []
    for name, k in report.knots.items():
        if name in known:
            continue
        out.append(CatalogEntry(name, k.witness, k.tile_number, k.crossings, k.crossing_number))
    out.sort(key=lambda e: (e.tile_number, knot_sort_key(e.name)))
    return out


# -- rendering -----------------------------------------------------------------

_GLYPH_CENTER = {T7: "\\", T8: "/", T9: "-", T10: "|", CROSSING_ANY: "+", FOUR_POINT_ANY: "*", 5: "|", 6: "-"}
_PORT_CELL = ((0, 1), (1, 2), (2, 1), (1, 0))
_PORT_CHAR = ("|", "-", "|", "-")
_ROTATE_CHAR = str.maketrans({"|": "-", "-": "|", "/": "\\", "\\": "/"})
_FLIP_CHAR = str.maketrans({"/": "\\", "\\": "/"})


def render_text(m: Mosaic) -> str:
    """Character grid with a 3x3 block per tile; the block center tells the tile apart."""
    n = m.n
    grid = [[" "] * (3 * n) for _ in range(3 * n)]
    for r in range(n):
        for c in range(n):
            code = int(m.cells[r, c])
            if code == BLANK:
                continue
            for p in range(4):
                if PARTNER[code, p] != -1:
                    dr, dc = _PORT_CELL[p]
                    grid[3 * r + dr][3 * c + dc] = _PORT_CHAR[p]
            grid[3 * r + 1][3 * c + 1] = _GLYPH_CENTER.get(code, "+")
    return "\n".join("".join(row).rstrip() for row in grid) + "\n"


def _rows(text: str) -> list[str]:
    return (text[:-1] if text.endswith("\n") else text).split("\n")


def rotate_text(text: str, k: int = 1) -> str:
    """Rotate a rendered character grid by k quarter turns counterclockwise."""
    rows = _rows(text)
    width = max([len(rows)] + [len(r) for r in rows])  # grids are square before stripping
    arr = np.array([list(r.ljust(width)) for r in rows])
    out = np.rot90(arr, k)
    lines = ["".join(row) for row in out]
    if k % 2:
        lines = [line.translate(_ROTATE_CHAR) for line in lines]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def flip_text(text: str) -> str:
    """Left-right mirror of a rendered character grid."""
    rows = _rows(text)
    width = max([len(rows)] + [len(r) for r in rows])  # grids are square before stripping
    return "\n".join(r.ljust(width)[::-1].translate(_FLIP_CHAR).rstrip() for r in rows) + "\n"


_SIZE = 40
_MID = ((20, 0), (40, 20), (20, 40), (0, 20))  # port midpoints within a tile


def _segment(p: int, q: int) -> str:
    (x0, y0), (x1, y1) = _MID[p], _MID[q]
    if (p + 2) % 4 == q:
        return f"M{x0} {y0}L{x1} {y1}"
    return f"M{x0} {y0}Q20 20 {x1} {y1}"


def _tile_paths(code: int) -> list[str]:
    if code == BLANK:
        return []
    if code in (T9, T10):
        over = (1, 3) if code == T9 else (0, 2)
        under = (0, 2) if code == T9 else (1, 3)
        (ux0, uy0), (ux1, uy1) = _MID[under[0]], _MID[under[1]]
        # under-strand broken around the center
        gap = [
            f"M{ux0} {uy0}L{ux0 + (ux1 - ux0) * 0.3:g} {uy0 + (uy1 - uy0) * 0.3:g}",
            f"M{ux0 + (ux1 - ux0) * 0.7:g} {uy0 + (uy1 - uy0) * 0.7:g}L{ux1} {uy1}",
        ]
        return [_segment(*over)] + gap
    if code == CROSSING_ANY:
        return [_segment(1, 3), _segment(0, 2)]
    done: set[int] = set()
    out = []
    for p in range(4):
        q = int(PARTNER[code, p])
        if q < 0 or p in done:
            continue
        done |= {p, q}
        out.append(_segment(p, q))
    return out


def render_svg(m: Mosaic, title: str | None = None) -> str:
    n = m.n
    size = n * _SIZE
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size + 2}" height="{size + 2}" '
        f'viewBox="-1 -1 {size + 2} {size + 2}">'
    ]
    if title:
        lines.append(f"<title>{title}</title>")
    lines.append(f'<rect x="0" y="0" width="{size}" height="{size}" fill="white" stroke="#bbb"/>')
    for r in range(n):
        for c in range(n):
            x, y = c * _SIZE, r * _SIZE
            lines.append(f'<rect x="{x}" y="{y}" width="{_SIZE}" height="{_SIZE}" fill="none" stroke="#ddd"/>')
            paths = _tile_paths(int(m.cells[r, c]))
            if paths:
                d = "".join(paths)
                lines.append(
                    f'<path transform="translate({x} {y})" d="{d}" fill="none" stroke="black" '
                    f'stroke-width="3" stroke-linecap="round"/>'
                )
            if m.cells[r, c] == FOUR_POINT_ANY:
                lines.append(f'<circle cx="{x + 20}" cy="{y + 20}" r="4" fill="#888"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


RENDER_FORMATS = ("text", "svg")


def render(m: Mosaic, fmt: str = "text", title: str | None = None) -> str:
    if fmt == "text":
        return render_text(m)
    if fmt == "svg":
        return render_svg(m, title)
    raise ValueError(f"unknown render format {fmt!r}; expected one of {', '.join(RENDER_FORMATS)}")


def catalog_text(entries: list[CatalogEntry]) -> str:
    out = [f"# {len(entries)} knots; '*' marks more crossing tiles than the crossing number", ""]
    for e in entries:
        star = " *" if e.extra_crossings else ""
        out.append(f"{e.name}{star}  tile number {e.tile_number}  crossing tiles {e.crossing_tiles}")
        out.append(e.witness.to_text().rstrip("\n"))
        out.append(render_text(e.witness).rstrip("\n"))
        out.append("")
    return "\n".join(out) + "\n"


def write_catalog(report: EnumerationReport, outdir: str | Path) -> list[Path]:
    """Write one SVG per knot plus a combined text catalog; returns written paths."""
    outdir = Path(outdir)
    (outdir / "svg").mkdir(parents=True, exist_ok=True)
    entries = build_catalog(report)
    paths = []
    for e in entries:
        p = outdir / "svg" / f"{e.name}.svg"
        p.write_text(render_svg(e.witness, title=e.name), encoding="utf-8")
        paths.append(p)
    p = outdir / "catalog.txt"
    p.write_text(catalog_text(entries), encoding="utf-8")
    paths.append(p)
    return paths


# -- expected versus computed ------------------------------------------------------


@dataclass
class TheoremDiff:
    tile: int
    expected: tuple[str, ...]
    found: list[str] = field(default_factory=list)  # new at this tile, unambiguous
    tie_covered: list[str] = field(default_factory=list)  # expected, only seen inside a tie
    missing: list[str] = field(default_factory=list)
    extra: list[str] = field(default_factory=list)
    ties: list[tuple[tuple[str, ...], str, int]] = field(default_factory=list)  # (names, mask, c)
    open_ties: list[tuple[str, ...]] = field(default_factory=list)  # no member expected or known
    crossing_mismatches: list[tuple[str, int, int]] = field(default_factory=list)  # (name, claimed, found)

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra or self.open_ties or self.crossing_mismatches)


@dataclass
class Comparison:
    theorems: dict[int, TheoremDiff]
    known_found: dict[int, list[str]]
    never_found: dict[int, list[str]]  # crossing number -> table names never produced
    ties_only: list[str]  # table names produced only inside ties
    skipped: list[int] = field(default_factory=list)  # tile numbers with no layout in the report
    min_crossing_number: int = 0

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.theorems.values())


def _ties_by_tile(report: EnumerationReport) -> dict[int, list[tuple[tuple[str, ...], str, int]]]:
    out: dict[int, list] = {}
    for cell in report.cells:
        for key in cell.ties:
            out.setdefault(mask_tile(cell.mask_id), []).append((tuple(key.split("|")), cell.mask_id, cell.c))
    return out


def theorem_tables(
    report: EnumerationReport, index: KnotIndex | None = None, min_crossing_number: int = 0
) -> Comparison:
    """Compare computed first appearances with the expected lists.

    Names seen only inside a fingerprint tie are listed, never resolved.  An
    expected name seen only in a tie counts as covered; a tie with no member
    among the expected or previously known names is an open tie.

    When the report holds cells for some layouts only, tile numbers without
    cells are skipped; an empty report is compared against every list.
    ``min_crossing_number`` restricts the expected lists to names with at
    least that crossing number.
    """
    first = {name: k for name, k in report.knots.items()}
    known = {n for names in KNOWN_TILE_NUMBERS.values() for n in names}
    expected_all = {n for names in EXPECTED.values() for n in names}
    ties = _ties_by_tile(report)
    theorems = {}
    earlier: set[str] = set(known)
    ran = {mask_tile(cell.mask_id) for cell in report.cells}
    skipped = [t for t in EXPECTED if ran and t not in ran]

    def in_scope(name: str) -> bool:
        cn = name_crossings(name)
        return cn is None or cn >= min_crossing_number

    for tile, expected in EXPECTED.items():
        if tile in skipped:
            earlier |= set(expected)
            continue
        expected = tuple(n for n in expected if in_scope(n))
        diff = TheoremDiff(tile, expected)
        here = sorted(
            (n for n, k in first.items() if k.tile_number == tile and n not in known and in_scope(n)),
            key=knot_sort_key,
        )
        diff.found = [n for n in here if n in expected]
        # names listed for a lower tile number are reported there as missing
        diff.extra = [n for n in here if n not in expected and n not in earlier]
        tie_list = sorted(set(ties.get(tile, [])), key=lambda t: (t[2], t[1], t[0]))
        diff.ties = tie_list
        tie_members = {n for names, _, _ in tie_list for n in names}
        seen_before = earlier | set(here)
        for names, _, _ in tie_list:
            if not set(names) & (seen_before | expected_all):
                diff.open_ties.append(names)
        for n in expected:
            if n in first and first[n].tile_number == tile:
                continue
            (diff.tie_covered if n in tie_members else diff.missing).append(n)
        for n in expected:
            claim = MIN_CROSSING_CLAIMS.get(n)
            if claim is None:
                continue
            if n in first and first[n].tile_number == tile:
                got = first[n].crossings
            else:
                cs = [c for names, _, c in tie_list if n in names]
                if not cs:
                    continue
                got = min(cs)
            if got != claim:
                diff.crossing_mismatches.append((n, claim, got))
        earlier |= set(expected) | set(here)
        theorems[tile] = diff
    known_found = {
        t: [n for n in names if n in first and first[n].tile_number >= 22] for t, names in KNOWN_TILE_NUMBERS.items()
    }
    never: dict[int, list[str]] = {}
    ties_only: list[str] = []
    if index is not None:
        produced = set(first)
        in_ties = {n for lst in ties.values() for names, _, _ in lst for n in names}
        for name in sorted(index.records, key=knot_sort_key):
            if name in produced or name in known:
                continue
            if name in in_ties:
                ties_only.append(name)
                continue
            cn = index.crossing_number(name)
            never.setdefault(cn, []).append(name)
    return Comparison(theorems, known_found, never, ties_only, skipped, min_crossing_number)


def _wrap(names, width: int = 96, indent: str = "    ") -> list[str]:
    lines, cur = [], indent
    for n in names:
        piece = n if cur == indent else " " + n
        if len(cur) + len(piece) > width:
            lines.append(cur)
            cur = indent + n
        else:
            cur += piece
    if cur.strip():
        lines.append(cur)
    return lines or [indent + "(none)"]


def comparison_text(cmp: Comparison, list_limit: int = 10) -> str:
    out = ["Expected versus computed first appearances"]
    if cmp.min_crossing_number:
        out.append(f"(restricted to crossing number {cmp.min_crossing_number} or more)")
    if cmp.skipped:
        out.append(f"(not enumerated: tile numbers {', '.join(map(str, cmp.skipped))})")
    out.append("")
    for tile, d in cmp.theorems.items():
        verdict = "MATCH" if d.ok else "DIFFERENCES"
        covered = len(d.found) + len(d.tie_covered)
        out.append(f"tile number {tile}: {verdict} ({covered}/{len(d.expected)} expected names covered)")
        out.append(f"  expected ({len(d.expected)}):")
        out += _wrap(d.expected)
        out.append(f"  found unambiguously ({len(d.found)}):")
        out += _wrap(d.found)
        out.append(f"  covered only by fingerprint ties ({len(d.tie_covered)}):")
        out += _wrap(d.tie_covered)
        out.append(f"  missing ({len(d.missing)}):")
        out += _wrap(d.missing)
        out.append(f"  unexpected ({len(d.extra)}):")
        out += _wrap(d.extra)
        out.append(f"  fingerprint ties observed ({len(d.ties)}):")
        for names, mask, c in d.ties:
            flag = "  OPEN" if names in d.open_ties else ""
            out.append(f"    {' | '.join(names)}  (layout {mask}, {c} crossing tiles){flag}")
        if not d.ties:
            out.append("    (none)")
        out.append(f"  crossing-tile claims not matched ({len(d.crossing_mismatches)}):")
        for n, claim, got in d.crossing_mismatches:
            out.append(f"    {n}: expected {claim}, found {got}")
        if not d.crossing_mismatches:
            out.append("    (none)")
        out.append("")
    out.append("Knots with tile number below 22 seen on the layouts:")
    for t, names in cmp.known_found.items():
        out.append(f"  {t}: {' '.join(names) if names else '(none)'}")
    out.append("")
    if cmp.never_found or cmp.ties_only:
        out.append("Table knots never produced on any layout (mosaic number 7 or higher):")
        for cn in sorted(cmp.never_found):
            names = cmp.never_found[cn]
            if cn <= list_limit:
                out.append(f"  crossing number {cn} ({len(names)}):")
                out += _wrap(names)
            else:
                out.append(f"  crossing number {cn}: {len(names)} knots")
        out.append(f"Table knots seen only inside fingerprint ties ({len(cmp.ties_only)}):")
        out += _wrap(cmp.ties_only)
        out.append("")
    return "\n".join(out) + "\n"
