"""Reference knot table, fingerprint index and identification.

A fingerprint is (folded Jones, Alexander, determinant).  The Jones part is
the lexicographically smaller text of V(t) and V(1/t), so a knot and its
mirror image share a fingerprint, as table names do.
"""
from __future__ import annotations

import gzip
import hashlib
import io
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple

from . import invariants
from .poly import LaurentPoly
from .trace import Diagram, connected_sum_factors, parse_pd

TABLE_ENV = "KNOTMOSAIC_TABLE"
DATA_DIR = Path(__file__).resolve().parent / "data"
DEFAULT_TABLE = DATA_DIR / "knots.csv.gz"

_NAME = re.compile(r"^(?:unknot|(\d+)_(\d+)|(\d+)([an])(\d+))$")


class TableError(ValueError):
    """Malformed or inconsistent knot table."""


class Fingerprint(NamedTuple):
    jones: str
    alexander: str
    determinant: int

    def text(self) -> str:
        return f"jones={self.jones}; alexander={self.alexander}; det={self.determinant}"


@dataclass(frozen=True)
class KnotRecord:
    name: str
    crossing_number: int
    pd: Diagram


def fold_jones(v: LaurentPoly) -> str:
    return min(v.to_text(), v.invert_variable().to_text())


def make_fingerprint(v: LaurentPoly, alex: LaurentPoly) -> Fingerprint:
    det = abs(v(-1))
    if det != abs(alex(-1)):
        raise ArithmeticError(f"determinant mismatch: |V(-1)|={det}, |Delta(-1)|={abs(alex(-1))}")
    return Fingerprint(fold_jones(v), alex.to_text(), det)


def fingerprint(d: Diagram) -> Fingerprint:
    """Fingerprint of a knot diagram (fast modular Alexander path)."""
    return make_fingerprint(invariants.jones(d), invariants.alexander_fast(d))


def name_crossings(name: str) -> int | None:
    m = _NAME.match(name)
    if m is None:
        return None
    if name == "unknot":
        return 0
    return int(m.group(1) or m.group(3))


def default_table_path() -> Path:
    env = os.environ.get(TABLE_ENV)
    return Path(env) if env else DEFAULT_TABLE


def _open_text(path: Path):
    raw = path.read_bytes()
    if raw[:2] == b"\x1f\x8b":
        raw = gzip.decompress(raw)
    return raw, io.StringIO(raw.decode("utf-8"))


def read_table(path: str | Path | None = None) -> tuple[list[KnotRecord], str]:
    """Parse a table file; returns the records and a digest of the file contents."""
    path = Path(path) if path is not None else default_table_path()
    if not path.exists():
        raise FileNotFoundError(f"knot table not found: {path}")
    raw, fh = _open_text(path)
    records: list[KnotRecord] = []
    seen: set[str] = set()
    for lineno, line in enumerate(fh, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",", 2)
        if len(parts) != 3:
            raise TableError(f"{path}:{lineno}: expected name,crossings,PD[...]")
        name, cross, pd_text = (p.strip() for p in parts)
        if name in seen:
            raise TableError(f"{path}:{lineno}: duplicate knot name {name!r}")
        try:
            n = int(cross)
            d = parse_pd(pd_text)
        except ValueError as exc:
            raise TableError(f"{path}:{lineno}: {exc}") from exc
        expected = name_crossings(name)
        if expected is not None and expected != n:
            raise TableError(f"{path}:{lineno}: {name} listed with {n} crossings")
        if d.n_crossings != n:
            raise TableError(f"{path}:{lineno}: PD code has {d.n_crossings} crossings, not {n}")
        seen.add(name)
        records.append(KnotRecord(name, n, d))
    return records, hashlib.sha256(raw).hexdigest()


# -- fingerprint cache ---------------------------------------------------------


def cache_path_for(table: Path) -> Path:
    if table.resolve() == DEFAULT_TABLE.resolve():
        return DATA_DIR / "fingerprints.tsv.gz"
    return table.with_name(table.name.split(".")[0] + ".fingerprints.tsv.gz")


def write_cache(path: Path, digest: str, prints: dict[str, Fingerprint]) -> None:
    lines = [f"# table-sha256 {digest}", "# name\tjones\talexander\tdeterminant"]
    lines += [f"{n}\t{fp.jones}\t{fp.alexander}\t{fp.determinant}" for n, fp in prints.items()]
    data = ("\n".join(lines) + "\n").encode("utf-8")
    tmp = path.with_suffix(".tmp")
    with gzip.GzipFile(tmp, "wb", mtime=0) as fh:
        fh.write(data)
    os.replace(tmp, path)


def read_cache(path: Path, digest: str) -> dict[str, Fingerprint] | None:
    """Cached fingerprints, or None if absent or made from a different table."""
    if not path.exists():
        return None
    with gzip.open(path, "rt", encoding="utf-8") as fh:
        header = fh.readline().split()
        if header[-1:] != [digest]:
            return None
        out = {}
        for line in fh:
            if line.startswith("#"):
                continue
            name, j, a, det = line.rstrip("\n").split("\t")
            out[name] = Fingerprint(j, a, int(det))
    return out


# -- the index ---------------------------------------------------------------


class KnotIndex:
    """Fingerprint -> names, plus the set of folded Jones texts for quick rejection."""

    def __init__(self, records: Iterable[KnotRecord], prints: dict[str, Fingerprint]):
        self.records = {r.name: r for r in records}
        self.prints = dict(prints)
        self.by_print: dict[Fingerprint, list[str]] = {}
        for name in self.records:
            self.by_print.setdefault(self.prints[name], []).append(name)
        for names in self.by_print.values():
            names.sort(key=knot_sort_key)
        self.jones_texts = frozenset(fp.jones for fp in self.by_print)

    def __len__(self) -> int:
        return len(self.records)

    def collisions(self) -> dict[Fingerprint, list[str]]:
        return {fp: names for fp, names in self.by_print.items() if len(names) > 1}

    def lookup(self, fp: Fingerprint) -> frozenset[str]:
        return frozenset(self.by_print.get(fp, ()))

    def crossing_number(self, name: str) -> int:
        return self.records[name].crossing_number


def load_table(
    path: str | Path | None = None, use_cache: bool = True, max_crossings: int | None = None
) -> KnotIndex:
    """Build the index; fingerprints come from the cache when it matches the table."""
    table = Path(path) if path is not None else default_table_path()
    records, digest = read_table(table)
    cache = cache_path_for(table)
    prints = read_cache(cache, digest) if use_cache else None
    if prints is None or any(r.name not in prints for r in records):
        prints = {r.name: fingerprint(r.pd) for r in records}
        if use_cache:
            try:
                write_cache(cache, digest, prints)
            except OSError:
                pass
    if max_crossings is not None:
        records = [r for r in records if r.crossing_number <= max_crossings]
    return KnotIndex(records, {r.name: prints[r.name] for r in records})


def identify(d: Diagram, index: KnotIndex) -> frozenset[str]:
    """All table names sharing the diagram's fingerprint (empty: not in the table)."""
    return index.lookup(fingerprint(d))


@dataclass(frozen=True)
class Identification:
    """Names for a diagram; a visible connected sum lists its knotted summands instead."""

    fingerprint: Fingerprint
    names: frozenset[str]
    summands: tuple[frozenset[str], ...] = ()

    @property
    def composite(self) -> bool:
        return len(self.summands) > 1

    @property
    def identified(self) -> bool:
        if self.composite:
            return all(self.summands)
        return bool(self.names)

    def label(self) -> str:
        if self.composite:
            return " # ".join("|".join(sorted(s, key=knot_sort_key)) or "?" for s in self.summands)
        return "|".join(sorted(self.names, key=knot_sort_key)) or "unidentified"


def identify_detailed(d: Diagram, index: KnotIndex) -> Identification:
    """Like :func:`identify`, but a diagram that splits along a two-point
    circle into two or more knotted pieces is reported as composite; the whole
    fingerprint could otherwise collide with a prime table entry."""
    fp = fingerprint(d)
    parts = connected_sum_factors(d)
    if len(parts) > 1:
        knotted = []
        for part in parts:
            names = index.lookup(fingerprint(part))
            if names != frozenset({"unknot"}):
                knotted.append(names)
        if len(knotted) > 1:
            return Identification(fp, frozenset(), tuple(knotted))
    return Identification(fp, index.lookup(fp))


def knot_sort_key(name: str) -> tuple:
    """Table order: crossing number, then alternating before non-alternating, then index."""
    m = _NAME.match(name)
    if m is None:
        return (10**6, 0, 0, name)
    if name == "unknot":
        return (0, 0, 0, name)
    if m.group(1):
        return (int(m.group(1)), 0, int(m.group(2)), name)
    return (int(m.group(3)), 1 if m.group(4) == "a" else 2, int(m.group(5)), name)
