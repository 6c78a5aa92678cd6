"""Knot mosaics: tiles, tracing, invariants, table lookup and layout enumeration."""
from .mosaic import (
    Mosaic,
    MosaicError,
    apply_symmetry,
    canonical_form,
    crossing_count,
    is_suitably_connected,
    parse_mosaic,
    read_mosaic,
    symmetry_images,
    tile_number,
)
from .trace import Diagram, TraceError, components, connected_sum_factors, parse_pd, to_diagram
from .invariants import CrossingLimitError, alexander, determinant, jones, kauffman_bracket
from .knotdb import Fingerprint, KnotIndex, fingerprint, identify, identify_detailed, load_table
from .masks import MASK_IDS, LayoutMask, load_mask
from .enumeration import EnumerationReport, generate_placements, run_cell, run_full_enumeration, sweep_assignments
from .catalog import build_catalog, render, theorem_tables

__version__ = "0.1.0"

__all__ = [
    "CrossingLimitError",
    "Diagram",
    "EnumerationReport",
    "Fingerprint",
    "KnotIndex",
    "LayoutMask",
    "MASK_IDS",
    "Mosaic",
    "MosaicError",
    "TraceError",
    "alexander",
    "apply_symmetry",
    "build_catalog",
    "canonical_form",
    "components",
    "connected_sum_factors",
    "crossing_count",
    "determinant",
    "fingerprint",
    "generate_placements",
    "identify",
    "identify_detailed",
    "is_suitably_connected",
    "jones",
    "kauffman_bracket",
    "load_mask",
    "load_table",
    "parse_mosaic",
    "parse_pd",
    "read_mosaic",
    "render",
    "run_cell",
    "run_full_enumeration",
    "sweep_assignments",
    "symmetry_images",
    "theorem_tables",
    "tile_number",
    "to_diagram",
]
