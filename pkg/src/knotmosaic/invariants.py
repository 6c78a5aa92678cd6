"""Kauffman bracket, Jones and Alexander polynomials, determinant.

The bracket is a full 2^c state sum; loop counts come from
:func:`knotmosaic.kernels.loop_counts`.  The Alexander polynomial is the
determinant of an Alexander matrix minor, computed exactly by fraction-free
(Bareiss) elimination over Z[t].  :func:`alexander_fast` gives the same
answer through the modular kernel and is what bulk identification uses.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .poly import LaurentPoly, _trim, poly_divexact, poly_mul, poly_sub
from .trace import Diagram, _slot_partner

MAX_CROSSINGS = 18

# smoothings as in-crossing slot pairings: A joins (a,b),(c,d); B joins (a,d),(b,c)
PAIR_A = np.array([1, 0, 3, 2])
PAIR_B = np.array([3, 2, 1, 0])


class CrossingLimitError(ValueError):
    """Diagram has more crossings than the state sum is allowed to handle."""


def _check_limit(d: Diagram, limit: int | None) -> None:
    limit = MAX_CROSSINGS if limit is None else limit
    if d.n_crossings > limit:
        raise CrossingLimitError(f"{d.n_crossings} crossings exceeds the limit of {limit}")


def state_arrays(d: Diagram) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(edge partner, A pairing, B pairing) on the 4c crossing slots."""
    c = d.n_crossings
    ext = np.array(_slot_partner(d), dtype=np.int64)
    base = 4 * np.repeat(np.arange(c), 4)
    return ext, base + np.tile(PAIR_A, c), base + np.tile(PAIR_B, c)


def kauffman_bracket(d: Diagram, limit: int | None = None) -> LaurentPoly:
    """<D> in the variable A, normalized so the crossingless circle is 1."""
    _check_limit(d, limit)
    c = d.n_crossings
    if c == 0:
        return LaurentPoly({0: 1})
    loops = kernels.loop_counts(*state_arrays(d))
    b_count = np.array([bin(s).count("1") for s in range(1 << c)])
    delta = LaurentPoly({2: -1, -2: -1})
    total = LaurentPoly()
    # group states by (number of B smoothings, loops)
    keys, mult = np.unique(np.stack([b_count, loops], axis=1), axis=0, return_counts=True)
    powers: dict[int, LaurentPoly] = {}
    for (nb, nl), k in zip(keys.tolist(), mult.tolist()):
        if nl - 1 not in powers:
            powers[nl - 1] = delta ** (nl - 1)
        total = total + powers[nl - 1].shift(c - 2 * nb) * k
    return total


def jones_from_bracket(bracket: LaurentPoly, w: int) -> LaurentPoly:
    """V(t) = (-A^3)^(-w) <D> with A = t^(-1/4)."""
    normalized = bracket.shift(-3 * w) * ((-1) ** (w % 2))
    return normalized.scale_exponents(-1, 4)


def jones(d: Diagram, limit: int | None = None) -> LaurentPoly:
    return jones_from_bracket(kauffman_bracket(d, limit), sum(d.signs))


# -- Alexander ---------------------------------------------------------------


def alexander_arcs(d: Diagram) -> tuple[list[int], list[int], list[int]]:
    """Per crossing: (incoming under arc, outgoing under arc, over arc)."""
    n = d.n_crossings
    ps = d.passes()
    k0 = next(k for k, (_, over) in enumerate(ps) if not over)
    inarc, outarc, overarc = [0] * n, [0] * n, [0] * n
    a = 0
    for j in range(1, 2 * n + 1):
        x, over = ps[(k0 + j) % (2 * n)]
        if over:
            overarc[x] = a
        else:
            inarc[x] = a
            a = (a + 1) % n
            outarc[x] = a
    return inarc, outarc, overarc


def alexander_matrix(d: Diagram) -> list[list[list[int]]]:
    """Crossings x arcs matrix with dense Z[t] entries (lowest degree first)."""
    n = d.n_crossings
    inarc, outarc, overarc = alexander_arcs(d)
    mat = [[[] for _ in range(n)] for _ in range(n)]

    def add(x: int, col: int, entry: list[int]) -> None:
        cur = mat[x][col]
        size = max(len(cur), len(entry))
        mat[x][col] = _trim([(cur[i] if i < len(cur) else 0) + (entry[i] if i < len(entry) else 0) for i in range(size)])

    for x, s in enumerate(d.signs):
        add(x, overarc[x], [1, -1])
        add(x, inarc[x], [0, 1] if s > 0 else [-1])
        add(x, outarc[x], [-1] if s > 0 else [0, 1])
    return mat


def bareiss_det(mat: list[list[list[int]]]) -> list[int]:
    """Determinant over Z[t] by fraction-free elimination (exact)."""
    size = len(mat)
    if size == 0:
        return [1]
    m = [[list(e) for e in row] for row in mat]
    sign = 1
    prev = [1]
    for k in range(size - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, size) if m[i][k]), None)
            if swap is None:
                return []
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = poly_sub(poly_mul(m[i][j], m[k][k]), poly_mul(m[i][k], m[k][j]))
                m[i][j] = poly_divexact(num, prev)
            m[i][k] = []
        prev = m[k][k]
    det = m[size - 1][size - 1]
    return [sign * c for c in det]


def normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    """Symmetric exponents and Delta(1) = +1; raises if that is impossible."""
    if p.is_zero():
        raise ValueError("vanishing Alexander polynomial (not a knot diagram)")
    span = p.max_exp - p.min_exp
    if span % 2:
        raise ValueError("Alexander polynomial has odd span")
    q = p.shift(-(p.min_exp + p.max_exp) // 2)
    v = q(1)
    if v not in (1, -1):
        raise ValueError(f"Alexander polynomial has Delta(1) = {v}")
    q = q * v
    if q != q.invert_variable():
        raise ValueError("Alexander polynomial is not symmetric")
    return q


def alexander(d: Diagram) -> LaurentPoly:
    """Normalized Alexander polynomial via an exact minor determinant."""
    n = d.n_crossings
    if n <= 1:
        return LaurentPoly({0: 1})
    mat = alexander_matrix(d)
    minor = [row[: n - 1] for row in mat[: n - 1]]
    return normalize_alexander(LaurentPoly.from_coeffs(bareiss_det(minor)))


def pass_arrays(d: Diagram) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(crossing per pass, over flag per pass, signs) as kernel inputs."""
    ps = d.passes()
    cx = np.array([x for x, _ in ps], dtype=np.int64)
    over = np.array([[o for _, o in ps]], dtype=bool)
    sign = np.array([d.signs], dtype=np.int64)
    return cx, over, sign


def alexander_fast(d: Diagram) -> LaurentPoly:
    """Same result as :func:`alexander`, via the modular kernel."""
    if d.n_crossings <= 1:
        return LaurentPoly({0: 1})
    out, ok = kernels.alexander_batch(*pass_arrays(d))
    if not ok[0]:
        raise ValueError("Alexander kernel result failed validation")
    return alexander_from_row(out[0])


def alexander_from_row(row: np.ndarray) -> LaurentPoly:
    nz = np.flatnonzero(row)
    span = int(nz[-1]) if len(nz) else 0
    return LaurentPoly.from_coeffs(row[: span + 1].tolist(), -(span // 2))


def determinant(d: Diagram) -> int:
    """|Delta(-1)|."""
    return abs(alexander(d)(-1))
