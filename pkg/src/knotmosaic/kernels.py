"""Hot loops: state loop counts, placement filters and batched Alexander determinants.

Every kernel has a numba version and a pure-numpy version with identical
results.  The public wrappers dispatch on :data:`knotmosaic._accel.USE_NUMBA`;
the ``*_numpy`` / ``*_numba`` names are exported for tests and benchmarks.
"""
from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit

PRIME = 2147483647  # 2**31 - 1; products of residues fit in int64

# -- loop counts over all smoothing states ------------------------------------


@njit
def _loop_counts_nb(ext, pair0, pair1):
    m = ext.shape[0]
    c = m // 4
    out = np.empty(1 << c, np.int64)
    seen = np.zeros(m, np.int64)
    for s in range(1 << c):
        stamp = s + 1
        loops = 0
        for p0 in range(m):
            if seen[p0] == stamp:
                continue
            loops += 1
            p = p0
            while seen[p] != stamp:
                seen[p] = stamp
                q = pair1[p] if (s >> (p >> 2)) & 1 else pair0[p]
                seen[q] = stamp
                p = ext[q]
        out[s] = loops
    return out


def _cycle_count_numpy(perm: np.ndarray) -> np.ndarray:
    """Cycles of each row permutation, by pointer doubling on the least label."""
    b, m = perm.shape
    lab = np.broadcast_to(np.arange(m), (b, m)).copy()
    cur = perm.copy()
    steps = 1
    while steps < m:
        lab = np.minimum(lab, np.take_along_axis(lab, cur, axis=1))
        cur = np.take_along_axis(cur, cur, axis=1)
        steps *= 2
    return (lab == np.arange(m)).sum(axis=1)


def loop_counts_numpy(ext, pair0, pair1) -> np.ndarray:
    m = len(ext)
    c = m // 4
    if c == 0:
        return np.ones(1, np.int64)
    states = np.arange(1 << c, dtype=np.int64)
    bits = (states[:, None] >> (np.arange(m) // 4)[None, :]) & 1
    intra = np.where(bits == 1, pair1[None, :], pair0[None, :])
    perm = np.asarray(ext)[intra]
    # each loop shows up as two cycles of ext o intra, one per direction
    return _cycle_count_numpy(perm) // 2


def loop_counts_numba(ext, pair0, pair1) -> np.ndarray:
    if len(ext) == 0:
        return np.ones(1, np.int64)
    return _loop_counts_nb(np.asarray(ext, np.int64), np.asarray(pair0, np.int64), np.asarray(pair1, np.int64))


def loop_counts(ext, pair0, pair1) -> np.ndarray:
    """Loops of every state; bit i of the state index picks ``pair1`` at crossing i."""
    fn = loop_counts_numba if _accel.USE_NUMBA else loop_counts_numpy
    return fn(np.asarray(ext, np.int64), np.asarray(pair0, np.int64), np.asarray(pair1, np.int64))


# -- bracket of every over/under assignment -----------------------------------


def delta_powers(kmax: int, width: int, offset: int) -> np.ndarray:
    """Row k holds the coefficients of (-A^2 - A^-2)^k, exponent e at ``offset + e``."""
    out = np.zeros((kmax + 1, width), np.int64)
    out[0, offset] = 1
    for k in range(1, kmax + 1):
        prev = out[k - 1]
        out[k, :-2] -= prev[2:]
        out[k, 2:] -= prev[:-2]
    return out


def bracket_transform(loops: np.ndarray, c: int) -> tuple[np.ndarray, int]:
    """Bracket polynomials (in A) for all 2^c assignments at once.

    ``loops[s]`` is the loop count of state ``s``.  Assignment ``tau`` weights
    state ``s`` by A at crossings where ``s`` and ``tau`` agree and by A^-1
    elsewhere.  Returns (coefficients[2^c, width], offset of exponent 0).
    """
    kmax = int(loops.max()) - 1
    offset = c + 2 * kmax
    width = 2 * offset + 1
    arr = delta_powers(kmax, width, offset)[loops - 1]
    for i in range(c):
        v = arr.reshape(-1, 2, 1 << i, width)
        lo, hi = v[:, 0], v[:, 1]
        new0 = np.zeros_like(lo)
        new1 = np.zeros_like(hi)
        new0[..., 1:] += lo[..., :-1]
        new0[..., :-1] += hi[..., 1:]
        new1[..., 1:] += hi[..., :-1]
        new1[..., :-1] += lo[..., 1:]
        arr = np.stack([new0, new1], axis=1).reshape(-1, width)
    return arr, offset


# -- placement filter: components and reducedness -----------------------------


@njit
def _placement_flags_nb(ext, intra_fixed, slot_cells, choice_intra, choices, is_cross_choice):
    b = choices.shape[0]
    m = ext.shape[0]
    ns = slot_cells.shape[0]
    comps = np.zeros(b, np.int64)
    reduced = np.zeros(b, np.bool_)
    intra = np.empty(m, np.int64)
    turn = np.empty(m, np.int64)
    crossing = np.zeros(m // 4, np.bool_)
    face = np.empty(m, np.int64)
    seen = np.zeros(m, np.bool_)
    for k in range(b):
        for p in range(m):
            intra[p] = intra_fixed[p]
        for cc in range(m // 4):
            crossing[cc] = False
        for j in range(ns):
            cell = slot_cells[j]
            ch = choices[k, j]
            for q in range(4):
                intra[4 * cell + q] = 4 * cell + choice_intra[ch, q]
            crossing[cell] = is_cross_choice[ch]
        # strand components
        for p in range(m):
            seen[p] = False
        count = 0
        for p0 in range(m):
            if intra[p0] < 0 or seen[p0]:
                continue
            count += 1
            p = p0
            while not seen[p]:
                seen[p] = True
                q = intra[p]
                seen[q] = True
                p = ext[q]
        comps[k] = count
        if count != 1:
            continue
        # faces by the turn-left walk
        for p in range(m):
            if intra[p] < 0:
                turn[p] = -1
            elif crossing[p >> 2]:
                turn[p] = (p & ~3) | ((p + 1) & 3)
            else:
                turn[p] = intra[p]
            face[p] = -1
        nf = 0
        for p0 in range(m):
            if turn[p0] < 0 or face[p0] >= 0:
                continue
            p = p0
            while face[p] < 0:
                face[p] = nf
                p = ext[turn[p]]
            nf += 1
        ok = True
        for cell in range(m // 4):
            if crossing[cell]:
                base = 4 * cell
                if face[base] == face[base + 2] or face[base + 1] == face[base + 3]:
                    ok = False
                    break
        reduced[k] = ok
    return comps, reduced


def _expand_intra(ext, intra_fixed, slot_cells, choice_intra, choices, is_cross_choice):
    b = choices.shape[0]
    m = ext.shape[0]
    intra = np.broadcast_to(intra_fixed, (b, m)).copy()
    crossing = np.zeros((b, m // 4), bool)
    for j, cell in enumerate(slot_cells):
        ch = choices[:, j]
        intra[:, 4 * cell : 4 * cell + 4] = 4 * cell + choice_intra[ch]
        crossing[:, cell] = is_cross_choice[ch]
    return intra, crossing


def placement_flags_numpy(ext, intra_fixed, slot_cells, choice_intra, choices, is_cross_choice):
    b = choices.shape[0]
    m = ext.shape[0]
    if b == 0:
        return np.zeros(0, np.int64), np.zeros(0, bool)
    intra, crossing = _expand_intra(ext, intra_fixed, slot_cells, choice_intra, choices, is_cross_choice)
    active = intra >= 0
    idx = np.arange(m)
    # inactive ports become fixed points and are discounted afterwards
    safe_intra = np.where(active, intra, idx)
    strand = np.where(active, ext[safe_intra], idx)
    cycles = _cycle_count_numpy(strand)
    comps = (cycles - (~active).sum(axis=1)) // 2
    cross_port = np.repeat(crossing, 4, axis=1)
    turn = np.where(cross_port, (idx & ~3) | ((idx + 1) & 3), safe_intra)
    walk = np.where(active, ext[turn], idx)
    lab = np.broadcast_to(idx, (b, m)).copy()
    cur = walk.copy()
    steps = 1
    while steps < m:
        lab = np.minimum(lab, np.take_along_axis(lab, cur, axis=1))
        cur = np.take_along_axis(cur, cur, axis=1)
        steps *= 2
    f = lab.reshape(b, m // 4, 4)
    bad = crossing & ((f[:, :, 0] == f[:, :, 2]) | (f[:, :, 1] == f[:, :, 3]))
    reduced = (comps == 1) & ~bad.any(axis=1)
    return comps.astype(np.int64), reduced


def placement_flags_numba(ext, intra_fixed, slot_cells, choice_intra, choices, is_cross_choice):
    return _placement_flags_nb(ext, intra_fixed, slot_cells, choice_intra, choices, is_cross_choice)


def placement_flags(ext, intra_fixed, slot_cells, choice_intra, choices, is_cross_choice):
    """(component count, reduced flag) of each slot filling in ``choices``.

    Ports are numbered ``4*cell + port``.  ``intra_fixed`` gives the in-tile
    partner of each port of the fixed cells (-1 when unused), ``choice_intra[k]``
    the in-tile pairing for slot choice ``k``.  The reduced flag is only
    meaningful when the component count is 1.
    """
    args = (
        np.asarray(ext, np.int64),
        np.asarray(intra_fixed, np.int64),
        np.asarray(slot_cells, np.int64),
        np.asarray(choice_intra, np.int64),
        np.ascontiguousarray(choices, np.int64),
        np.asarray(is_cross_choice, np.bool_),
    )
    fn = placement_flags_numba if _accel.USE_NUMBA else placement_flags_numpy
    return fn(*args)


# -- Alexander polynomials mod p ----------------------------------------------


@njit
def _powmod(a, e):
    r = 1
    a %= PRIME
    while e:
        if e & 1:
            r = r * a % PRIME
        a = a * a % PRIME
        e >>= 1
    return r


@njit
def _det_mod(mat, size):
    det = 1
    for j in range(size):
        piv = -1
        for i in range(j, size):
            if mat[i, j] != 0:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != j:
            for q in range(size):
                tmp = mat[j, q]
                mat[j, q] = mat[piv, q]
                mat[piv, q] = tmp
            det = PRIME - det if det else 0
        det = det * mat[j, j] % PRIME
        inv = _powmod(mat[j, j], PRIME - 2)
        for i in range(j + 1, size):
            f = mat[i, j] * inv % PRIME
            if f:
                for q in range(j, size):
                    mat[i, q] = (mat[i, q] - f * mat[j, q]) % PRIME
    return det


@njit
def _arcs(cx, over_row, n):
    n2 = cx.shape[0]
    inarc = np.empty(n, np.int64)
    outarc = np.empty(n, np.int64)
    overarc = np.empty(n, np.int64)
    k0 = 0
    while over_row[k0]:
        k0 += 1
    a = 0
    for j in range(1, n2 + 1):
        k = (k0 + j) % n2
        x = cx[k]
        if over_row[k]:
            overarc[x] = a
        else:
            inarc[x] = a
            a = (a + 1) % n
            outarc[x] = a
    return inarc, outarc, overarc


@njit
def _interpolate(xs, ys):
    """Monomial coefficients (mod p) of the polynomial through (xs, ys)."""
    n = xs.shape[0]
    c = ys.copy()
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            c[i] = (c[i] - c[i - 1]) % PRIME * _powmod((xs[i] - xs[i - j]) % PRIME, PRIME - 2) % PRIME
    poly = np.zeros(n, np.int64)
    poly[0] = c[n - 1]
    deg = 0
    for i in range(n - 2, -1, -1):
        # poly = poly * (t - xs[i]) + c[i]
        for q in range(deg + 1, 0, -1):
            poly[q] = (poly[q - 1] - xs[i] * poly[q]) % PRIME
        poly[0] = (c[i] - xs[i] * poly[0]) % PRIME
        deg += 1
    return poly


@njit
def _normalize_row(poly, out_row):
    """Center, fix sign, validate; writes coefficients into out_row, returns ok."""
    n = poly.shape[0]
    lo = -1
    hi = -1
    for i in range(n):
        v = poly[i]
        if v > PRIME // 2:
            v -= PRIME
        poly[i] = v
        if v != 0:
            if lo < 0:
                lo = i
            hi = i
    if lo < 0 or (hi - lo) % 2 == 1:
        return False
    total = 0
    for i in range(lo, hi + 1):
        total += poly[i]
    if total != 1 and total != -1:
        return False
    for i in range(hi - lo + 1):
        if poly[lo + i] != poly[hi - i]:
            return False
    for i in range(hi - lo + 1):
        out_row[i] = poly[lo + i] * total
    return True


@njit
def _alexander_batch_nb(cx, over, sign):
    b = over.shape[0]
    n = sign.shape[1]
    out = np.zeros((b, max(n, 1)), np.int64)
    ok = np.zeros(b, np.bool_)
    size = n - 1
    mat = np.zeros((max(size, 1), max(size, 1)), np.int64)
    xs = np.arange(2, n + 2).astype(np.int64)
    ys = np.empty(n, np.int64)
    for k in range(b):
        if n <= 1:
            out[k, 0] = 1
            ok[k] = True
            continue
        inarc, outarc, overarc = _arcs(cx, over[k], n)
        for pi in range(n):
            t = xs[pi]
            for i in range(size):
                for j in range(size):
                    mat[i, j] = 0
            for x in range(size):
                s = sign[k, x]
                if overarc[x] < size:
                    mat[x, overarc[x]] = (mat[x, overarc[x]] + 1 - t) % PRIME
                if inarc[x] < size:
                    mat[x, inarc[x]] = (mat[x, inarc[x]] + (t if s > 0 else PRIME - 1)) % PRIME
                if outarc[x] < size:
                    mat[x, outarc[x]] = (mat[x, outarc[x]] + (PRIME - 1 if s > 0 else t)) % PRIME
            ys[pi] = _det_mod(mat, size)
        poly = _interpolate(xs, ys)
        ok[k] = _normalize_row(poly, out[k])
    return out, ok


def _powmod_vec(a: np.ndarray, e: int) -> np.ndarray:
    r = np.ones_like(a)
    a = a % PRIME
    while e:
        if e & 1:
            r = r * a % PRIME
        a = a * a % PRIME
        e >>= 1
    return r


def _det_mod_numpy(mats: np.ndarray) -> np.ndarray:
    """Determinants mod p of a stack of square matrices (residues in [0, p))."""
    mats = mats.copy()
    k, size, _ = mats.shape
    det = np.ones(k, np.int64)
    rows = np.arange(k)
    for j in range(size):
        nz = mats[:, j:, j] != 0
        has = nz.any(axis=1)
        piv = j + nz.argmax(axis=1)
        det = np.where(has, det, 0)
        swap = has & (piv != j)
        if swap.any():
            r = rows[swap]
            a = mats[r, j].copy()
            mats[r, j] = mats[r, piv[swap]]
            mats[r, piv[swap]] = a
            det[r] = (PRIME - det[r]) % PRIME
        pv = np.where(has, mats[:, j, j], 1)
        det = det * pv % PRIME
        inv = _powmod_vec(pv, PRIME - 2)
        f = mats[:, j + 1 :, j] * inv[:, None] % PRIME
        mats[:, j + 1 :, :] = (mats[:, j + 1 :, :] - f[:, :, None] * mats[:, j : j + 1, :]) % PRIME
    return det


def alexander_batch_numpy(cx, over, sign):
    over = np.asarray(over, bool)
    sign = np.asarray(sign, np.int64)
    b, n = sign.shape
    out = np.zeros((b, max(n, 1)), np.int64)
    ok = np.zeros(b, bool)
    if n <= 1:
        out[:, 0] = 1
        ok[:] = True
        return out, ok
    cx = np.asarray(cx, np.int64)
    n2 = 2 * n
    # arcs: walk passes starting just after the first under pass
    k0 = (~over).argmax(axis=1)
    order = (k0[:, None] + 1 + np.arange(n2)[None, :]) % n2
    ov = np.take_along_axis(over, order, axis=1)
    xs_cross = cx[order]
    under_seen = np.cumsum(~ov, axis=1)
    arc_here = (under_seen - (~ov)) % n  # arc carried by the edge entering this pass
    inarc = np.zeros((b, n), np.int64)
    outarc = np.zeros((b, n), np.int64)
    overarc = np.zeros((b, n), np.int64)
    ub = ~ov
    r_u, k_u = np.nonzero(ub)
    inarc[r_u, xs_cross[r_u, k_u]] = arc_here[r_u, k_u]
    outarc[r_u, xs_cross[r_u, k_u]] = (arc_here[r_u, k_u] + 1) % n
    r_o, k_o = np.nonzero(ov)
    overarc[r_o, xs_cross[r_o, k_o]] = arc_here[r_o, k_o]
    size = n - 1
    xs = np.arange(2, n + 2, dtype=np.int64)
    ys = np.empty((b, n), np.int64)
    x_idx = np.arange(size)
    for pi, t in enumerate(xs):
        mats = np.zeros((b, size, size + 1), np.int64)  # spare column absorbs the deleted arc
        bi = np.repeat(np.arange(b), size)
        xi = np.tile(x_idx, b)
        s = sign[:, :size].ravel()
        np.add.at(mats, (bi, xi, overarc[:, :size].ravel()), 1 - t)
        np.add.at(mats, (bi, xi, inarc[:, :size].ravel()), np.where(s > 0, t, -1))
        np.add.at(mats, (bi, xi, outarc[:, :size].ravel()), np.where(s > 0, -1, t))
        ys[:, pi] = _det_mod_numpy(mats[:, :, :size] % PRIME)
    # Newton interpolation, vectorized over the batch
    c = ys.copy()
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            inv = pow(int(xs[i] - xs[i - j]) % PRIME, PRIME - 2, PRIME)
            c[:, i] = (c[:, i] - c[:, i - 1]) % PRIME * inv % PRIME
    poly = np.zeros((b, n), np.int64)
    poly[:, 0] = c[:, n - 1]
    for i in range(n - 2, -1, -1):
        for q in range(n - 1 - i, 0, -1):
            poly[:, q] = (poly[:, q - 1] - xs[i] * poly[:, q]) % PRIME
        poly[:, 0] = (c[:, i] - xs[i] * poly[:, 0]) % PRIME
    poly = np.where(poly > PRIME // 2, poly - PRIME, poly)
    for k in range(b):
        nzi = np.flatnonzero(poly[k])
        if len(nzi) == 0:
            continue
        lo, hi = nzi[0], nzi[-1]
        seg = poly[k, lo : hi + 1]
        total = int(seg.sum())
        if (hi - lo) % 2 or total not in (1, -1) or not np.array_equal(seg, seg[::-1]):
            continue
        out[k, : len(seg)] = seg * total
        ok[k] = True
    return out, ok


def alexander_batch_numba(cx, over, sign):
    return _alexander_batch_nb(
        np.asarray(cx, np.int64), np.ascontiguousarray(over, np.bool_), np.ascontiguousarray(sign, np.int64)
    )


def alexander_batch(cx, over, sign):
    """Normalized Alexander polynomials of a batch of over/under assignments.

    ``cx[k]`` is the crossing met by pass ``k`` of the oriented curve,
    ``over[b, k]`` whether that pass is the over-strand and ``sign[b, x]`` the
    sign of crossing ``x``.  Row ``b`` of the result lists the coefficients of
    Delta from exponent ``-m`` to ``m`` (zero padded); ``ok[b]`` is False when
    the result fails the knot checks (span parity, Delta(1) = +-1, symmetry).
    """
    fn = alexander_batch_numba if _accel.USE_NUMBA else alexander_batch_numpy
    return fn(cx, over, sign)
