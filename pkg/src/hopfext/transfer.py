"""Transfer of the cobar differential onto the word-cohomology basis.

The cobar complex in a fixed internal degree splits coefficient-side
(monomials) against word-side (bar slots).  The word-side part is
contracted by the wordcx module; this module perturbs that contraction by
the coefficient-feeding part of the differential, giving a small complex
with the same cohomology.  All the large-window computations (Ext tables,
integral structure, spectral sequence pages) run here.

For the full presentation, cochains are written in the extended letter
alphabet, where the right-unit image of the top base generator occupies
its own letter and the transfer data assembles tensorially from block and
tail retractions.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebroid import AlgebroidSpec, eta_R_monomial
from .coefficients import LocalRational
from .flinalg import matmul_mod, rank_gf5
from .gradedpoly import Monomial, Polynomial, graded_piece_basis
from .wordcx import (
    block_contraction,
    block_words,
    reduced_contraction,
    reduced_words,
    split_blocks,
)

Word = Tuple[int, ...]
Key = Tuple[Monomial, Word]
R_DEG = 8


def _coeff_int(c, mod: int) -> int:
    if isinstance(c, LocalRational):
        return c.num * pow(c.den, -1, mod) % mod
    return int(c) % mod


def _word_index(words: Sequence[Word]) -> Dict[Word, int]:
    return {w: i for i, w in enumerate(words)}


@lru_cache(maxsize=None)
def _cell_index(n: int, s: int) -> Dict[Word, int]:
    return _word_index(reduced_words(n, s))


@lru_cache(maxsize=None)
def _block_index(W: int, s: int) -> Dict[Word, int]:
    return _word_index(block_words(W, s))


# --- coefficient tails ------------------------------------------------------

@lru_cache(maxsize=None)
def eta_items(spec: AlgebroidSpec, mono: Monomial, mod: int
              ) -> Tuple[Tuple[int, Monomial, int], ...]:
    """Right-unit tail of a base monomial as (slot weight, monomial, coeff).

    Reduced presentation: the right-unit image is already in normal form
    with slot weights 1..4."""
    g = eta_R_monomial(spec, mono)
    out = []
    for e, p in sorted(g.terms.items()):
        if e == 0:
            continue
        for m2, c in p.sorted_terms():
            v = _coeff_int(c, mod)
            if v:
                out.append((e, m2, v))
    return tuple(out)


@lru_cache(maxsize=None)
def _z_tail(spec: AlgebroidSpec) -> Tuple[Tuple[int, Polynomial], ...]:
    """The non-z part of the top-power rewriting: r^5 = z - sum tail[e]*r^e."""
    ring = spec.base_ring
    out = []
    for i, name in enumerate(("a5", "a4", "a3", "a2", "a1")):
        if name in ring.names and name not in spec.killed:
            out.append((i, Polynomial.generator(ring, name)))
    return tuple(out)


@lru_cache(maxsize=None)
def eta_items_L(spec: AlgebroidSpec, mono: Monomial, mod: int
                ) -> Tuple[Tuple[int, Monomial, int], ...]:
    """Right-unit tail in the extended letter alphabet (full presentation).

    Rewrites high r powers through r^5 = z - a5 - a4 r - ... so every term
    is a single letter of weight 5m + j."""
    if spec.variant != "full":
        raise ValueError("extended alphabet applies to the full presentation")
    ring = spec.base_ring
    g = eta_R_monomial(spec, mono)
    state: Dict[Tuple[int, int], Polynomial] = {
        (0, e): p for e, p in g.terms.items()}
    tail = _z_tail(spec)
    while True:
        high = [k for k in state if k[1] >= 5]
        if not high:
            break
        m, e = max(high, key=lambda k: k[1])
        p = state.pop((m, e))
        up = (m + 1, e - 5)
        state[up] = state.get(up, Polynomial.zero(ring)) + p
        for j, q in tail:
            key = (m, e - 5 + j)
            state[key] = state.get(key, Polynomial.zero(ring)) - p * q
    out = []
    for (m, e) in sorted(state):
        p = state[(m, e)]
        w = 5 * m + e
        if w == 0:
            # the weight-0 part dies in Gamma / (left unit image)
            continue
        for m2, c in p.sorted_terms():
            v = _coeff_int(c, mod)
            if v:
                out.append((w, m2, v))
    return tuple(out)


# --- per-word contraction actions ------------------------------------------

def _col_items(mat: np.ndarray, j: int) -> List[Tuple[int, int]]:
    col = mat[:, j]
    nz = np.nonzero(col)[0]
    return [(int(i), int(col[i])) for i in nz]


@lru_cache(maxsize=None)
def _h_word(spec: AlgebroidSpec, word: Word, hi: int, mod: int
            ) -> Tuple[Tuple[Word, int], ...]:
    """Homotopy applied to a single word, as (lower word, coeff) pairs."""
    if spec.variant == "reduced":
        n, s = sum(word), len(word)
        con = reduced_contraction(n, hi, mod)
        low = reduced_words(n, s - 1)
        return tuple((low[i], c) for i, c in
                     _col_items(con.h[s], _cell_index(n, s)[word]))
    blocks, tailw = split_blocks(word)
    factors = list(blocks) + [tailw]
    out: Dict[Word, int] = {}
    prefix: Word = ()
    for i, f in enumerate(factors):
        hv = _factor_h(f, hi, mod)
        if hv:
            sign = -1 if len(prefix) % 2 else 1
            parts: List[List[Tuple[Word, int]]] = [list(hv.items())]
            dead = False
            for g in factors[i + 1:]:
                pv = _factor_proj(g, hi, mod)
                if not pv:
                    dead = True
                    break
                parts.append(list(pv.items()))
            if not dead:
                stack = [(prefix, sign)]
                for choices in parts:
                    stack = [(w + w2, c * c2 % mod)
                             for (w, c) in stack for (w2, c2) in choices]
                for w, c in stack:
                    out[w] = (out.get(w, 0) + c) % mod
        prefix = prefix + f
    return tuple((w, c) for w, c in out.items() if c)


def _factor_h(f: Word, hi: int, mod: int) -> Dict[Word, int]:
    if not f:
        return {}
    if f[-1] >= 5:
        con = block_contraction(sum(f), hi, mod)
        low = block_words(sum(f), len(f) - 1)
        idx = _block_index(sum(f), len(f))[f]
    else:
        con = reduced_contraction(sum(f), hi, mod)
        low = reduced_words(sum(f), len(f) - 1)
        idx = _cell_index(sum(f), len(f))[f]
    s = len(f)
    if s not in con.h or not con.h[s].size:
        return {}
    return {low[i]: c for i, c in _col_items(con.h[s], idx)}


def _factor_proj(f: Word, hi: int, mod: int) -> Dict[Word, int]:
    """iota compose pi on one tensor factor."""
    if not f:
        return {(): 1}
    s = len(f)
    if f[-1] >= 5:
        con = block_contraction(sum(f), hi, mod)
        words = block_words(sum(f), s)
        idx = _block_index(sum(f), s)[f]
    else:
        con = reduced_contraction(sum(f), hi, mod)
        words = reduced_words(sum(f), s)
        idx = _cell_index(sum(f), s)[f]
    if con.h_dim(s) == 0:
        return {}
    vec = matmul_mod(con.iota[s], con.pi[s][:, idx:idx + 1], mod)[:, 0]
    return {words[i]: int(vec[i]) for i in np.nonzero(vec)[0]}


# --- small basis ------------------------------------------------------------

# reduced label: (n, j); full label: (zletters, tail_n, tail_j)

@lru_cache(maxsize=None)
def small_word_labels(spec: AlgebroidSpec, s: int, n: int, hi: int, mod: int
                      ) -> Tuple[Tuple, ...]:
    """Harmonic word classes at word length s and weight n."""
    if spec.variant == "reduced":
        con = reduced_contraction(n, hi, mod)
        return tuple((n, j) for j in range(con.h_dim(s)))
    out = []
    for b in range(0, s + 1):
        for zs in _zweight_tuples(b, n):
            tail_n = n - sum(zs)
            st = s - b
            if st < 0:
                continue
            con = reduced_contraction(tail_n, hi, mod)
            for j in range(con.h_dim(st)):
                out.append((zs, tail_n, j))
    return tuple(out)


@lru_cache(maxsize=None)
def _zweight_tuples(b: int, n_max: int) -> Tuple[Tuple[int, ...], ...]:
    if b == 0:
        return ((),)
    out = []
    for w in range(5, n_max + 1, 5):
        for rest in _zweight_tuples(b - 1, n_max - w):
            out.append((w,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _pi_word(spec: AlgebroidSpec, word: Word, hi: int, mod: int
             ) -> Tuple[Tuple[Tuple, int], ...]:
    """Projection of a word onto harmonic labels (monomial untouched)."""
    if spec.variant == "reduced":
        n, s = sum(word), len(word)
        con = reduced_contraction(n, hi, mod)
        if con.h_dim(s) == 0:
            return ()
        idx = _cell_index(n, s)[word]
        col = con.pi[s][:, idx]
        return tuple(((n, int(j)), int(col[j])) for j in np.nonzero(col)[0])
    blocks, tailw = split_blocks(word)
    coeff = 1
    zs = []
    for f in blocks:
        if len(f) != 1 or f[0] % 5 != 0:
            return ()
        con = block_contraction(f[0], hi, mod)
        coeff = coeff * int(con.pi[1][0, 0]) % mod
        zs.append(f[0])
    tail_n, st = sum(tailw), len(tailw)
    con = reduced_contraction(tail_n, hi, mod)
    if con.h_dim(st) == 0:
        return ()
    col = con.pi[st][:, _cell_index(tail_n, st)[tailw]]
    return tuple(((tuple(zs), tail_n, int(j)), coeff * int(col[j]) % mod)
                 for j in np.nonzero(col)[0])


@lru_cache(maxsize=None)
def _iota_label(spec: AlgebroidSpec, s: int, label: Tuple, hi: int, mod: int
                ) -> Tuple[Tuple[Word, int], ...]:
    if spec.variant == "reduced":
        n, j = label
        con = reduced_contraction(n, hi, mod)
        words = reduced_words(n, s)
        col = con.iota[s][:, j]
        return tuple((words[i], int(col[i])) for i in np.nonzero(col)[0])
    zs, tail_n, j = label
    coeff = 1
    head: Word = ()
    for w in zs:
        con = block_contraction(w, hi, mod)
        coeff = coeff * int(con.iota[1][0, 0]) % mod
        head = head + (w,)
    st = s - len(zs)
    con = reduced_contraction(tail_n, hi, mod)
    words = reduced_words(tail_n, st)
    col = con.iota[st][:, j]
    return tuple((head + words[i], coeff * int(col[i]) % mod)
                 for i in np.nonzero(col)[0])


def small_basis(spec: AlgebroidSpec, s: int, t: int, hi: int, mod: int
                ) -> Tuple[Tuple[Tuple, Monomial], ...]:
    """Deterministic basis of the transferred complex at (s, t)."""
    ring = spec.base_ring
    killed = len(spec.killed)
    out = []
    if s < 0 or t % R_DEG:
        return ()
    for n in range(0, t // R_DEG + 1):
        labels = small_word_labels(spec, s, n, hi, mod)
        if not labels:
            continue
        monos = [m for m in graded_piece_basis(ring, t - R_DEG * n)
                 if not any(m[i] for i in range(killed))]
        for label in labels:
            for mono in monos:
                out.append((label, mono))
    return tuple(out)


# --- batched transferred differential --------------------------------------

def _delta(spec: AlgebroidSpec, data: Dict[Key, np.ndarray], mod: int
           ) -> Dict[Key, np.ndarray]:
    items = eta_items_L if spec.variant == "full" else eta_items
    out: Dict[Key, np.ndarray] = {}
    for (mono, word), arr in data.items():
        for w0, mono2, cf in items(spec, mono, mod):
            key = (mono2, (w0,) + word)
            cur = out.get(key)
            if cur is None:
                out[key] = cf * arr
            else:
                cur += cf * arr
    return {k: v % mod for k, v in out.items() if np.any(v % mod)}


def _h_batch(spec: AlgebroidSpec, data: Dict[Key, np.ndarray], hi: int,
             mod: int) -> Dict[Key, np.ndarray]:
    out: Dict[Key, np.ndarray] = {}
    for (mono, word), arr in data.items():
        for w2, cf in _h_word(spec, word, hi, mod):
            key = (mono, w2)
            cur = out.get(key)
            if cur is None:
                out[key] = cf * arr
            else:
                cur += cf * arr
    return {k: v % mod for k, v in out.items() if np.any(v % mod)}


@lru_cache(maxsize=None)
def transferred_matrix(spec: AlgebroidSpec, s: int, t: int, hi: int, mod: int
                       ) -> np.ndarray:
    """Matrix of the perturbed differential small(s, t) -> small(s+1, t)."""
    if s + 1 > hi:
        raise ValueError("window exceeds the retraction depth")
    src = small_basis(spec, s, t, hi, mod)
    dst = small_basis(spec, s + 1, t, hi, mod)
    dst_idx = {k: i for i, k in enumerate(dst)}
    out = np.zeros((len(dst), len(src)), dtype=np.int64)
    if not src or not dst:
        return out
    width = len(src)
    data: Dict[Key, np.ndarray] = {}
    for col, (label, mono) in enumerate(src):
        for word, cf in _iota_label(spec, s, label, hi, mod):
            key = (mono, word)
            if key not in data:
                data[key] = np.zeros(width, dtype=np.int64)
            data[key][col] = (data[key][col] + cf) % mod
    while data:
        data = _delta(spec, data, mod)
        for (mono, word), arr in data.items():
            for label, cf in _pi_word(spec, word, hi, mod):
                row = dst_idx.get((label, mono))
                if row is None:
                    raise AssertionError("projection left the small basis")
                out[row] = (out[row] + cf * arr) % mod
        data = _h_batch(spec, data, hi, mod)
    return out


def ext_dim(spec: AlgebroidSpec, s: int, t: int, hi: int) -> int:
    """Mod-5 cohomology dimension at (s, t) via the transferred complex."""
    dim = len(small_basis(spec, s, t, hi, 5))
    if dim == 0:
        return 0
    r_below = rank_gf5(transferred_matrix(spec, s - 1, t, hi, 5)) if s else 0
    r_here = rank_gf5(transferred_matrix(spec, s, t, hi, 5))
    return dim - r_below - r_here


# --- integral structure -----------------------------------------------------

def diagonal_valuations(mat: np.ndarray, k_power: int) -> List[int]:
    """5-adic valuations of the elementary divisors of a matrix over Z/5^K.

    Pivots are chosen at globally minimal valuation, so every elimination
    step is exact at full precision."""
    mod = 5 ** k_power
    a = (np.asarray(mat, dtype=np.int64) % mod).copy()
    vals: List[int] = []
    live_r = list(range(a.shape[0]))
    live_c = list(range(a.shape[1]))
    while live_r and live_c:
        sub = a[np.ix_(live_r, live_c)]
        if not np.any(sub):
            break
        nz = sub[sub != 0]
        v = min(_v5_int(int(x), k_power) for x in nz)
        pos = None
        for ii, i in enumerate(live_r):
            for jj, j in enumerate(live_c):
                if sub[ii, jj] and _v5_int(int(sub[ii, jj]), k_power) == v:
                    pos = (i, j)
                    break
            if pos:
                break
        i0, j0 = pos
        piv = int(a[i0, j0])
        unit = piv // 5 ** v
        inv_unit = pow(unit % mod, -1, mod)
        a[i0, :] = a[i0, :] * inv_unit % mod
        for i in live_r:
            if i != i0 and a[i, j0]:
                f = (int(a[i, j0]) // 5 ** v) % mod
                a[i, :] = (a[i, :] - f * a[i0, :]) % mod
        for j in live_c:
            if j != j0 and a[i0, j]:
                f = (int(a[i0, j]) // 5 ** v) % mod
                a[:, j] = (a[:, j] - f * a[:, j0]) % mod
        vals.append(v)
        live_r.remove(i0)
        live_c.remove(j0)
    return sorted(vals)


def _v5_int(x: int, k_power: int) -> int:
    v = 0
    while x % 5 == 0:
        x //= 5
        v += 1
        if v >= k_power:
            return k_power
    return v


def integral_structure(spec: AlgebroidSpec, s: int, t: int, hi: int,
                       k_power: int) -> Tuple[int, Tuple[int, ...]]:
    """(free rank, torsion exponents) of H^{s,t} over Z_(5).

    Works mod 5^K on the transferred complex; valid while every observed
    elementary divisor valuation stays at most K-2 (asserted)."""
    if spec.quotient_level is not None:
        raise ValueError("integral structure needs the unquotiented spec")
    mod = 5 ** k_power
    dim = len(small_basis(spec, s, t, hi, mod))
    if dim == 0:
        return 0, ()
    below = transferred_matrix(spec, s - 1, t, hi, mod) if s else \
        np.zeros((dim, 0), dtype=np.int64)
    here = transferred_matrix(spec, s, t, hi, mod)
    v_below = diagonal_valuations(below, k_power)
    v_here = diagonal_valuations(here, k_power)
    if any(v > k_power - 2 for v in v_below + v_here):
        raise AssertionError("torsion precision exhausted; raise K")
    free = dim - len(v_below) - len(v_here)
    torsion = tuple(sorted(v for v in v_below if v > 0))
    return free, torsion
