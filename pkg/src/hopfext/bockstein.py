"""Spectral sequence pages for the generator-adic and 5-adic filtrations.

Adding the generator a_k to the quotient base A/I_k gives a filtration of
the A/I_{k-1} cobar complex by powers of a_k; the associated spectral
sequence starts at H*(A/I_k) tensor F5[a_k] and converges to H*(A/I_{k-1}).
The final stage filters the 5-local complex by powers of 5.  Page
dimensions come from rank counts on filtration-restricted matrices of the
transferred small complex; stated differentials are verified on the
symbolic cobar complex by a lift-and-solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from .algebroid import AlgebroidSpec
from .cobar import (
    CobarElement,
    cochain_basis,
    differential,
    differential_matrix_mod,
    element_to_vector,
    vector_to_element,
)
from .coefficients import LocalRational
from .flinalg import rank_gf5, solve_mod
from .transfer import (
    R_DEG,
    diagonal_valuations,
    small_basis,
    transferred_matrix,
)

UNITS = (1, 2, 3, 4)


class NotAPageCycle(ValueError):
    """The element admits no lift whose differential jumps r filtration steps."""


@dataclass(frozen=True)
class FiltrationSpec:
    """Which filtration: k in 1..4 filters A/I_{k-1} by powers of a_k;
    k = 0 filters the 5-local complex by powers of 5."""

    k: int

    def __post_init__(self):
        if not 0 <= self.k <= 4:
            raise IndexError(f"filtration index {self.k} outside 0..4")

    @property
    def base(self) -> AlgebroidSpec:
        level = None if self.k == 0 else self.k - 1
        return AlgebroidSpec("reduced", level)

    @property
    def filter_name(self) -> str:
        return "5" if self.k == 0 else f"a{self.k}"


@dataclass(frozen=True)
class PageEntry:
    s: int
    t: int
    u: int
    dim: int


# --- page dimensions (transferred complex) ---------------------------------

def _small_filtration(fspec: FiltrationSpec, s: int, t: int, hi: int
                      ) -> np.ndarray:
    basis = small_basis(fspec.base, s, t, hi, 5)
    pos = fspec.k - 1
    return np.array([mono[pos] for _, mono in basis], dtype=np.int64)


@lru_cache(maxsize=None)
def _z_dim(fspec: FiltrationSpec, s: int, t: int, u: int, r: int, hi: int
           ) -> int:
    """dim {x in F^u C^s : D x in F^(u+r)} over F5.

    u may be negative (F^u is then the whole space) while the target
    filtration u + r keeps its stated value."""
    filt_src = _small_filtration(fspec, s, t, hi)
    cols = np.nonzero(filt_src >= max(u, 0))[0]
    if cols.size == 0:
        return 0
    d = transferred_matrix(fspec.base, s, t, hi, 5)
    filt_dst = _small_filtration(fspec, s + 1, t, hi)
    rows = np.nonzero(filt_dst < u + r)[0]
    if rows.size == 0 or d.size == 0:
        return int(cols.size)
    return int(cols.size) - rank_gf5(d[np.ix_(rows, cols)])


def page_entry_dim(fspec: FiltrationSpec, r: int, s: int, t: int, u: int,
                   hi: int) -> int:
    """dim E_r^{s,t,u} by the filtered-complex rank formula."""
    if r < 1:
        raise ValueError("pages start at r = 1")
    val = _z_dim(fspec, s, t, u, r, hi) - _z_dim(fspec, s, t, u + 1, r - 1, hi)
    if s > 0:
        val -= _z_dim(fspec, s - 1, t, u - r + 1, r - 1, hi)
        val += _z_dim(fspec, s - 1, t, u - r + 1, r, hi)
    return val


def _u_max(fspec: FiltrationSpec, t: int) -> int:
    return t // (R_DEG * fspec.k)


def page_dimensions(fspec: FiltrationSpec, r: int, s_max: int, t_max: int,
                    k_power: int = 4) -> List[PageEntry]:
    """Nonzero E_r entries in the window, ordered by (t, s, u)."""
    hi = s_max + 1
    out: List[PageEntry] = []
    for t in range(0, t_max + 1, R_DEG):
        if fspec.k == 0:
            for s in range(0, s_max + 1):
                d = _five_adic_page_dim(fspec, r, s, t, hi, k_power)
                if d:
                    out.append(PageEntry(s, t, 0, d))
            continue
        for s in range(0, s_max + 1):
            for u in range(0, _u_max(fspec, t) + 1):
                d = page_entry_dim(fspec, r, s, t, u, hi)
                if d:
                    out.append(PageEntry(s, t, u, d))
    return out


def infinity_page(fspec: FiltrationSpec, s_max: int, t_max: int,
                  k_power: int = 4) -> List[PageEntry]:
    """E_infinity within the window: in a fixed internal degree the
    filtration is bounded, so a page beyond the largest possible jump is
    stable."""
    r = (t_max // (R_DEG * fspec.k) if fspec.k else k_power) + 2
    return page_dimensions(fspec, r, s_max, t_max, k_power)


@lru_cache(maxsize=None)
def _valuations(spec: AlgebroidSpec, s: int, t: int, hi: int, k_power: int
                ) -> Tuple[int, ...]:
    mod = 5 ** k_power
    dim_dst = len(small_basis(spec, s + 1, t, hi, mod))
    dim_src = len(small_basis(spec, s, t, hi, mod))
    if dim_dst == 0 or dim_src == 0:
        return ()
    return tuple(diagonal_valuations(
        transferred_matrix(spec, s, t, hi, mod), k_power))


def _five_adic_page_dim(fspec: FiltrationSpec, r: int, s: int, t: int,
                        hi: int, k_power: int) -> int:
    """E_r of the 5-adic tower: free rank plus torsion surviving r-1
    Bockstein differentials on either side."""
    spec = fspec.base
    mod = 5 ** k_power
    dim = len(small_basis(spec, s, t, hi, mod))
    if dim == 0:
        return 0
    here = _valuations(spec, s, t, hi, k_power)
    below = _valuations(spec, s - 1, t, hi, k_power) if s else ()
    if any(v > k_power - 2 for v in here + below):
        raise AssertionError("torsion precision exhausted; raise K")
    free = dim - len(here) - len(below)
    return free + sum(1 for v in here if v >= r) + sum(1 for v in below if v >= r)


# --- stated differentials (symbolic cobar complex) -------------------------

def _symbolic_filtration(fspec: FiltrationSpec, s: int, t: int) -> np.ndarray:
    basis = cochain_basis(fspec.base, s, t)
    pos = fspec.k - 1
    return np.array([mono[pos] for mono, _ in basis], dtype=np.int64)


def _vec(x: CobarElement, t: int) -> np.ndarray:
    return np.array([int(c) % 5 for c in element_to_vector(x, t)],
                    dtype=np.int64)


def _zr_subspace(fspec: FiltrationSpec, s: int, t: int, u: int, r: int
                 ) -> np.ndarray:
    """Columns spanning Z_r^u at cochain level s (embedded coordinates)."""
    from .flinalg import nullspace_mod
    filt = _symbolic_filtration(fspec, s, t)
    cols = np.nonzero(filt >= u)[0]
    dim = filt.size
    if cols.size == 0:
        return np.zeros((dim, 0), dtype=np.int64)
    d = differential_matrix_mod(fspec.base, s, t, 5)
    filt_dst = _symbolic_filtration(fspec, s + 1, t)
    rows = np.nonzero(filt_dst < u + r)[0]
    if rows.size == 0 or d.size == 0:
        sub_ker = np.eye(cols.size, dtype=np.int64)
    else:
        sub_ker = nullspace_mod(d[np.ix_(rows, cols)], 5)
    out = np.zeros((dim, sub_ker.shape[1]), dtype=np.int64)
    out[cols, :] = sub_ker
    return out


def page_differential(source: CobarElement, fspec: FiltrationSpec, r: int
                      ) -> CobarElement:
    """d_r of an E_r class: lift the representative within its filtration,
    then apply the cobar differential.

    Raises NotAPageCycle when no lift pushes the differential r steps up."""
    if source.spec != fspec.base:
        raise ValueError("source lives over the wrong quotient")
    s, t = source.s, source.degree()
    vec = _vec(source, t)
    filt = _symbolic_filtration(fspec, s, t)
    support = np.nonzero(vec)[0]
    if support.size == 0:
        raise ValueError("zero source")
    u0 = int(filt[support].min())
    d = differential_matrix_mod(fspec.base, s, t, 5)
    filt_dst = _symbolic_filtration(fspec, s + 1, t)
    rows = np.nonzero(filt_dst < u0 + r)[0]
    corr_cols = np.nonzero(filt >= u0 + 1)[0]
    rhs = (-(d @ vec)) % 5
    if rows.size and corr_cols.size:
        sol = solve_mod(d[np.ix_(rows, corr_cols)], rhs[rows], 5)
    elif rows.size:
        sol = None if np.any(rhs[rows] % 5) else np.zeros(0, dtype=np.int64)
    else:
        sol = np.zeros(corr_cols.size, dtype=np.int64)
    if sol is None:
        raise NotAPageCycle(
            f"no lift of filtration {u0} with a jump of {r} steps")
    lift = vec.copy()
    if corr_cols.size:
        lift[corr_cols] = (lift[corr_cols] + sol) % 5
    value = (d @ lift) % 5
    return vector_to_element(fspec.base, s + 1, t, value)


def _in_denominator(fspec: FiltrationSpec, value: np.ndarray, s1: int, t: int,
                    u: int, r: int) -> bool:
    """Membership of a level-s1 vector in Z_{r-1}^{u+1} + d Z_{r-1}^{u-r+1}."""
    z_high = _zr_subspace(fspec, s1, t, u + 1, r - 1)
    z_low = _zr_subspace(fspec, s1 - 1, t, u - r + 1, r - 1)
    d = differential_matrix_mod(fspec.base, s1 - 1, t, 5)
    bound = (d @ z_low) % 5 if z_low.size and d.size else \
        np.zeros((value.size, 0), dtype=np.int64)
    span = np.concatenate([z_high, bound], axis=1)
    if not span.size:
        return not np.any(value % 5)
    base_rank = rank_gf5(span)
    return rank_gf5(np.concatenate([span, value[:, None]], axis=1)) == base_rank


def verify_differential(source: CobarElement, target: CobarElement,
                        fspec: FiltrationSpec, r: int) -> bool:
    """True iff d_r(source) equals a unit multiple of target in E_r."""
    if fspec.k == 0:
        return _verify_five_adic(source, target, r)
    s, t = source.s, source.degree()
    if target.terms and (target.s != s + 1 or target.degree() != t):
        return False
    filt = _symbolic_filtration(fspec, s, t)
    vec = _vec(source, t)
    u0 = int(filt[np.nonzero(vec)[0]].min())
    value = _vec(page_differential(source, fspec, r), t)
    tvec = _vec(target, t)
    filt_dst = _symbolic_filtration(fspec, s + 1, t)
    tsup = np.nonzero(tvec)[0]
    if tsup.size and int(filt_dst[tsup].min()) < u0 + r:
        return False
    u = u0 + r
    for w in UNITS:
        if _in_denominator(fspec, (value - w * tvec) % 5, s + 1, t, u, r):
            return True
    return False


def _verify_five_adic(source: CobarElement, target: CobarElement, r: int
                      ) -> bool:
    """5-adic Bockstein differential check on the symbolic complex.

    The source is an integral cochain whose differential is divisible by
    5^r; the value d(source)/5^r mod 5 is compared to a unit multiple of
    the target modulo mod-5 coboundaries (the page-r identification for the
    one page the tower needs is the E_1 one, torsion being exponent one)."""
    from .cobar import is_coboundary
    spec_int = AlgebroidSpec("reduced", None)
    spec_f5 = AlgebroidSpec("reduced", 0)
    if source.spec != spec_int or target.spec != spec_f5:
        raise ValueError("5-adic check wants an integral source, mod-5 target")
    d = differential(source)
    t = source.degree()
    vec = element_to_vector(d, t)
    reduced = []
    for c in vec:
        c = c if isinstance(c, LocalRational) else LocalRational(int(c))
        scaled = c / 5 ** r
        if scaled.den % 5 == 0:
            return False  # differential not divisible by 5^r
        reduced.append(scaled.num * pow(scaled.den, -1, 5) % 5)
    value = vector_to_element(spec_f5, source.s + 1, t, reduced)
    for w in UNITS:
        diff = value - target.scale(w)
        if not diff.terms:
            return True
        if is_coboundary(diff) is not None:
            return True
    return False


# --- report feed ------------------------------------------------------------

def page_dump(fspec: FiltrationSpec, r: int, s_max: int, t_max: int,
              k_power: int = 4) -> Dict[str, object]:
    entries = page_dimensions(fspec, r, s_max, t_max, k_power)
    return {
        "filtration": fspec.filter_name,
        "page": r,
        "entries": [{"s": e.s, "t": e.t, "u": e.u, "dim": e.dim}
                    for e in entries],
    }
