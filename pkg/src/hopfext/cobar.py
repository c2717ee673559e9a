"""Cobar complex of an algebroid presentation: cochains, the exact
differential, concatenation products, small-scale cohomology with
representatives, coboundary solving, and triple Massey products.

Cochains of degree s are left-coefficient combinations of bar words
[r^{e_1}|...|r^{e_s}], each exponent positive (and at most 4 in the reduced
variant).  This module works symbolically and is meant for windows where the
per-bidegree bases are small; the transfer module handles large windows.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .coefficients import IntMatrix, LocalRational, smith_normal_form, v5
from .flinalg import nullspace_mod, rank_mod, rref_mod, solve_mod
from .gradedpoly import (
    InhomogeneousInput,
    Monomial,
    Polynomial,
    RingSpec,
    format_polynomial,
    graded_piece_basis,
    parse_polynomial,
)
from .algebroid import (
    P,
    R_DEGREE,
    AlgebroidSpec,
    GammaElement,
    eta_R_monomial,
    psi_reduced,
    push_coefficient,
)

CobarWord = Tuple[int, ...]


class SpecMismatch(ValueError):
    pass


class NotACocycle(ValueError):
    pass


class BracketUndefined(ValueError):
    pass


def compositions(n: int, s: int, cap: Optional[int]) -> Iterator[CobarWord]:
    """All words (e_1..e_s) with e_i >= 1 (and <= cap) summing to n, lex order."""
    if s == 0:
        if n == 0:
            yield ()
        return
    hi = n - (s - 1)
    if cap is not None:
        hi = min(hi, cap)
    for e in range(1, hi + 1):
        for rest in compositions(n - e, s - 1, cap):
            yield (e,) + rest


class CobarElement:
    """Homogeneous-degree-s cochain: map (base monomial, word) -> scalar."""

    __slots__ = ("spec", "s", "terms")

    def __init__(self, spec: AlgebroidSpec, s: int,
                 terms: Optional[Dict[Tuple[Monomial, CobarWord], object]] = None):
        self.spec = spec
        self.s = s
        self.terms: Dict[Tuple[Monomial, CobarWord], object] = {}
        ring = spec.base_ring
        cap = spec.max_r_power
        if terms:
            for (mono, word), c in terms.items():
                if len(word) != s:
                    raise ValueError("word length != s")
                if any(e < 1 or (cap is not None and e > cap) for e in word):
                    raise ValueError(f"bad word {word}")
                c = ring.coeff(c)
                if c:
                    self.terms[(mono, word)] = c

    @classmethod
    def zero(cls, spec: AlgebroidSpec, s: int) -> "CobarElement":
        return cls(spec, s)

    @classmethod
    def from_polynomial(cls, p: Polynomial, spec: AlgebroidSpec) -> "CobarElement":
        return cls(spec, 0, {(m, ()): c for m, c in p.terms.items()})

    @classmethod
    def from_gamma(cls, g: GammaElement) -> "CobarElement":
        """1-cochain from an element of the augmentation coideal."""
        terms = {}
        for e, p in g.terms.items():
            if e == 0:
                if p:
                    raise ValueError("gamma element has a degree-0 part")
                continue
            for m, c in p.terms.items():
                terms[(m, (e,))] = c
        return cls(g.spec, 1, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, CobarElement):
            return NotImplemented
        return (self.spec, self.s, self.terms) == (other.spec, other.s, other.terms)

    def __add__(self, other: "CobarElement") -> "CobarElement":
        if (self.spec, self.s) != (other.spec, other.s):
            raise SpecMismatch("cannot add cochains of different shape")
        ring = self.spec.base_ring
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k)
            acc = c if acc is None else ring.coeff(acc + c)
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
        res = CobarElement.__new__(CobarElement)
        res.spec, res.s, res.terms = self.spec, self.s, out
        return res

    def __neg__(self):
        ring = self.spec.base_ring
        res = CobarElement.__new__(CobarElement)
        res.spec, res.s = self.spec, self.s
        res.terms = {k: ring.coeff(-c) for k, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CobarElement":
        ring = self.spec.base_ring
        out = {}
        for k, v in self.terms.items():
            w = ring.coeff(v * c if not isinstance(c, LocalRational) else c * v)
            if w:
                out[k] = w
        res = CobarElement.__new__(CobarElement)
        res.spec, res.s, res.terms = self.spec, self.s, out
        return res

    def degree(self) -> Optional[int]:
        ring = self.spec.base_ring
        degs = {ring.monomial_degree(m) + R_DEGREE * sum(w) for m, w in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise InhomogeneousInput(f"mixed internal degrees {sorted(degs)}")
        return degs.pop()

    def text(self) -> str:
        return format_cobar(self)

    def __repr__(self):
        return f"CobarElement({format_cobar(self)})"


@lru_cache(maxsize=None)
def cochain_basis(spec: AlgebroidSpec, s: int, t: int) -> Tuple[Tuple[Monomial, CobarWord], ...]:
    """Deterministic basis of the (s,t) cochain piece: words in ascending lex
    order, then base monomials in graded-lex order."""
    ring = spec.base_ring
    killed = len(spec.killed)
    cap = spec.max_r_power
    out: List[Tuple[Monomial, CobarWord]] = []
    if t % R_DEGREE:
        return ()
    for n in range(s, t // R_DEGREE + 1):
        if cap is not None and n > cap * s:
            break
        mdeg = t - R_DEGREE * n
        monos = [m for m in graded_piece_basis(ring, mdeg)
                 if not any(m[i] for i in range(killed))]
        if not monos:
            continue
        for word in compositions(n, s, cap):
            for m in monos:
                out.append((m, word))
    return tuple(out)


def differential(x: CobarElement) -> CobarElement:
    """Cobar differential: insert the reduced right-unit image of the
    coefficient at the left (sign +1), plus the alternating-sign reduced
    coproduct splittings of each slot."""
    spec = x.spec
    if x.terms:
        x.degree()  # raises InhomogeneousInput when mixed
    out = CobarElement.zero(spec, x.s + 1)
    acc: Dict[Tuple[Monomial, CobarWord], object] = {}
    ring = spec.base_ring

    def add(key, val):
        cur = acc.get(key)
        cur = val if cur is None else ring.coeff(cur + val)
        if cur:
            acc[key] = cur
        else:
            acc.pop(key, None)

    for (mono, word), c in x.terms.items():
        eta = eta_R_monomial(spec, mono)
        for e, p in eta.terms.items():
            if e == 0:
                continue
            for m2, c2 in p.terms.items():
                add((m2, (e,) + word), ring.coeff(c * c2))
        for i, e in enumerate(word):
            sign = -1 if (i + 1) % 2 else 1
            for coef, k, l in psi_reduced(spec, e):
                val = ring.coeff(c * (coef * sign))
                if val:
                    add((mono, word[:i] + (k, l) + word[i + 1:]), val)
    out.terms = acc
    return out


def _index(basis) -> Dict[Tuple[Monomial, CobarWord], int]:
    return {k: i for i, k in enumerate(basis)}


def element_to_vector(x: CobarElement, t: int) -> List[object]:
    basis = cochain_basis(x.spec, x.s, t)
    idx = _index(basis)
    vec = [0] * len(basis)
    for k, c in x.terms.items():
        vec[idx[k]] = c
    return vec


def vector_to_element(spec: AlgebroidSpec, s: int, t: int, vec) -> CobarElement:
    basis = cochain_basis(spec, s, t)
    return CobarElement(spec, s, {basis[i]: c for i, c in enumerate(vec) if c})


@lru_cache(maxsize=None)
def differential_matrix_int(spec: AlgebroidSpec, s: int, t: int) -> IntMatrix:
    """Integer matrix of d on the (s,t) piece (columns index the source)."""
    src = cochain_basis(spec, s, t)
    dst = cochain_basis(spec, s + 1, t)
    idx = _index(dst)
    entries = {}
    for j, key in enumerate(src):
        img = differential(CobarElement(spec, s, {key: 1}))
        for k, c in img.terms.items():
            val = c.num if isinstance(c, LocalRational) else int(c)
            if isinstance(c, LocalRational) and c.den != 1:
                raise AssertionError("differential structure constant not integral")
            entries[(idx[k], j)] = val
    return IntMatrix(len(dst), len(src), entries)


def differential_matrix_mod(spec: AlgebroidSpec, s: int, t: int, mod: int) -> np.ndarray:
    m = differential_matrix_int(spec, s, t)
    out = np.zeros((m.rows, m.cols), dtype=np.int64)
    for (i, j), v in m.entries.items():
        out[i, j] = v % mod
    return out


@dataclass
class CohomologyGroup:
    s: int
    t: int
    free_rank: int
    torsion: Tuple[int, ...] = ()
    representatives: List[CobarElement] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return self.free_rank + len(self.torsion)


def cohomology(spec: AlgebroidSpec, s: int, t: int) -> CohomologyGroup:
    """Kernel-mod-image at (s,t) with representatives.

    Over a quotient everything is F5 linear algebra.  Over Z_(5) the two
    integer matrices are combined through Smith normal form; only 5-power
    torsion is reported (other elementary divisors are units locally).
    """
    if spec.quotient_level is not None:
        a = differential_matrix_mod(spec, s, t, 5)
        b = differential_matrix_mod(spec, s - 1, t, 5) if s > 0 else None
        ker = nullspace_mod(a, 5)
        if ker.shape[1] == 0:
            return CohomologyGroup(s, t, 0)
        if b is None or b.shape[1] == 0:
            coords = np.zeros((ker.shape[1], 0), dtype=np.int64)
        else:
            coords = solve_mod(ker, b, 5)
            if coords is None:
                raise AssertionError("image does not lie in kernel (d*d != 0?)")
        red, pivots = rref_mod(coords.T, 5)
        free = [j for j in range(ker.shape[1]) if j not in set(pivots)]
        reps = [vector_to_element(spec, s, t, ker[:, j]) for j in free]
        return CohomologyGroup(s, t, len(free), (), reps)

    # integral path
    from .coefficients import kernel_saturated
    a = differential_matrix_int(spec, s, t)
    b = differential_matrix_int(spec, s - 1, t) if s > 0 else IntMatrix(a.cols, 0, {})
    kbasis = kernel_saturated(a)
    if not kbasis:
        return CohomologyGroup(s, t, 0)
    nk = len(kbasis)
    kmat = [[vec[i] for vec in kbasis] for i in range(a.cols)]  # cols = kernel basis
    if b.cols:
        # image columns in kernel coordinates (exact; kernel is saturated)
        coords = _integer_coords(kmat, b)
        x = IntMatrix(nk, b.cols,
                      {(i, j): coords[i][j] for i in range(nk) for j in range(b.cols)
                       if coords[i][j]})
        snf = smith_normal_form(x)
        # L x R = D, so in the kernel basis K' = K L^{-1} the image lattice is
        # spanned by d_i times the i-th column of K'
        linv = _int_inverse(snf.left_transform.to_rows())
        diag = list(snf.diagonal)
    else:
        linv = [[1 if i == j else 0 for j in range(nk)] for i in range(nk)]
        diag = []
    free_rank = 0
    torsion: List[int] = []
    reps: List[CobarElement] = []
    for j in range(nk):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            free_rank += 1
        elif v5(d) > 0:
            torsion.append(v5(d))
        else:
            continue
        newvec = [sum(kmat[i][kk] * linv[kk][j] for kk in range(nk))
                  for i in range(a.cols)]
        reps.append(vector_to_element(spec, s, t, newvec))
    return CohomologyGroup(s, t, free_rank, tuple(torsion), reps)


def _int_inverse(rows: List[List[int]]) -> List[List[int]]:
    """Exact inverse of a unimodular integer matrix."""
    from fractions import Fraction
    n = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for j in range(n):
        piv = next(i for i in range(j, n) if aug[i][j])
        aug[j], aug[piv] = aug[piv], aug[j]
        inv = 1 / aug[j][j]
        aug[j] = [v * inv for v in aug[j]]
        for i in range(n):
            if i != j and aug[i][j]:
                f = aug[i][j]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[j])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    for row in out:
        for v in row:
            if v.denominator != 1:
                raise AssertionError("matrix is not unimodular")
    return [[int(v) for v in row] for row in out]


def _integer_coords(kmat: List[List[int]], b: IntMatrix) -> List[List[int]]:
    """Solve kmat @ X = b exactly over Q; integrality holds by saturation."""
    from fractions import Fraction
    rows = len(kmat)
    cols = len(kmat[0]) if rows else 0
    nrhs = b.cols
    aug = [[Fraction(kmat[i][j]) for j in range(cols)] +
           [Fraction(b.get(i, jj)) for jj in range(nrhs)] for i in range(rows)]
    piv_rows = []
    r = 0
    for j in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][j]), None)
        if piv is None:
            raise AssertionError("kernel basis is not independent")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][j]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][j]:
                f = aug[i][j]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        piv_rows.append(j)
        r += 1
    for i in range(r, rows):
        if any(aug[i][cols:]):
            raise AssertionError("image does not lie in kernel")
    out = [[0] * nrhs for _ in range(cols)]
    for i, j in enumerate(piv_rows):
        for jj in range(nrhs):
            val = aug[i][cols + jj]
            if val.denominator != 1:
                raise AssertionError("non-integral kernel coordinates")
            out[j][jj] = int(val)
    return out


def product(x: CobarElement, y: CobarElement) -> CobarElement:
    """Concatenation product, with the second coefficient moved to the left."""
    if x.spec != y.spec:
        raise SpecMismatch("cochains from different specs")
    spec = x.spec
    ring = spec.base_ring
    acc: Dict[Tuple[Monomial, CobarWord], object] = {}
    for (m1, w1), c1 in x.terms.items():
        left = Polynomial(ring, {m1: c1})
        for (m2, w2), c2 in y.terms.items():
            pushed = push_coefficient(spec, w1 + w2, len(w1),
                                      Polynomial(ring, {m2: c2}))
            for word, poly in pushed.items():
                for mono, c in (left * poly).terms.items():
                    key = (mono, word)
                    cur = acc.get(key)
                    cur = c if cur is None else ring.coeff(cur + c)
                    if cur:
                        acc[key] = cur
                    else:
                        acc.pop(key, None)
    res = CobarElement.__new__(CobarElement)
    res.spec, res.s, res.terms = spec, x.s + y.s, acc
    return res


def is_coboundary(z: CobarElement) -> Optional[CobarElement]:
    """A cochain w with d(w) = z exactly, or None.

    Raises NotACocycle when d(z) != 0.  Over Z_(5) the solve goes through
    Smith normal form, allowing division by 5-units only.
    """
    if differential(z):
        raise NotACocycle("input is not a cocycle")
    if z.is_zero():
        return CobarElement.zero(z.spec, z.s - 1)
    spec = z.spec
    t = z.degree()
    s = z.s
    if s == 0:
        return None
    if spec.quotient_level is not None:
        a = differential_matrix_mod(spec, s - 1, t, 5)
        vec = np.array([int(c) for c in element_to_vector(z, t)], dtype=np.int64)
        sol = solve_mod(a, vec, 5)
        if sol is None:
            return None
        return vector_to_element(spec, s - 1, t, sol)
    a = differential_matrix_int(spec, s - 1, t)
    raw = element_to_vector(z, t)
    den = 1
    for c in raw:
        if isinstance(c, LocalRational):
            den = den * c.den // math.gcd(den, c.den)
    vec = [(c * den).num if isinstance(c, LocalRational) else int(c) * den for c in raw]
    snf = smith_normal_form(a)
    lz = [sum(snf.left_transform.get(i, j) * vec[j] for j in range(a.rows))
          for i in range(a.rows)]
    diag = snf.diagonal
    y = [LocalRational(0)] * a.cols
    for i in range(a.rows):
        if i < len(diag) and diag[i] != 0:
            q = LocalRational(lz[i], diag[i])
            if not q.is_5_integral():
                return None
            y[i] = q
        elif lz[i] != 0:
            return None
    w = [LocalRational(0)] * a.cols
    for i in range(a.cols):
        w[i] = sum((LocalRational(snf.right_transform.get(i, j)) * y[j]
                    for j in range(a.cols)), LocalRational(0)) / den
    return vector_to_element(spec, s - 1, t, w)


def triple_massey(u: CobarElement, v: CobarElement, w: CobarElement
                  ) -> Tuple[CobarElement, int]:
    """<u,v,w> representative and the rank of its indeterminacy.

    Needs u,v,w cocycles with uv and vw coboundaries; the representative is
    xbar*w - (-1)^{s_u} u*ybar with d(xbar)=uv, d(ybar)=vw.
    """
    for name, x in (("u", u), ("v", v), ("w", w)):
        if differential(x):
            raise NotACocycle(f"{name} is not a cocycle")
    xbar = is_coboundary(product(u, v))
    ybar = is_coboundary(product(v, w))
    if xbar is None or ybar is None:
        raise BracketUndefined("a factor product is not a coboundary")
    sign = -1 if u.s % 2 else 1
    rep = product(xbar, w) - product(u, ybar).scale(sign)
    spec = u.spec
    s_out = rep.s
    t_out = (u.degree() or 0) + (v.degree() or 0) + (w.degree() or 0)
    # indeterminacy: u*H^{s_v+s_w-1} + H^{s_u+s_v-1}*w inside H^{s_out,t_out}
    hg = cohomology(spec, s_out, t_out)
    if not hg.representatives:
        return rep, 0
    left = cohomology(spec, v.s + w.s - 1, (v.degree() or 0) + (w.degree() or 0))
    right = cohomology(spec, u.s + v.s - 1, (u.degree() or 0) + (v.degree() or 0))
    cand = [product(u, h) for h in left.representatives] + \
           [product(h, w) for h in right.representatives]
    return rep, _class_rank(spec, s_out, t_out, cand)


def _class_rank(spec: AlgebroidSpec, s: int, t: int,
                elements: Sequence[CobarElement]) -> int:
    """Rank of the span of the given cocycles in H^{s,t} (mod-5 reduction)."""
    if not elements:
        return 0
    mod = 5
    a = differential_matrix_mod(spec, s - 1, t, mod) if s > 0 else None
    vecs = []
    for e in elements:
        raw = element_to_vector(e, t)
        vecs.append([c.num * pow(c.den, -1, mod) % mod if isinstance(c, LocalRational)
                     else int(c) % mod for c in raw])
    v = np.array(vecs, dtype=np.int64).T
    if v.size == 0:
        return 0
    if a is None or a.shape[1] == 0:
        return rank_mod(v.T, mod)
    both = np.concatenate([a, v], axis=1)
    return rank_mod(both.T, mod) - rank_mod(a.T, mod)


def class_equal_up_to_unit(x: CobarElement, y: CobarElement) -> bool:
    """True when x = unit * y modulo coboundaries (unit in F5)."""
    for unit in (1, 2, 3, 4):
        try:
            if is_coboundary(x - y.scale(unit)) is not None:
                return True
        except NotACocycle:
            return False
    return False


# --- text form ------------------------------------------------------------

_BRACKET = re.compile(r"\[([^\]]*)\]")


def format_cobar(x: CobarElement) -> str:
    if not x.terms:
        return "0"
    ring = x.spec.base_ring
    by_word: Dict[CobarWord, Polynomial] = {}
    for (mono, word), c in x.terms.items():
        p = by_word.get(word, Polynomial.zero(ring))
        by_word[word] = p + Polynomial(ring, {mono: c})
    parts = []
    for word in sorted(by_word):
        ptxt = format_polynomial(by_word[word])
        if word:
            wtxt = "|".join("r" if e == 1 else f"r^{e}" for e in word)
            if ptxt == "1":
                parts.append(f"[{wtxt}]")
            elif ptxt == "-1":
                parts.append(f"-[{wtxt}]")
            else:
                parts.append(f"({ptxt})*[{wtxt}]")
        else:
            parts.append(ptxt if "+" not in ptxt[1:] and "- " not in ptxt
                         else f"({ptxt})")
    return " + ".join(parts).replace("+ -", "- ")


def parse_cobar(spec: AlgebroidSpec, s: int, text: str) -> CobarElement:
    """Parse sums like "a2*[r^3|r] - 2*[r|r]" (s >= 1) or plain polynomials
    (s = 0)."""
    from .algebroid import parse_word
    ring = spec.base_ring
    if s == 0:
        p = parse_polynomial(ring, text)
        return CobarElement.from_polynomial(p, spec)
    out = CobarElement.zero(spec, s)
    pos = 0
    for m in _BRACKET.finditer(text):
        coeff_txt = text[pos:m.start()].strip()
        pos = m.end()
        sign = 1
        coeff_txt = coeff_txt.rstrip("*").strip()
        while coeff_txt and coeff_txt[0] in "+-":
            if coeff_txt[0] == "-":
                sign = -sign
            coeff_txt = coeff_txt[1:].strip()
        if coeff_txt.startswith("(") and coeff_txt.endswith(")"):
            coeff_txt = coeff_txt[1:-1].strip()
        coeff = parse_polynomial(ring, coeff_txt) if coeff_txt else \
            Polynomial.constant(ring, 1)
        word = parse_word(m.group(1))
        if len(word) != s:
            raise ValueError(f"word {word} has length != {s}")
        terms = {(mono, word): c for mono, c in coeff.scale(sign).terms.items()}
        out = out + CobarElement(spec, s, terms)
    if text[pos:].strip():
        raise ValueError(f"trailing input {text[pos:]!r}")
    return out
