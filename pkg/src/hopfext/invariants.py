"""The ring of translation invariants of the base, degree by degree.

An element of A is invariant when the right unit fixes it; per degree this
is the integer kernel of the stacked "coefficient of r^k in eta_R(x) - x"
maps, computed saturated over Z_(5).  On top of the raw kernels the module
builds the named generators (c classes, the Delta table, the discriminant),
runs the generator census with the depth heuristic, and reports Hilbert
data.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .algebroid import AlgebroidSpec, eta_R, eta_R_monomial
from .coefficients import IntMatrix, LocalRational, kernel_saturated
from .flinalg import rank_mod
from .gradedpoly import (
    MODE_F5,
    MODE_LOCAL,
    MODE_Q,
    Monomial,
    Polynomial,
    RingSpec,
    graded_piece_basis,
    parse_polynomial,
)

SPEC = AlgebroidSpec("full", None)
A_RING = SPEC.base_ring
Q_RING = RingSpec(A_RING.names, A_RING.degrees, mode=MODE_Q)
R_DEG = 8


class IntegralityFailure(ArithmeticError):
    """A table expression failed to clear its denominators 5-adically."""


class InvarianceFailure(AssertionError):
    """A claimed invariant moves under the right unit."""


class NormalizationFailure(AssertionError):
    """The discriminant does not reduce to a unit multiple of a4^5."""


def is_invariant(p: Polynomial) -> bool:
    """Exact invariance: eta_R(p) = p inside Gamma."""
    if p.ring != A_RING:
        p = p.map_coefficients(A_RING)
    g = eta_R(SPEC, p)
    return dict(g.terms) == ({0: p} if p else {})


# --- degreewise kernels -----------------------------------------------------

@lru_cache(maxsize=None)
def _eta_minus_id_matrix(t: int) -> Tuple[IntMatrix, Tuple[Monomial, ...]]:
    cols = tuple(graded_piece_basis(A_RING, t))
    row_offset: Dict[int, int] = {}
    nrows = 0
    for k in range(1, t // R_DEG + 1):
        row_offset[k] = nrows
        nrows += len(graded_piece_basis(A_RING, t - R_DEG * k))
    entries: Dict[Tuple[int, int], int] = {}
    for j, mono in enumerate(cols):
        g = eta_R_monomial(SPEC, mono)
        for k, poly in g.terms.items():
            if k == 0:
                continue
            tgt = graded_piece_basis(A_RING, t - R_DEG * k)
            idx = {m: i for i, m in enumerate(tgt)}
            for m2, c in poly.terms.items():
                if isinstance(c, LocalRational):
                    if c.den != 1:
                        raise AssertionError("right unit is not integral")
                    c = c.num
                entries[(row_offset[k] + idx[m2], j)] = int(c)
    return IntMatrix(nrows, len(cols), entries), cols


@lru_cache(maxsize=None)
def invariant_basis(t: int) -> Tuple[Polynomial, ...]:
    """Saturated Z_(5)-basis of the degree-t invariants, deterministic."""
    if t < 0 or t % R_DEG:
        return ()
    if t == 0:
        return (Polynomial.constant(A_RING, 1),)
    mat, cols = _eta_minus_id_matrix(t)
    vecs = kernel_saturated(mat)
    polys = []
    for v in vecs:
        p = Polynomial(A_RING, {m: c for m, c in zip(cols, v) if c})
        lead_c = p.sorted_terms()[0][1]
        if (lead_c.num if isinstance(lead_c, LocalRational) else lead_c) < 0:
            p = -p
        polys.append(p)
    polys.sort(key=lambda p: tuple(-e for e in p.sorted_terms()[0][0]))
    for p in polys:
        if not is_invariant(p):
            raise InvarianceFailure("kernel vector moves under the right unit")
    return tuple(polys)


def hilbert_h0(t_max: int) -> List[Tuple[int, int]]:
    """Free rank of the invariants for every internal degree up to t_max."""
    return [(t, len(invariant_basis(t))) for t in range(0, t_max + 1, R_DEG)]


# --- named generators -------------------------------------------------------

@dataclass(frozen=True)
class GeneratorRecord:
    name: str
    degree: int
    expression: str
    polynomial: Polynomial
    depth: int


def depth(exponents: Tuple[int, int, int, int]) -> int:
    """Depth of a leading term a1^eps a2^i a3^j a4^k: i + 2j + 3k."""
    eps, i, j, k = exponents
    if eps not in (0, 1):
        raise ValueError("leading exponent of a1 must be 0 or 1")
    return i + 2 * j + 3 * k


def _leading_depth(p: Polynomial) -> int:
    mono = p.sorted_terms()[0][0]
    return depth((min(mono[0], 1), mono[1], mono[2], mono[3]))


_C_TEXT = {
    2: "-2*a1^2 + 5*a2",
    3: "4*a1^3 - 15*a1*a2 + 25*a3",
    4: "-3*a1^4 + 15*a1^2*a2 - 50*a1*a3 + 125*a4",
    5: "4*a1^5 - 25*a1^3*a2 + 125*a1^2*a3 - 625*a1*a4 + 3125*a5",
}


@lru_cache(maxsize=None)
def c_class(i: int) -> GeneratorRecord:
    """The degree-8i invariant c_i, in the normalization of the explicit
    list (the closed binomial formula differs by a power of 5; see
    c_formula_discrepancy)."""
    if i not in _C_TEXT:
        raise KeyError(f"no c class at index {i}")
    p = parse_polynomial(A_RING, _C_TEXT[i])
    if not is_invariant(p):
        raise InvarianceFailure(f"c_{i} is not invariant")
    return GeneratorRecord(f"c{i}", R_DEG * i, _C_TEXT[i], p, _leading_depth(p))


def c_closed_formula(i: int) -> Polynomial:
    """The binomial closed form: sum_j C(5-j, i-j) (-1)^j a_j a_1^(i-j) 5^j."""
    ring = A_RING
    out = Polynomial.zero(ring)
    a1 = Polynomial.generator(ring, "a1")
    for j in range(0, i + 1):
        aj = Polynomial.constant(ring, 1) if j == 0 else \
            Polynomial.generator(ring, f"a{j}")
        term = aj
        for _ in range(i - j):
            term = term * a1
        coeff = comb(5 - j, i - j) * (-1) ** j * 5 ** j
        out = out + term.scale(coeff)
    return out


def c_formula_discrepancy(i: int) -> LocalRational:
    """Scalar lambda with closed_formula = lambda * listed c_i (exact)."""
    listed = c_class(i).polynomial
    closed = c_closed_formula(i)
    lead_m, lead_c = listed.sorted_terms()[0]
    top = closed.terms.get(lead_m)
    if top is None:
        raise AssertionError("formulas have different supports")
    lam = LocalRational(int(top.num if isinstance(top, LocalRational) else top),
                        int(lead_c.num if isinstance(lead_c, LocalRational)
                            else lead_c))
    if closed != listed.scale(lam):
        raise AssertionError("closed formula is not proportional to the list")
    return lam


# Table of generator expressions: (name, degree index, 1/denominator,
# numerator as {product-of-names: integer coefficient}).
TABLE1: Tuple[Tuple[str, int, int, Tuple[Tuple[Tuple[str, ...], int], ...]], ...] = (
    ("D4", 4, 25, ((("c4",), 4), (("c2", "c2"), 3))),
    ("D5", 5, 25, ((("c5",), 2), (("c2", "c3"), 1))),
    ("D6", 6, 125, ((("c3", "c3"), 2), (("c2", "c4"), -4), (("c2",) * 3, 1))),
    ("D7", 7, 5, ((("c3", "D4"), 1), (("c2", "D5"), -2))),
    ("D8", 8, 5 ** 5, ((("c2", "c3", "c3"), -3), (("c2", "c2", "c4"), 9),
                       (("c4", "c4"), -4), (("c3", "c5"), 3))),
    ("D9", 9, 5 ** 5, ((("c3",) * 3, -9), (("c2", "c3", "c4"), 32),
                       (("c2", "c2", "c5"), -9), (("c4", "c5"), 4))),
    ("D10", 10, 200, ((("D5", "D5"), 2), (("c2", "D4", "D4"), 1),
                      (("D4", "D6"), -15))),
    ("D11", 11, 10, ((("D5", "D6"), 3), (("D4", "D7"), -1))),
    ("D12", 12, 5 ** 8, ((("c3",) * 4, 54), (("c2", "c3", "c3", "c4"), -279),
                         (("c2", "c2", "c4", "c4"), 216), (("c4",) * 3, -224),
                         (("c2", "c2", "c3", "c5"), 81),
                         (("c3", "c4", "c5"), 144), (("c2", "c5", "c5"), -27))),
    ("D13", 13, 15, ((("D4", "D9"), 1), (("D5", "D8"), -4))),
    ("D14", 14, 50, ((("c4", "D10"), 4), (("c3", "D11"), -6),
                     (("D6", "D8"), 30), (("D4", "D10"), -15),
                     (("c2", "D12"), 15))),
    ("D15p", 15, 5, ((("D5", "D10"), 1), (("D4", "D11"), -2))),
    ("D15", 15, 25, ((("D6", "D9"), 2), (("D7", "D8"), -1),
                     (("D15p",), 5), (("c2", "D13"), -15))),
    ("D16", 16, 25, ((("D5", "D11"), -4), (("c2", "D4", "D10"), -1),
                     (("D6", "D10"), 15), (("c2", "D14"), -15))),
    ("D17", 17, 25, ((("c3", "D14"), -3), (("c2", "D15p"), -2),
                     (("D8", "D9"), 20))),
    ("D18", 18, 5, ((("D5", "D13"), 2), (("D4", "D4", "D10"), -1),
                    (("D4", "D6", "D8"), 2))),
    ("D18p", 18, 25, ((("D9", "D9"), 2), (("c2", "D8", "D8"), 16),
                      (("D8", "D10"), -95))),
    ("D19", 19, 5, ((("D8", "D11"), 8), (("D9", "D10"), -1))),
    ("D21", 21, 25, ((("c3", "D18p"), 2), (("c2", "D19"), 12),
                     (("D10", "D11"), -30), (("D9", "D12"), 15))),
    ("D22", 22, 25, ((("c3", "D19"), 1), (("c4", "D18p"), 1),
                     (("D9", "D13"), 10), (("D11", "D11"), -5))),
    ("D", 20, 5 ** 15, (
        (("c2", "c2", "c2", "c3", "c3", "c4", "c4"), -100),
        (("c3", "c3", "c3", "c3", "c4", "c4"), -135),
        (("c2", "c2", "c2", "c2", "c4", "c4", "c4"), 400),
        (("c2", "c3", "c3", "c4", "c4", "c4"), 720),
        (("c2", "c2", "c4", "c4", "c4", "c4"), -640),
        (("c4",) * 5, 256),
        (("c2", "c2", "c2", "c3", "c3", "c3", "c5"), 80),
        (("c3",) * 5 + ("c5",), 108),
        (("c2", "c2", "c2", "c2", "c3", "c4", "c5"), -360),
        (("c2", "c3", "c3", "c3", "c4", "c5"), -630),
        (("c2", "c2", "c3", "c4", "c4", "c5"), 560),
        (("c3", "c4", "c4", "c4", "c5"), -320),
        (("c2",) * 5 + ("c5", "c5"), 108),
        (("c2", "c2", "c3", "c3", "c5", "c5"), 165),
        (("c2", "c2", "c2", "c4", "c5", "c5"), -180),
        (("c3", "c3", "c4", "c5", "c5"), 90),
        (("c2", "c4", "c4", "c5", "c5"), 80),
        (("c2", "c3", "c5", "c5", "c5"), -30),
        (("c5",) * 4, 1))),
)

TABLE1_NAMES = ("c2", "c3") + tuple(row[0] for row in TABLE1)


def _expression_text(denom: int, terms) -> str:
    bits = []
    for names, coeff in terms:
        prod = "*".join(names)
        bits.append(f"{coeff:+d}*{prod}")
    return f"(1/{denom})*({' '.join(bits)})"


@lru_cache(maxsize=None)
def table1_expand(name: str) -> GeneratorRecord:
    """Expand a named generator into the base ring and certify it.

    Certifies 5-integrality, exact invariance, and homogeneity of the
    stated degree; raises IntegralityFailure or InvarianceFailure."""
    if name in ("c2", "c3", "c4", "c5"):
        return c_class(int(name[1]))
    for row_name, deg_idx, denom, terms in TABLE1:
        if row_name == name:
            break
    else:
        raise KeyError(f"unknown generator {name!r}")
    acc = Polynomial.zero(Q_RING)
    for names, coeff in terms:
        term = Polynomial.constant(Q_RING, coeff)
        for factor in names:
            term = term * table1_expand(factor).polynomial.map_coefficients(Q_RING)
        acc = acc + term
    acc = acc.scale(LocalRational(1, denom))
    t = R_DEG * deg_idx
    if any(Q_RING.monomial_degree(m) != t for m in acc.terms):
        raise AssertionError(f"{name} is not homogeneous of degree {t}")
    if not acc:
        raise AssertionError(f"{name} expanded to zero")
    if acc.content_valuation() < 0:
        raise IntegralityFailure(f"{name} has a residual 5 in the denominator")
    p = acc.map_coefficients(A_RING)
    if not is_invariant(p):
        raise InvarianceFailure(f"{name} is not invariant")
    return GeneratorRecord(name, t, _expression_text(denom, terms), p,
                           _leading_depth(p))


def table1_records() -> List[GeneratorRecord]:
    return [table1_expand(n) for n in TABLE1_NAMES]


# --- discriminant -----------------------------------------------------------

def _sylvester_determinant(rows: List[List[Polynomial]]) -> Polynomial:
    """Determinant by Laplace expansion over column subsets (the matrix is
    small and banded, so the subset table stays sparse)."""
    n = len(rows)
    ring = rows[0][0].ring
    table: Dict[int, Polynomial] = {0: Polynomial.constant(ring, 1)}
    for i in range(n):
        nxt: Dict[int, Polynomial] = {}
        for mask, val in table.items():
            col_rank = 0
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    col_rank += 1
                    continue
                entry = rows[i][j]
                if entry:
                    sign = -1 if (i + col_rank) % 2 else 1
                    add = (val * entry).scale(sign)
                    key = mask | bit
                    nxt[key] = nxt.get(key, Polynomial.zero(ring)) + add
        table = {k: v for k, v in nxt.items() if v}
    return table.get((1 << n) - 1, Polynomial.zero(ring))


@lru_cache(maxsize=None)
def discriminant() -> Polynomial:
    """Discriminant of x^5 + a1 x^4 + ... + a5, normalized so that the
    image modulo (5, a1, a2, a3) is exactly a4^5."""
    ring = A_RING
    zero = Polynomial.zero(ring)
    one = Polynomial.constant(ring, 1)
    gens = {i: Polynomial.generator(ring, f"a{i}") for i in range(1, 6)}
    f = [one, gens[1], gens[2], gens[3], gens[4], gens[5]]
    fp = [one.scale(5), gens[1].scale(4), gens[2].scale(3),
          gens[3].scale(2), gens[4]]
    n = 9
    rows: List[List[Polynomial]] = []
    for i in range(4):
        rows.append([zero] * i + f + [zero] * (4 - 1 - i))
    for i in range(5):
        rows.append([zero] * i + fp + [zero] * (5 - 1 - i))
    res = _sylvester_determinant(rows)
    killed = {m: c for m, c in res.terms.items()
              if not (m[0] or m[1] or m[2])}
    a4_5 = (0, 0, 0, 5, 0)
    lead = killed.get(a4_5)
    if lead is None:
        raise NormalizationFailure("no a4^5 term modulo (a1, a2, a3)")
    lead = lead if isinstance(lead, LocalRational) else LocalRational(int(lead))
    if lead.valuation() != 0:
        raise NormalizationFailure("a4^5 coefficient is not a 5-unit")
    disc = res.scale(LocalRational(1) / lead)
    extra = [(m, c) for m, c in disc.terms.items()
             if not (m[0] or m[1] or m[2]) and m != a4_5
             and (c.valuation() if isinstance(c, LocalRational) else
                  LocalRational(int(c)).valuation()) == 0]
    if extra:
        raise NormalizationFailure("residual unit terms modulo I_3")
    if not is_invariant(disc):
        raise InvarianceFailure("discriminant moves under the right unit")
    return disc


# --- generator census -------------------------------------------------------

F5_RING = RingSpec(A_RING.names, A_RING.degrees, mode=MODE_F5)


def _mod5(p: Polynomial) -> Polynomial:
    """Image of an invariant in F5[a1..a5]; exact because the saturated
    basis has 5-unit content."""
    terms = {}
    for m, c in p.terms.items():
        if isinstance(c, LocalRational):
            v = c.num * pow(c.den, -1, 5) % 5
        else:
            v = int(c) % 5
        if v:
            terms[m] = v
    return Polynomial(F5_RING, terms)


def _mod5_rows(polys: Sequence[Polynomial], t: int) -> "np.ndarray":
    monos = graded_piece_basis(F5_RING, t)
    idx = {m: i for i, m in enumerate(monos)}
    rows = np.zeros((len(polys), len(monos)), dtype=np.int64)
    for i, p in enumerate(polys):
        for m, c in p.terms.items():
            rows[i, idx[m]] = int(c) % 5
    return rows


@lru_cache(maxsize=None)
def _census_upto(t: int) -> Tuple[Tuple[int, Tuple[Polynomial, ...]], ...]:
    """Sequential generator discovery: at each degree, the quotient of the
    invariants by products of previously found generators (and 5).

    All ranks are computed in the ambient F5 polynomial ring; this agrees
    with ranks in the invariants mod 5 because the basis is saturated, so
    its mod-5 reduction stays independent in the ambient ring.
    """
    registry: List[Tuple[int, Polynomial]] = []
    mod5_registry: List[Tuple[int, Polynomial]] = []
    results = []
    for deg in range(R_DEG, t + 1, R_DEG):
        basis = invariant_basis(deg)
        if not basis:
            results.append((deg, ()))
            continue
        products = _products_of_degree(tuple(mod5_registry), deg)
        stacked = list(_mod5_rows(products, deg)) if products else []
        rank = rank_mod(np.array(stacked, dtype=np.int64), 5) if stacked else 0
        new_reps: List[Polynomial] = []
        if rank < len(basis):
            eye = _mod5_rows([_mod5(b) for b in basis], deg)
            for cand_row, cand in zip(eye, basis):
                trial = np.array(stacked + [cand_row], dtype=np.int64)
                if rank_mod(trial, 5) > rank:
                    stacked.append(cand_row)
                    rank += 1
                    new_reps.append(cand)
                if rank == len(basis):
                    break
        if rank != len(basis):
            raise AssertionError("generators fail to span a graded piece")
        for p in new_reps:
            registry.append((deg, p))
            mod5_registry.append((deg, _mod5(p)))
        results.append((deg, tuple(new_reps)))
    return tuple(results)


def _products_of_degree(registry: Tuple[Tuple[int, Polynomial], ...],
                        t: int) -> List[Polynomial]:
    out: List[Polynomial] = []

    def rec(i: int, remaining: int, acc: Polynomial):
        if remaining == 0:
            out.append(acc)
            return
        if i >= len(registry):
            return
        deg, p = registry[i]
        rec(i + 1, remaining, acc)
        if deg <= remaining:
            rec(i, remaining - deg, acc * p)

    ring = registry[0][1].ring if registry else A_RING
    rec(0, t, Polynomial.constant(ring, 1))
    return [p for p in out if p.sorted_terms()[0][0] != (0,) * 5]


def new_generators(t: int) -> Tuple[int, Tuple[Polynomial, ...]]:
    """(count, representatives) of fresh algebra generators in degree t."""
    for deg, reps in _census_upto(t):
        if deg == t:
            return len(reps), reps
    return 0, ()
