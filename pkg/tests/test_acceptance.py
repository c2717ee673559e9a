"""End-to-end acceptance suite.

One test (or small group) per headline claim the engine is expected to
reproduce, each computed from scratch through the public API.  Exact
arithmetic throughout; equalities are on the nose except where a class
is only pinned down up to a unit in F5.
"""

import os

import pytest

from hopfext.algebroid import AlgebroidSpec, check_axioms, eta_R, parse_gamma, \
    quotient
from hopfext.bockstein import FiltrationSpec, infinity_page, page_dimensions, \
    verify_differential
from hopfext.cobar import class_equal_up_to_unit, differential, is_coboundary, \
    parse_cobar, product, triple_massey
from hopfext.flinalg import rank_mod
from hopfext.gradedpoly import Polynomial, parse_polynomial
from hopfext.invariants import (
    A_RING,
    _mod5,
    _mod5_rows,
    discriminant,
    hilbert_h0,
    invariant_basis,
    new_generators,
    table1_records,
)
from hopfext.report import ChartSpec, Dot, parse_overlay, render_svg, \
    with_overlay
from hopfext.transfer import ext_dim, integral_structure
from hopfext.v1algebra import presented_dim
from hopfext.wordcx import dual_h_dim, reduced_word_h_dim

FULL = AlgebroidSpec("full")
RED = AlgebroidSpec("reduced")
I = {k: quotient(RED, k) for k in range(5)}

B = "[r^4|r] + 2*[r^3|r^2] + 2*[r^2|r^3] + [r|r^4]"
X1 = "a1*[r^4] + a2*[r^3] + a3*[r^2] + a4*[r]"
X1_I1 = "a2*[r^3] + a3*[r^2] + a4*[r]"
X1_I2 = "a3*[r^2] + a4*[r]"
X2 = "a4^2*[r] + 2*a3*a4*[r^2] + 3*a3^2*[r^3]"
X3 = "a4^3*[r] + 3*a3*a4^2*[r^2] - a3^2*a4*[r^3] - 3*a3^3*[r^4]"
DISC_I1 = ("a4^5 - 2*a3^4*a4^2 - a2*a3^2*a4^3 + 2*a2^2*a4^4"
           " + a2^3*a3^2*a4^2 + a2^4*a4^3")


def cb(spec, s, text):
    return parse_cobar(spec, s, text)


def times(spec, poly_text, text, s):
    return product(cb(spec, 0, poly_text), cb(spec, s, text))


# --- 1. structure-map fidelity ---------------------------------------------

def test_criterion_1_axioms_and_right_unit():
    for variant in ("full", "reduced"):
        counts = check_axioms(AlgebroidSpec(variant), 200)
        assert all(v > 0 for v in counts.values())
    a1 = parse_polynomial(FULL.base_ring, "a1")
    a4 = parse_polynomial(FULL.base_ring, "a4")
    assert eta_R(FULL, a1) == parse_gamma(FULL, "a1 + 5*r")
    assert eta_R(FULL, a4) == parse_gamma(
        FULL, "a4 + 2*a3*r + 3*a2*r^2 + 4*a1*r^3 + 5*r^4")


# --- 2. top-quotient cohomology --------------------------------------------

def test_criterion_2_top_quotient_is_polynomial_tensor_exterior():
    # full window via the minimal resolution over the dual algebra, which
    # stays small at every bidegree
    hits = set()
    for k in range(0, 11):
        hits.add((2 * k, 40 * k))
        hits.add((2 * k + 1, 40 * k + 8))
    for s in range(0, 9):
        for t in range(0, 401, 8):
            want = 1 if (s, t) in hits else 0
            assert dual_h_dim(s, t) == want, (s, t)
    # cross-check against the direct word-complex ranks where those are
    # cheap, and against the generic cobar path at a few cells
    for n in range(0, 14):
        for s in range(0, n + 2):
            assert dual_h_dim(s, 8 * n) == reduced_word_h_dim(n, s), (n, s)
    for s, t in ((0, 0), (1, 8), (2, 40), (3, 48), (4, 80), (2, 48), (5, 96)):
        assert ext_dim(I[4], s, t, hi=6) == dual_h_dim(s, t)


# --- 3. exact cochain identities -------------------------------------------

def test_criterion_3_cochain_identities():
    assert differential(cb(I[1], 0, "a3")) == cb(I[1], 1, "3*a2*[r]")
    assert differential(cb(I[1], 0, "a3^3 + 3*a2*a3*a4")) == \
        -times(I[1], "a2^2", X1_I1, 1)
    assert differential(
        cb(I[1], 1, X2 + " + 2*a2*a4*[r^3] + 3*a2*a3*[r^4]")) == \
        -times(I[1], "a2^2", B, 2)
    assert differential(
        cb(I[0], 1, "a2*a4*[r] + a2*a3*[r^2] + a2^2*[r^3]"
                    " - a1*a2*[r^4] + a1*a3*[r^3] + 2*a1*a4*[r^2]")) == \
        times(I[0], "a1^2", B, 2)
    lhs = product(cb(I[1], 0, "a3^2 + 2*a2*a4"), cb(I[1], 1, "[r]")).scale(2) \
        - times(I[1], "a2", X1_I1, 1)
    assert lhs == differential(cb(I[1], 0, "a3*a4"))
    d_x1 = differential(cb(RED, 1, X1))
    assert any(d_x1 == cb(RED, 2, B).scale(5 * u)
               for u in (1, 2, 3, 4, -1, -2))


# --- 4. cocycle checks ------------------------------------------------------

def test_criterion_4_cocycles():
    for text in (X1_I2, X2, X3):
        assert differential(cb(I[2], 1, text)).is_zero()
    assert differential(cb(I[1], 1, X1_I1)).is_zero()
    for k in range(5):
        assert differential(cb(I[k], 2, B)).is_zero()


# --- 5. tower differentials -------------------------------------------------

def test_criterion_5_differentials():
    F = {k: FiltrationSpec(k) for k in range(5)}
    assert verify_differential(cb(I[2], 1, "a4^4*[r]"),
                               times(I[2], "a3^4", B, 2), F[3], 4)
    assert verify_differential(cb(I[1], 1, X3),
                               times(I[1], "a2*a3^2", B, 2), F[2], 1)
    assert verify_differential(cb(I[1], 0, "a3^3"),
                               times(I[1], "a2^2", X1_I1, 1), F[2], 2)
    assert verify_differential(cb(I[1], 1, X2),
                               times(I[1], "a2^2", B, 2), F[2], 2)
    assert verify_differential(cb(I[0], 0, "a2"), cb(I[0], 1, "a1*[r]"),
                               F[1], 1)
    assert verify_differential(cb(I[0], 0, "a3^2 + 2*a2*a4"),
                               times(I[0], "a1", X1, 1), F[1], 1)
    assert verify_differential(times(I[0], "a2", X1, 1),
                               times(I[0], "a1^2", B, 2), F[1], 2)
    assert verify_differential(cb(RED, 0, "a1"), cb(I[0], 1, "[r]"), F[0], 1)
    assert verify_differential(cb(RED, 1, X1), cb(I[0], 2, B), F[0], 1)


def test_criterion_5_collapse_pages():
    cases = [(4, 1), (3, 5), (2, 3), (1, 3), (0, 2)]
    for k, page in cases:
        fs = FiltrationSpec(k)
        now = {(e.s, e.t, e.u): e.dim for e in page_dimensions(fs, page, 3, 120)}
        inf = {(e.s, e.t, e.u): e.dim for e in infinity_page(fs, 3, 120)}
        assert now == inf, (k, page)


# --- 6. the mod-I1 answer algebra ------------------------------------------

def test_criterion_6_hidden_extension_cochain_level():
    lhs = product(cb(I[1], 0, "a3^2 + 2*a2*a4"), cb(I[1], 1, "[r]")).scale(2)
    rhs = times(I[1], "a2", X1_I1, 1)
    assert lhs - rhs == differential(cb(I[1], 0, "a3*a4"))


def test_criterion_6_presented_algebra_hilbert_function():
    # The stated relation list, taken verbatim, leaves three products
    # alive that are exact in the cobar complex (x1*[a3^2], x1*[a3^5],
    # a2*b*[a3^2], first visible at (1,88)), so this comparison fails on
    # exactly those cells and their multiples.  presented_dim with
    # completed=True adds the three missing relations and then agrees on
    # the whole window; see test_v1algebra.
    mismatches = []
    for s in range(0, 7):
        for t in range(0, 401, 8):
            want = presented_dim(s, t)
            got = ext_dim(I[1], s, t, hi=7)
            if got != want:
                mismatches.append((s, t, want, got))
    assert mismatches == []


# --- 7. Massey products -----------------------------------------------------

def _massey_contains(u, v, w, target):
    rep, _ = triple_massey(u, v, w)
    return any(is_coboundary(rep - target.scale(unit)) is not None
               for unit in (1, 2, 3, 4))


def test_criterion_7_massey_products():
    assert _massey_contains(cb(I[1], 1, X1_I1), cb(I[1], 1, "[r]"),
                            cb(I[1], 1, "[r]"), times(I[1], "a2", B, 2))
    assert _massey_contains(cb(I[2], 1, X1_I2), cb(I[2], 1, "[r]"),
                            cb(I[2], 0, "a3"), cb(I[2], 1, X2))


def test_criterion_7_x1_x2_extension():
    prod = product(cb(I[2], 1, X1_I2), cb(I[2], 1, X2))
    assert class_equal_up_to_unit(prod, times(I[2], "a3^3", B, 2))


# --- 8. full versus reduced presentation ------------------------------------

def test_criterion_8_presentations_agree():
    for k in range(5):
        fq = quotient(FULL, k)
        for s in range(0, 5):
            for t in range(8, 241, 8):
                assert ext_dim(I[k], s, t, hi=5) == ext_dim(fq, s, t, hi=5), \
                    (k, s, t)


# --- 9. the invariant ring --------------------------------------------------

def _partitions_2345(n):
    count = 0
    for x5 in range(n // 5 + 1):
        for x4 in range((n - 5 * x5) // 4 + 1):
            rest = n - 5 * x5 - 4 * x4
            count += sum(1 for x3 in range(rest // 3 + 1)
                         if (rest - 3 * x3) % 2 == 0)
    return count


def test_criterion_9_table_certification_and_ranks():
    recs = table1_records()
    assert len(recs) == 23
    for r in recs:
        assert r.polynomial.content_valuation() >= 0, r.name
    for t, rank in hilbert_h0(176):
        assert rank == _partitions_2345(t // 8), t


def test_criterion_9_generator_census():
    # Expected pattern: one fresh generator in degrees 16, 24 and 8i for
    # i in 4..22 except 20, with a second one at 120 and at 144.  The
    # computed minimal census disagrees in three degrees (128, 144, 176):
    # the listed generators there are products of earlier ones up to a
    # 5-local unit, so the minimal count is lower.  The computation is
    # generator-choice independent (it is dim M_t/(5*M_t + decomposables))
    # and the same engine confirms that the listed elements do generate;
    # see test_invariants for both facts.
    want = {8: 0, 16: 1, 24: 1}
    for i in range(4, 23):
        want[8 * i] = 0 if i == 20 else 1
    want[120] = 2
    want[144] = 2
    got = {t: new_generators(t)[0] for t in range(8, 177, 8)}
    assert got == want


def test_criterion_9_discriminant():
    from hopfext.coefficients import LocalRational
    disc = discriminant()
    # resultant output matches the tabulated degree-160 invariant up to unit
    d_row = [r for r in table1_records() if r.name == "D"][0].polynomial
    lead_m, lead_c = disc.sorted_terms()[0]
    lam = d_row.terms[lead_m] / lead_c
    assert lam.valuation() == 0
    assert disc.scale(lam) == d_row
    # modulo (5, a1, a2, a3) only a4^5 survives
    residue = {m: c for m, c in disc.terms.items()
               if not (m[0] or m[1] or m[2]) and c.valuation() == 0}
    assert set(residue) == {(0, 0, 0, 5, 0)}
    # modulo (5, a1), in the reduced presentation, a unit times the
    # quintic-in-a4 expression
    want = parse_polynomial(A_RING, DISC_I1)
    got = {}
    for m, c in disc.terms.items():
        if m[0] or m[4]:
            continue
        v = c.num * pow(c.den, -1, 5) % 5
        if v:
            got[m] = v
    assert any(
        got == {m: (u * c.num) % 5 for m, c in want.terms.items()
                if (u * c.num) % 5}
        for u in (1, 2, 3, 4))


# --- 10. integral structure -------------------------------------------------

def test_criterion_10_integral_window():
    expected = {}
    for j in (0, 1):
        for s, dt in ((1, 8), (2, 40), (3, 48), (4, 80)):
            expected[(s, 160 * j + dt)] = (0, (1,))
    for s in range(1, 5):
        for t in range(8, 241, 8):
            free, torsion = integral_structure(RED, s, t, hi=5, k_power=4)
            assert (free, tuple(torsion)) == expected.get((s, t), (0, ())), \
                (s, t)
    # s = 0 free ranks match the invariant-ring Hilbert function; the
    # direct ambient kernel is only tractable through t = 176, where it
    # agrees with the closed count (test_criterion_9), so the closed
    # count carries the rest of the window
    for t in range(0, 241, 8):
        free, torsion = integral_structure(RED, 0, t, hi=5, k_power=4)
        assert torsion == ()
        assert free == _partitions_2345(t // 8), t
    for t in range(0, 177, 8):
        assert len(invariant_basis(t)) == _partitions_2345(t // 8), t


def test_criterion_10_multiplicative_structure():
    a = cb(RED, 1, "[r]")
    b = cb(RED, 2, B)
    assert is_coboundary(product(a, a)) is not None
    c2 = "-2*a1^2 + 5*a2"
    c3 = "4*a1^3 - 15*a1*a2 + 25*a3"
    for killer in ("5", c2, c3):
        assert is_coboundary(times(RED, killer, "[r]", 1)) is not None, killer
        assert is_coboundary(times(RED, killer, B, 2)) is not None, killer


def test_criterion_10_discriminant_faithful():
    disc = discriminant()
    d5 = _mod5(disc)
    for t in (16, 48, 96):
        basis = [_mod5(p) for p in invariant_basis(t)]
        assert rank_mod(_mod5_rows([p * d5 for p in basis], t + 160), 5) \
            == len(basis), t
    # on the torsion classes: a nonzero product mod I1 certifies a
    # nonzero integral product
    dbar = cb(I[1], 0, DISC_I1)
    assert differential(dbar).is_zero()
    for s, text in ((1, "[r]"), (2, B)):
        assert is_coboundary(product(dbar, cb(I[1], s, text))) is None


# --- 11. imported differentials as a chart overlay --------------------------

OVERLAY_PATH = os.path.join(os.path.dirname(__file__), "data", "overlay_d9.txt")


def test_criterion_11_overlay_lands_on_nonzero_cells(tmp_path):
    with open(OVERLAY_PATH, "r", encoding="utf-8") as fh:
        arrows = parse_overlay(fh.read())
    assert arrows, "fixture should carry at least one differential"
    dots = []
    for s in range(0, 10):
        for t in range(0, 401, 8):
            dim = presented_dim(s, t, completed=True)
            if dim:
                dots.append(Dot(s, t, dim))
    chart = with_overlay(ChartSpec(9, 400, tuple(sorted(dots))), arrows)
    for arrow in chart.overlays:
        assert chart.cell(*arrow.start) > 0, arrow
        assert chart.cell(*arrow.end) > 0, arrow
    doc = render_svg(chart)
    assert doc.count("red") >= len(arrows)
