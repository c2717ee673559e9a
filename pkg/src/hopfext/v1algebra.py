"""Hilbert function of the presented answer algebra for the mod-I1 tower.

The algebra is F5[a, b, x1, a2, y, z, D] on bidegrees (s, t)
  a: (1, 8)   x1: (1, 40)   b: (2, 40)
  a2: (0, 16)  y = [a3^2]: (0, 48)  z = [a3^5]: (0, 120)  D: (0, 160)
modulo the relations
  a^2, a*x1, x1^2, a*a2, a*z, a2^2*b, a2^2*x1, b*z, b*y^2,
  y^5 - z^2 - a2^3*y^4 - a2^6*y^3 - 2*a2^5*D,
  2*a*y - a2*x1.
Only the two odd classes square to zero, so a plain commutative monomial
model is adequate.  Each bigraded piece of the quotient is computed by
linear algebra: span of (relation * monomial) inside the span of all
monomials of that bidegree.

The stated relation list leaves a few products alive that are exact in
the cobar complex; the completed list adds the three monomial relations
x1*y, x1*z and a2*b*y, after which the Hilbert function agrees with the
computed cohomology on the whole window s <= 6, t <= 400 (see
presented_dim's `completed` flag).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct
from typing import Dict, List, Tuple

import numpy as np

from .flinalg import rank_mod

# exponent order: (a, x1, b, a2, y, z, D)
GEN_S = (1, 1, 2, 0, 0, 0, 0)
GEN_T = (8, 40, 40, 16, 48, 120, 160)

Mono = Tuple[int, ...]

RELATIONS: Tuple[Dict[Mono, int], ...] = (
    {(2, 0, 0, 0, 0, 0, 0): 1},
    {(1, 1, 0, 0, 0, 0, 0): 1},
    {(0, 2, 0, 0, 0, 0, 0): 1},
    {(1, 0, 0, 1, 0, 0, 0): 1},
    {(1, 0, 0, 0, 0, 1, 0): 1},
    {(0, 0, 1, 2, 0, 0, 0): 1},
    {(0, 1, 0, 2, 0, 0, 0): 1},
    {(0, 0, 1, 0, 0, 1, 0): 1},
    {(0, 0, 1, 0, 2, 0, 0): 1},
    {(0, 0, 0, 0, 5, 0, 0): 1, (0, 0, 0, 0, 0, 2, 0): -1,
     (0, 0, 0, 3, 4, 0, 0): -1, (0, 0, 0, 6, 3, 0, 0): -1,
     (0, 0, 0, 5, 0, 0, 1): -2},
    {(1, 0, 0, 0, 1, 0, 0): 2, (0, 1, 0, 1, 0, 0, 0): -1},
)

# products that the relation list above misses but that vanish in the
# cobar complex: x1*y, x1*z, a2*b*y
COMPLETION: Tuple[Dict[Mono, int], ...] = (
    {(0, 1, 0, 0, 1, 0, 0): 1},
    {(0, 1, 0, 0, 0, 1, 0): 1},
    {(0, 0, 1, 1, 1, 0, 0): 1},
)


def _bidegree(m: Mono) -> Tuple[int, int]:
    return (sum(e * g for e, g in zip(m, GEN_S)),
            sum(e * g for e, g in zip(m, GEN_T)))


@lru_cache(maxsize=None)
def _monomials(s: int, t: int) -> Tuple[Mono, ...]:
    if s < 0 or t < 0:
        return ()
    ranges = []
    for gs, gt in zip(GEN_S, GEN_T):
        cap = t // gt
        if gs:
            cap = min(cap, s // gs)
        ranges.append(range(cap + 1))
    out = [m for m in iproduct(*ranges) if _bidegree(m) == (s, t)]
    out.sort()
    return tuple(out)


@lru_cache(maxsize=None)
def presented_dim(s: int, t: int, completed: bool = False) -> int:
    """Dimension of the (s, t) piece of the presented algebra.

    With completed=True the three extra vanishing products are imposed
    as well; this is the version that matches the cobar computation.
    """
    monos = _monomials(s, t)
    if not monos:
        return 0
    idx = {m: i for i, m in enumerate(monos)}
    rows: List[np.ndarray] = []
    relations = RELATIONS + COMPLETION if completed else RELATIONS
    for rel in relations:
        rs, rt = _bidegree(next(iter(rel)))
        for m in _monomials(s - rs, t - rt):
            row = np.zeros(len(monos), dtype=np.int64)
            for rm, c in rel.items():
                shifted = tuple(a + b for a, b in zip(rm, m))
                row[idx[shifted]] = c % 5
            rows.append(row)
    if not rows:
        return len(monos)
    return len(monos) - rank_mod(np.array(rows, dtype=np.int64), 5)
