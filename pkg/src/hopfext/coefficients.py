"""Exact arithmetic over Z_(5) and integer matrix normal forms.

Everything downstream (cobar differentials, invariant kernels, torsion
extraction) reduces to the primitives here: reduced fractions with a tracked
5-adic valuation, sparse integer matrices, Smith normal form with unimodular
transforms, and saturated integer kernels.  No floating point is used; the
generator table requires exact cancellation of powers of 5 up to 5^15.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple


class ZeroDenominator(ZeroDivisionError):
    """Raised when a fraction is built with denominator 0."""


def v5(n: int) -> int:
    """5-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    n = abs(n)
    while n % 5 == 0:
        n //= 5
        v += 1
    return v


class LocalRational:
    """A reduced fraction num/den with den > 0, viewed inside Z_(5) when
    the denominator is coprime to 5."""

    __slots__ = ("num", "den")

    def __init__(self, num: int = 0, den: int = 1):
        if den == 0:
            raise ZeroDenominator("denominator is zero")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num, den)
        if g > 1:
            num //= g
            den //= g
        self.num = num
        self.den = den

    def valuation(self) -> int:
        """v5(num) - v5(den); defined for nonzero values."""
        if self.num == 0:
            raise ValueError("valuation of 0 is undefined")
        return v5(self.num) - v5(self.den)

    def is_5_integral(self) -> bool:
        return self.den % 5 != 0

    def __bool__(self) -> bool:
        return self.num != 0

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LocalRational(self.num * other.den + other.num * self.den,
                             self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LocalRational(self.num * other.den - other.num * self.den,
                             self.den * other.den)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LocalRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num == 0:
            raise ZeroDivisionError("division by zero")
        return LocalRational(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return LocalRational(-self.num, self.den)

    def __pow__(self, k: int):
        if k < 0:
            return LocalRational(self.den ** (-k), self.num ** (-k))
        return LocalRational(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"


def _coerce(x):
    if isinstance(x, LocalRational):
        return x
    if isinstance(x, int):
        return LocalRational(x)
    return NotImplemented


def reduce(num: int, den: int) -> LocalRational:
    """Reduced representation of num/den with the sign carried by num."""
    return LocalRational(num, den)


ONE = LocalRational(1)
ZERO = LocalRational(0)


@dataclass
class IntMatrix:
    """Sparse integer matrix; absent entries are zero."""

    rows: int
    cols: int
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), val in list(self.entries.items()):
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
            if val == 0:
                del self.entries[(i, j)]

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {(i, j): val for i, row in enumerate(data)
                   for j, val in enumerate(row) if val != 0}
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def to_rows(self) -> List[List[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), val in self.entries.items():
            out[i][j] = val
        return out

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: Dict[int, Dict[int, int]] = {}
        for (i, k), val in self.entries.items():
            by_row.setdefault(i, {})[k] = val
        other_by_row: Dict[int, Dict[int, int]] = {}
        for (k, j), val in other.entries.items():
            other_by_row.setdefault(k, {})[j] = val
        entries: Dict[Tuple[int, int], int] = {}
        for i, row in by_row.items():
            acc: Dict[int, int] = {}
            for k, val in row.items():
                for j, w in other_by_row.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + val * w
            for j, val in acc.items():
                if val != 0:
                    entries[(i, j)] = val
        return IntMatrix(self.rows, other.cols, entries)


@dataclass
class SmithDecomposition:
    """left_transform * original * right_transform is diagonal."""

    left_transform: IntMatrix
    diagonal: Tuple[int, ...]
    right_transform: IntMatrix


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Diagonal entries are the (nonnegative) elementary divisors, each dividing
    the next nonzero one.  An empty matrix yields an empty diagonal.
    """
    a = m.to_rows()
    rows, cols = m.rows, m.cols
    left = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    right = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, q):
        arow, srow = a[dst], a[src]
        for j in range(cols):
            arow[j] += q * srow[j]
        lrow, lsrc = left[dst], left[src]
        for j in range(rows):
            lrow[j] += q * lsrc[j]

    def addmul_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in right:
            r[dst] += q * r[src]

    t = 0
    n = min(rows, cols)
    while t < n:
        # locate a pivot of minimal absolute value in the trailing block
        piv = None
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                val = row[j]
                if val != 0 and (best is None or abs(val) < best):
                    best = abs(val)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        clean = True
        for i in range(t + 1, rows):
            if a[i][t] != 0:
                q = -(a[i][t] // a[t][t])
                addmul_row(i, t, q)
                if a[i][t] != 0:
                    clean = False
        for j in range(t + 1, cols):
            if a[t][j] != 0:
                q = -(a[t][j] // a[t][t])
                addmul_col(j, t, q)
                if a[t][j] != 0:
                    clean = False
        if not clean:
            continue
        # pivot must divide the whole trailing block
        d = a[t][t]
        offender = None
        for i in range(t + 1, rows):
            row = a[i]
            for j in range(t + 1, cols):
                if row[j] % d != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            addmul_row(t, offender, 1)
            continue
        t += 1

    diag = []
    for i in range(n):
        d = a[i][i]
        if d == 0:
            break
        if d < 0:
            # flip sign via the left transform
            for j in range(cols):
                a[i][j] = -a[i][j]
            for j in range(rows):
                left[i][j] = -left[i][j]
            d = -d
        diag.append(d)
    return SmithDecomposition(IntMatrix.from_rows(left) if rows else IntMatrix(0, 0),
                              tuple(diag),
                              IntMatrix.from_rows(right) if cols else IntMatrix(0, 0))


def kernel_saturated(m: IntMatrix) -> List[Tuple[int, ...]]:
    """Basis of ker(m) ∩ Z^cols, saturated.

    Column elimination with unimodular operations, tracking the transform;
    columns of the transform hitting zeroed-out columns form the kernel
    lattice, which is automatically saturated because the transform is
    unimodular.
    """
    rows, cols = m.rows, m.cols
    if cols == 0:
        return []
    col_data: List[Dict[int, int]] = [dict() for _ in range(cols)]
    for (i, j), val in m.entries.items():
        col_data[j][i] = val
    transform: List[Dict[int, int]] = [{j: 1} for j in range(cols)]
    active = list(range(cols))

    def addmul(dst: int, src: int, q: int):
        for i, val in col_data[src].items():
            new = col_data[dst].get(i, 0) + q * val
            if new:
                col_data[dst][i] = new
            else:
                col_data[dst].pop(i, None)
        for i, val in transform[src].items():
            new = transform[dst].get(i, 0) + q * val
            if new:
                transform[dst][i] = new
            else:
                transform[dst].pop(i, None)

    for r in range(rows):
        live = [j for j in active if col_data[j].get(r, 0) != 0]
        if not live:
            continue
        # reduce to a single column with nonzero entry in row r
        while len(live) > 1:
            live.sort(key=lambda j: abs(col_data[j][r]))
            j0 = live[0]
            rest = []
            for j in live[1:]:
                q = -(col_data[j][r] // col_data[j0][r])
                addmul(j, j0, q)
                if col_data[j].get(r, 0) != 0:
                    rest.append(j)
            live = [j0] + rest
        active.remove(live[0])

    out = []
    for j in active:
        if col_data[j]:
            # nonzero column that dodged every pivot row cannot happen
            raise AssertionError("column elimination left a nonzero active column")
        vec = tuple(transform[j].get(i, 0) for i in range(cols))
        out.append(vec)
    return out
