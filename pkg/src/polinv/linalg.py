"""Exact dense linear algebra over the rationals.

All entries are `fractions.Fraction` values, which Python keeps reduced to
lowest terms with a positive denominator.  There is no floating point
anywhere in this module; every answer is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Q = Fraction


def frac(x) -> Fraction:
    """Coerce ints / strings / Fractions to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def _bits(q: Fraction) -> int:
    # size measure used for pivot selection, keeps intermediate entries small
    return abs(q.numerator).bit_length() + q.denominator.bit_length()


@dataclass(frozen=True)
class Matrix:
    """Immutable dense rational matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        return cls(n, m, tuple(frac(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(Q(1) if i == j else Q(0) for i in range(n) for j in range(n)))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("matrix size mismatch")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other.at(k, j) for k in range(self.cols)), Q(0)))
        return Matrix(self.rows, other.cols, tuple(out))

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        v = [frac(x) for x in v]
        return tuple(sum((self.row(i)[k] * v[k] for k in range(self.cols)), Q(0))
                     for i in range(self.rows))

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix size mismatch")
        return Matrix(self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix size mismatch")
        return Matrix(self.rows, self.cols,
                      tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "Matrix":
        c = frac(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)


def rref(m: Matrix):
    """Reduced row echelon form.

    Returns (reduced, rank, pivot_columns).  The result is the unique RREF of
    the input; the pivot row in each column is chosen by the smallest bit
    length of its entry (ties broken by row index) purely to keep
    intermediate coefficients small.
    """
    a = m.to_rows()
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        best = None
        for i in range(r, m.rows):
            if a[i][c] != 0:
                key = (_bits(a[i][c]), i)
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            continue
        i = best[1]
        a[r], a[i] = a[i], a[r]
        piv = a[r][c]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        for i2 in range(m.rows):
            if i2 != r and a[i2][c] != 0:
                f = a[i2][c]
                a[i2] = [x - f * y for x, y in zip(a[i2], a[r])]
        pivots.append(c)
        r += 1
    reduced = Matrix(m.rows, m.cols, tuple(x for row in a for x in row))
    return reduced, r, pivots


def rank(m: Matrix) -> int:
    return rref(m)[1]


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix; raises ValueError if singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = Matrix.from_rows([list(m.row(i)) + [Q(1) if j == i else Q(0) for j in range(n)]
                            for i in range(n)])
    red, rk, _ = rref(aug)
    if rk < n or any(red.at(i, i) != 1 for i in range(n)):
        raise ValueError("matrix is singular")
    return Matrix(n, n, tuple(red.at(i, n + j) for i in range(n) for j in range(n)))


def solve_in_span(basis: Sequence[Sequence], target: Sequence) -> Optional[list]:
    """Express `target` as an exact linear combination of `basis` vectors.

    Returns the coefficient list (free coordinates set to zero) or None when
    the target is not in the span.  All vectors must have the same length.
    """
    basis = [tuple(frac(x) for x in v) for v in basis]
    target = tuple(frac(x) for x in target)
    n = len(target)
    if any(len(v) != n for v in basis):
        raise ValueError("dimension mismatch")
    k = len(basis)
    if k == 0:
        return [] if all(x == 0 for x in target) else None
    rows = [[basis[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    red, _, pivots = rref(Matrix.from_rows(rows))
    if k in pivots:
        return None
    coeffs = [Q(0)] * k
    for r, c in enumerate(pivots):
        coeffs[c] = red.at(r, k)
    return coeffs


# ---------------------------------------------------------------------------
# Strict feasibility of homogeneous linear inequality systems
# ---------------------------------------------------------------------------

def _normalized(cons):
    """Canonicalize and de-duplicate constraints (coeffs, const), each read as
    coeffs . x + const > 0.  Scaling by a positive rational preserves meaning."""
    seen = set()
    out = []
    for coeffs, const in cons:
        lead = next((x for x in coeffs if x != 0), None)
        if lead is None:
            lead = const
        if lead == 0:
            # 0 > 0, infeasible marker kept as-is
            key = (coeffs, const)
        else:
            s = abs(lead)
            coeffs = tuple(x / s for x in coeffs)
            const = const / s
            key = (coeffs, const)
        if key not in seen:
            seen.add(key)
            out.append((coeffs, const))
    return out


def _fm_solve(cons, nvars: int) -> Optional[list]:
    """Fourier-Motzkin elimination for strict systems coeffs.x + const > 0.

    Returns one rational solution (list of Fractions, length nvars) or None.
    """
    cons = _normalized(cons)
    for coeffs, const in cons:
        if all(x == 0 for x in coeffs) and const <= 0:
            return None
    if nvars == 0:
        return []
    v = nvars - 1
    lows, highs, rest = [], [], []
    for coeffs, const in cons:
        a = coeffs[v]
        head = coeffs[:v]
        if a == 0:
            rest.append((head, const))
        elif a > 0:
            # x_v > -(head.x + const)/a
            lows.append((tuple(-x / a for x in head), -const / a))
        else:
            # x_v < (head.x + const)/(-a)
            highs.append((tuple(x / (-a) for x in head), const / (-a)))
    new = list(rest)
    for lc, lk in lows:
        for uc, uk in highs:
            new.append((tuple(u - l for u, l in zip(uc, lc)), uk - lk))
    sub = _fm_solve(new, v)
    if sub is None:
        return None

    def ev(bound):
        coeffs, const = bound
        return sum((c * x for c, x in zip(coeffs, sub)), Q(0)) + const

    lo = max((ev(b) for b in lows), default=None)
    hi = min((ev(b) for b in highs), default=None)
    if lo is not None and hi is not None:
        val = (lo + hi) / 2
    elif lo is not None:
        val = lo + 1
    elif hi is not None:
        val = hi - 1
    else:
        val = Q(0)
    return sub + [val]


def strict_positive_functional(points: Iterable[Sequence], dim: Optional[int] = None):
    """Find an integer vector gamma with <gamma, p> > 0 for every point p.

    Returns a primitive integer tuple, or None when no such functional exists
    (equivalently, 0 lies in the convex hull of the points).  An empty point
    list is vacuously feasible and returns (1, ..., 1); pass `dim` to fix its
    length.
    """
    pts = [tuple(frac(x) for x in p) for p in points]
    if not pts:
        return tuple([1] * (dim if dim is not None else 0))
    d = len(pts[0])
    if dim is not None and dim != d:
        raise ValueError("dimension mismatch")
    if any(len(p) != d for p in pts):
        raise ValueError("dimension mismatch")
    sol = _fm_solve([(p, Q(0)) for p in pts], d)
    if sol is None:
        return None
    den = lcm(*[x.denominator for x in sol]) if sol else 1
    ints = [x.numerator * (den // x.denominator) for x in sol]
    g = gcd(*[abs(n) for n in ints]) if any(ints) else 1
    gamma = tuple(n // g for n in ints)
    # exactness guard: the witness must satisfy every inequality strictly
    for p in pts:
        if sum((gi * pi for gi, pi in zip(gamma, p)), Q(0)) <= 0:
            raise AssertionError("internal error: invalid feasibility witness")
    return gamma
