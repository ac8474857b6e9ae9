"""Exact Gaussian elimination over the scalar tower.

Matrices are lists of rows.  Entries may be ints, Fractions, ``Scalar`` or
``CScalar``; when every entry is rational the elimination runs on plain
``Fraction`` objects, which is the common case and much faster.

Pivoting is deterministic: the first nonzero entry in column order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalar import CScalar, Scalar, as_cscalar

__all__ = ["rref", "rank", "nullspace", "solve", "inverse", "det", "matmul",
           "transpose", "identity", "lower_entries"]


def _to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Scalar):
        return x.a if not x.b else None
    if isinstance(x, CScalar):
        if x.im or x.re.b:
            return None
        return x.re.a
    return None


def lower_entries(matrix: Sequence[Sequence]) -> list[list]:
    """Copy ``matrix``; entries become Fractions when all are rational,
    ``CScalar`` otherwise."""
    rows = []
    rational = True
    for row in matrix:
        new = []
        for x in row:
            f = _to_fraction(x) if rational else None
            if f is None:
                rational = False
                break
            new.append(f)
        if not rational:
            break
        rows.append(new)
    if rational:
        return rows
    return [[as_cscalar(x) for x in row] for row in matrix]


def rref(matrix: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where ``rows`` holds the nonzero reduced rows and
    ``pivots`` their pivot columns.
    """
    m = lower_entries(matrix)
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [x * inv for x in prow]
            m[r] = prow
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][c]
            if f:
                row = m[i]
                m[i] = [a - f * b if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def rank(matrix: Sequence[Sequence]) -> int:
    if not matrix or not len(matrix[0]):
        return 0
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of ``{x : matrix @ x = 0}`` as a list of column vectors."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        one, zero = Fraction(1), Fraction(0)
        return [[one if j == k else zero for j in range(ncols)] for k in range(ncols)]
    rows, pivots = rref(matrix, ncols)
    zero = rows[0][0] * 0 if rows else Fraction(0)
    one = zero + 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def transpose(matrix: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*matrix)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    out = []
    for row in A:
        new = []
        for col in Bt:
            s = 0
            for a, b in zip(row, col):
                if a and b:
                    s = s + a * b
            new.append(s)
        out.append(new)
    return out


def identity(n: int, one=1) -> list[list]:
    return [[one if i == j else one * 0 for j in range(n)] for i in range(n)]


def inverse(matrix: Sequence[Sequence]) -> list[list]:
    n = len(matrix)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(matrix)]
    rows, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in rows]


def det(matrix: Sequence[Sequence]):
    """Determinant by elimination (exact)."""
    m = lower_entries(matrix)
    n = len(m)
    result = m[0][0] * 0 + 1 if n else 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return result * 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        p = m[c][c]
        result = result * p
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                q = f / p
                m[i] = [a - q * b for a, b in zip(m[i], m[c])]
    return result


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list | None:
    """One solution of ``matrix @ x = rhs`` or ``None`` when inconsistent."""
    n = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    zero = rows[0][0] * 0 if rows else Fraction(0)
    x = [zero] * n
    for row, p in zip(rows, pivots):
        x[p] = row[n]
    return x
