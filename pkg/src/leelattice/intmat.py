"""Exact integer matrix algebra: Hermite normal form, determinants, adjugates.

Matrices are lists of rows of Python ints. Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    rows = [[int(x) for x in r] for r in rows]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vecmat(v: Sequence[int], a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Row vector times matrix, v * A."""
    if len(v) != len(a):
        raise ValueError(f"dimension mismatch: {len(v)} vs {len(a)} rows")
    if not a:
        return ()
    out = [0] * len(a[0])
    for c, row in zip(v, a):
        if c:
            for j, x in enumerate(row):
                out[j] += c * x
    return tuple(out)


def det(a: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    m = as_matrix(a)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def minor(a: Sequence[Sequence[int]], i: int, j: int) -> Matrix:
    return [list(r[:j]) + list(r[j + 1:]) for k, r in enumerate(a) if k != i]


def adjugate(a: Sequence[Sequence[int]]) -> Matrix:
    """Adj(A)[i][j] = (-1)^(i+j) * M_{j,i}; satisfies Adj(A) A = det(A) I."""
    m = as_matrix(a)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("adjugate needs a square matrix")
    if n == 1:
        return [[1]]
    return [[(-1) ** (i + j) * det(minor(m, j, i)) for j in range(n)] for i in range(n)]


def gram_det(rows: Sequence[Sequence[int]]) -> int:
    """det(B B^T)."""
    b = as_matrix(rows)
    return det(matmul(b, transpose(b)))


@dataclass(frozen=True)
class HNF:
    """Row-style Hermite normal form of the row lattice of some generating set.

    ``rows`` are the nonzero echelon rows with positive pivots and entries above
    each pivot reduced into [0, pivot). ``transform`` (when requested) is the
    unimodular U with U * A = [rows; 0].
    """

    rows: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]
    ncols: int
    transform: tuple[tuple[int, ...], ...] | None = None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def determinant(self) -> int:
        """Covolume for full-rank forms: product of pivots."""
        if self.rank != self.ncols:
            raise ValueError("determinant defined for full-rank lattices only")
        out = 1
        for i, j in enumerate(self.pivots):
            out *= self.rows[i][j]
        return out

    def solve(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Integer z with z * rows = v, or None if v is not in the lattice."""
        if len(v) != self.ncols:
            raise ValueError(f"length mismatch: {len(v)} != {self.ncols}")
        res = list(v)
        z = []
        for row, j in zip(self.rows, self.pivots):
            if any(res[:j]):
                return None
            c, r = divmod(res[j], row[j])
            if r:
                return None
            z.append(c)
            if c:
                for jj in range(j, self.ncols):
                    res[jj] -= c * row[jj]
        if any(res):
            return None
        return tuple(z)


def hnf(rows: Sequence[Sequence[int]], with_transform: bool = False) -> HNF:
    a = as_matrix(rows)
    if not a:
        raise ValueError("empty generating set")
    m, n = len(a), len(a[0])
    u = identity(m) if with_transform else None

    def sub(i, r, f):
        ai, ar = a[i], a[r]
        for jj in range(n):
            ai[jj] -= f * ar[jj]
        if u is not None:
            ui, ur = u[i], u[r]
            for jj in range(m):
                ui[jj] -= f * ur[jj]

    def swap(i, r):
        a[i], a[r] = a[r], a[i]
        if u is not None:
            u[i], u[r] = u[r], u[i]

    def negate(r):
        a[r] = [-x for x in a[r]]
        if u is not None:
            u[r] = [-x for x in u[r]]

    r = 0
    pivots = []
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][j] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][j]))
            if p != r:
                swap(p, r)
            clean = True
            for i in range(r + 1, m):
                if a[i][j]:
                    sub(i, r, a[i][j] // a[r][j])
                    if a[i][j]:
                        clean = False
            if clean:
                break
        if a[r][j] == 0:
            continue
        if a[r][j] < 0:
            negate(r)
        for i in range(r):
            f = a[i][j] // a[r][j]
            if f:
                sub(i, r, f)
        pivots.append(j)
        r += 1
    return HNF(
        rows=tuple(tuple(row) for row in a[:r]),
        pivots=tuple(pivots),
        ncols=n,
        transform=tuple(tuple(row) for row in u) if u is not None else None,
    )


def rank(rows: Sequence[Sequence[int]]) -> int:
    return hnf(rows).rank


def inverse_mod(a: Sequence[Sequence[int]], q: int) -> Matrix:
    """Inverse of a square matrix over Z_q; needs det(A) to be a unit mod q."""
    d = det(a) % q
    try:
        dinv = pow(d, -1, q)
    except ValueError:
        raise ValueError(f"determinant {d} is not a unit mod {q}") from None
    return [[(dinv * x) % q for x in row] for row in adjugate(a)]
