"""Gaussian elimination over an exact field (Fraction or RatFunc entries)."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence


def _is_zero(v) -> bool:
    return not v


def _pivot_row(m, col, start):
    # prefer the "simplest" nonzero pivot to curb coefficient growth
    best, best_size = None, None
    for r in range(start, len(m)):
        v = m[r][col]
        if v:
            size = _size(v)
            if best is None or size < best_size:
                best, best_size = r, size
    return best


def _size(v) -> int:
    if isinstance(v, Fraction):
        return v.numerator.bit_length() + v.denominator.bit_length()
    num = getattr(v, "num", None)
    if num is not None:
        return len(v.num) + len(v.den)
    return 0


def det(rows: Sequence[Sequence]):
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    acc = None
    for c in range(n):
        p = _pivot_row(m, c, c)
        if p is None:
            return m[0][0] * 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        acc = piv if acc is None else acc * piv
        inv = 1 / piv
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                f = f * inv
                row_c = m[c]
                m[r] = [a - f * b if b else a for a, b in zip(m[r], row_c)]
    return acc if sign > 0 else -acc


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        p = _pivot_row(m, c, r)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, zero, one) -> list[list]:
    """Basis of {v : rows * v = 0}, one vector per free column."""
    m, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def inverse(rows: Sequence[Sequence], zero, one):
    n = len(rows)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    m, pivots = rref(aug, n)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in m]


def solve_triangular_upper(u, b):
    """Back substitution for an upper-triangular u."""
    n = len(b)
    x = [None] * n
    for i in range(n - 1, -1, -1):
        s = b[i]
        for j in range(i + 1, n):
            if u[i][j]:
                s = s - u[i][j] * x[j]
        x[i] = s / u[i][i]
    return x


def matmul(a, b, zero):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = zero
            for t in range(k):
                if a[i][t] and b[t][j]:
                    s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def mapm(f: Callable, a):
    return [[f(v) for v in row] for row in a]
