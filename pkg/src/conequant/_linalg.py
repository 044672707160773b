"""Exact dense linear algebra over rationals and integers.

Everything here is Gaussian elimination at desk scale; no pivoting heuristics
beyond "first nonzero" are needed because the arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[Fraction, ...]


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rref rows, pivot column indices)."""
    mat = [list(r) for r in rows]
    m = len(mat)
    n = len(mat[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][col]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(m):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    nonzero = [row for row in mat if any(x != 0 for x in row)]
    return nonzero, pivots


def rank(rows) -> int:
    rows = [list(map(Fraction, r)) for r in rows]
    if not rows:
        return 0
    return len(rref(rows)[0])


def int_rank(rows: list[tuple[int, ...]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    mat = [list(r) for r in rows if any(r)]
    m = len(mat)
    if m == 0:
        return 0
    n = len(mat[0])
    prev = 1
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][col]
        for i in range(r + 1, m):
            f = mat[i][col]
            row_i = mat[i]
            row_r = mat[r]
            for j in range(col, n):
                row_i[j] = (row_i[j] * pv - f * row_r[j]) // prev
        prev = pv
        r += 1
        if r == m:
            break
    return r


def nullspace(rows, n: int) -> list[Vec]:
    """Basis of {x in Q^n : rows @ x = 0}; empty list when trivial."""
    rows = [list(map(Fraction, r)) for r in rows if any(x != 0 for x in r)]
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    red, pivots = rref(rows)
    free_cols = [j for j in range(n) if j not in pivots]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            vec[pc] = -row[fc]
        basis.append(tuple(vec))
    return basis


def solve_square(a_rows, b) -> list[Fraction]:
    """Solve A x = b for square nonsingular A."""
    n = len(a_rows)
    aug = [list(map(Fraction, row)) + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    red, pivots = rref(aug)
    if len(pivots) != n or pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [red[i][n] for i in range(n)]


def invert(a_rows) -> list[list[Fraction]]:
    """Inverse of a square nonsingular matrix."""
    n = len(a_rows)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a_rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def primitive(vec) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, preserving direction."""
    fracs = [Fraction(x) for x in vec]
    scale = 1
    for f in fracs:
        scale = scale * f.denominator // gcd(scale, f.denominator)
    ints = [int(f * scale) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)
