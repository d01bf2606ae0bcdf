"""Small exact linear algebra helpers over Fraction matrices."""

from __future__ import annotations

from fractions import Fraction


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def submatrix(M, rows, cols) -> list[list[Fraction]]:
    """Select rows and columns by 0-based index lists."""
    return [[M[r][c] for c in cols] for r in rows]


def det(M) -> Fraction:
    """Exact determinant by fraction-free style elimination with pivoting."""
    k = len(M)
    if k == 0:
        return Fraction(1)
    if any(len(row) != k for row in M):
        raise ValueError("determinant needs a square matrix")
    a = [[Fraction(x) for x in row] for row in M]
    sign = 1
    for col in range(k):
        pivot_row = next((r for r in range(col, k) if a[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            sign = -sign
        pivot = a[col][col]
        for r in range(col + 1, k):
            factor = a[r][col] / pivot
            if factor == 0:
                continue
            for c in range(col, k):
                a[r][c] -= factor * a[col][c]
    result = Fraction(sign)
    for i in range(k):
        result *= a[i][i]
    return result


def mat_vec(M, v) -> list[Fraction]:
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in M]


def mat_mul(A, B) -> list[list[Fraction]]:
    n, k, m = len(A), len(B), len(B[0])
    return [
        [sum((A[i][t] * B[t][j] for t in range(k)), Fraction(0)) for j in range(m)]
        for i in range(n)
    ]
