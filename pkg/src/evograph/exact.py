"""Exact dense linear algebra over big integers and rationals."""

from __future__ import annotations

from fractions import Fraction


def det_bareiss(rows: list[list[int]]) -> int:
    """Integer determinant by Bareiss fraction-free elimination.

    All intermediate values stay integral (divisions are exact), so the
    result is exact for arbitrary-precision inputs.
    """
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_cofactor(rows: list[list[int]]) -> int:
    """Determinant by cofactor expansion, memoized on column subsets.

    Exponential; used only as an independent cross-check oracle on
    small matrices.
    """
    n = len(rows)
    if n == 0:
        return 1
    cache: dict[tuple[int, int], int] = {}
    full = (1 << n) - 1

    def minor(row: int, cols: int) -> int:
        if row == n:
            return 1
        key = (row, cols)
        if key in cache:
            return cache[key]
        total = 0
        sign = 1
        for j in range(n):
            if not (cols >> j) & 1:
                continue
            if rows[row][j] != 0:
                total += sign * rows[row][j] * minor(row + 1, cols & ~(1 << j))
            sign = -sign
        cache[key] = total
        return total

    return minor(0, full)


def rank(rows: list[list[Fraction]]) -> int:
    """Exact rank by Gaussian elimination over the rationals."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def scale(mat: list[list[Fraction]], c: Fraction) -> list[list[Fraction]]:
    return [[c * x for x in row] for row in mat]
