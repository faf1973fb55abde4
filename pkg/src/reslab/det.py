"""Determinants and minors of polynomial matrices."""
from __future__ import annotations

from itertools import combinations


class _MinorCache:
    """Cofactor expansion along the first chosen column, memoized on (rows, cols)."""

    def __init__(self, M, zero):
        self.M = M
        self.zero = zero
        self.memo: dict = {}

    def det(self, rows: tuple, cols: tuple):
        if not rows:
            return self.zero + 1
        key = (rows, cols)
        v = self.memo.get(key)
        if v is not None:
            return v
        if len(rows) == 1:
            v = self.M[rows[0]][cols[0]]
        else:
            c0 = cols[0]
            rest = cols[1:]
            v = self.zero
            for pos, r in enumerate(rows):
                a = self.M[r][c0]
                if not a:
                    continue
                sub = self.det(rows[:pos] + rows[pos + 1:], rest)
                if not sub:
                    continue
                v = v + a * sub if pos % 2 == 0 else v - a * sub
        self.memo[key] = v
        return v


def determinant(M):
    """Determinant of a square matrix of polynomials (list of rows)."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    if n == 0:
        raise ValueError("empty matrix")
    zero = M[0][0] * 0
    return _MinorCache(M, zero).det(tuple(range(n)), tuple(range(n)))


def minors(M, k: int, ring=None):
    """All k x k minors of M (list of rows), in lexicographic (rows, cols) order."""
    m = len(M)
    n = len(M[0]) if m else 0
    if k <= 0:
        if ring is None:
            raise ValueError("need a ring for the empty minor")
        return [ring.one()]
    if k > min(m, n):
        return []
    zero = M[0][0] * 0
    cache = _MinorCache(M, zero)
    out = []
    for rows in combinations(range(m), k):
        for cols in combinations(range(n), k):
            out.append(cache.det(rows, cols))
    return out


def bareiss_determinant(M):
    """Fraction-free (Bareiss) determinant using exact polynomial division."""
    from .ideal import exact_quotient
    n = len(M)
    A = [list(row) for row in M]
    one = A[0][0] * 0 + 1
    prev = one
    sign = 1
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return one * 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = exact_quotient(num, prev) if num else num
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign > 0 else -d
