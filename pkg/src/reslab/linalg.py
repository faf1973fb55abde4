"""Exact dense linear algebra over prime fields F_p.

Matrices are numpy int64 arrays with entries in [0, p).  Elimination is a
blocked Gauss-Jordan: a narrow panel is factored with a compiled kernel and
the trailing matrix is updated with float64 matrix products.  Products of
residues below 2**26 are exact in double precision as long as the running
magnitude stays below 2**52, which is tracked explicitly so that modular
reduction of the trailing block is delayed until it is needed.
"""
from __future__ import annotations

import numpy as np
import numba

_LIMIT = float(2 ** 52)
_PANEL = 96


def check_prime(p: int) -> None:
    if p < 2 or p >= 2 ** 26:
        raise ValueError(f"prime {p} outside supported range [2, 2**26)")


def reduce_mod(A, p):
    """Return A reduced into [0, p) (float64 in, float64 out)."""
    q = np.floor(A * (1.0 / p))
    A = A - q * p
    A[A < 0] += p
    A[A >= p] -= p
    return A


def _reduce_inplace(A, p):
    q = np.floor(A * (1.0 / p))
    q *= p
    A -= q
    np.add(A, p, out=A, where=A < 0)
    np.subtract(A, p, out=A, where=A >= p)


@numba.njit(cache=True)
def _inv(a, p):
    # extended Euclid on int64
    t, nt, r, nr = 0, 1, p, a % p
    while nr:
        q = r // nr
        t, nt = nt, t - q * nt
        r, nr = nr, r - q * nr
    return t % p


@numba.njit(cache=True)
def _panel(P, p):
    """Row-swap elimination of an int64 panel.  Returns (rank, swaps, pivot cols)."""
    m, w = P.shape
    kmax = min(m, w)
    swaps = np.empty(kmax, np.int64)
    pcols = np.empty(kmax, np.int64)
    r = 0
    for j in range(w):
        if r == m:
            break
        i = r
        while i < m and P[i, j] == 0:
            i += 1
        if i == m:
            continue
        if i != r:
            for k in range(w):
                tmp = P[i, k]
                P[i, k] = P[r, k]
                P[r, k] = tmp
        swaps[r] = i
        pcols[r] = j
        inv = _inv(P[r, j], p)
        for k in range(j, w):
            P[r, k] = P[r, k] * inv % p
        for i2 in range(r + 1, m):
            f = P[i2, j]
            if f:
                for k in range(j, w):
                    P[i2, k] = (P[i2, k] - f * P[r, k]) % p
        r += 1
    return r, swaps[:r], pcols[:r]


@numba.njit(cache=True)
def _small_inverse(A, p):
    n = A.shape[0]
    M = np.zeros((n, 2 * n), np.int64)
    for i in range(n):
        for j in range(n):
            M[i, j] = A[i, j] % p
        M[i, n + i] = 1
    for c in range(n):
        piv = -1
        for i in range(c, n):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            raise ValueError("singular matrix")
        if piv != c:
            for k in range(2 * n):
                tmp = M[piv, k]
                M[piv, k] = M[c, k]
                M[c, k] = tmp
        inv = _inv(M[c, c], p)
        for k in range(2 * n):
            M[c, k] = M[c, k] * inv % p
        for i in range(n):
            if i != c:
                f = M[i, c]
                if f:
                    for k in range(2 * n):
                        M[i, k] = (M[i, k] - f * M[c, k]) % p
    return M[:, n:].copy()


def inverse(A, p):
    A = np.asarray(A, dtype=np.int64)
    if A.shape[0] != A.shape[1]:
        raise ValueError("matrix is not square")
    if A.shape[0] == 0:
        return A.copy()
    return _small_inverse(A % p, p)


def _eliminate(X, p, reduced=True):
    """Blocked elimination of a float64 matrix (overwritten).  Returns (rank, pivots)."""
    A = X
    m, n = A.shape
    pp = float(p - 1) ** 2
    r = 0
    pivots = []
    acc = float(p)
    c = 0
    while c < n and r < m:
        c2 = min(c + _PANEL, n)
        if acc > p:
            _reduce_inplace(A[:, c:c2], p)
        panel = A[r:, c:c2].astype(np.int64)
        k, swaps, pcols = _panel(panel, p)
        if k == 0:
            c = c2
            continue
        for j in range(k):
            s = r + int(swaps[j])
            if s != r + j:
                A[[r + j, s]] = A[[s, r + j]]
        cols = c + pcols
        T = _small_inverse(A[r:r + k][:, cols].astype(np.int64), p).astype(np.float64)
        top = A[r:r + k, c:]
        if acc > p:
            _reduce_inplace(top, p)
        rows = T @ top
        _reduce_inplace(rows, p)
        if acc + k * pp >= _LIMIT:
            _reduce_inplace(A[:, c2:], p)
            acc = float(p)
        if r + k < m:
            L = A[r + k:, cols]
            A[r + k:, c:] -= L @ rows
        if reduced and r > 0:
            U = A[:r, cols]
            A[:r, c:] -= U @ rows
        A[r:r + k, c:] = rows
        acc += k * pp
        pivots.extend(int(x) for x in cols)
        r += k
        c = c2
    return r, pivots


def rref(M, p):
    """Reduced row echelon form.  Returns (R, pivots) with R of shape (rank, ncols)."""
    M = np.asarray(M)
    m, n = M.shape
    if m == 0 or n == 0:
        return np.zeros((0, n), np.int64), np.zeros(0, np.int64)
    A = np.array(M, dtype=np.float64) % p
    r, piv = _eliminate(A, p, reduced=True)
    R = reduce_mod(A[:r], p).astype(np.int64)
    return R, np.array(piv, dtype=np.int64)


def rank(M, p) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    A = np.array(M, dtype=np.float64) % p
    return _eliminate(A, p, reduced=False)[0]


def nullspace(M, p):
    """Basis (as rows) of the right kernel {v : M v = 0}."""
    M = np.asarray(M)
    n = M.shape[1]
    R, piv = rref(M, p)
    free = np.setdiff1d(np.arange(n), piv)
    N = np.zeros((len(free), n), np.int64)
    if len(free):
        N[np.arange(len(free)), free] = 1
        if len(piv):
            N[:, piv] = (-R[:, free].T) % p
    return N


def matmul(A, B, p):
    """Product mod p, chunked over the inner dimension to stay exact."""
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    inner = A.shape[1]
    step = max(1, int(_LIMIT // (float(p - 1) ** 2 + 1)))
    if inner <= step:
        return reduce_mod(A @ B, p).astype(np.int64)
    out = np.zeros((A.shape[0], B.shape[1]))
    for s in range(0, inner, step):
        out += reduce_mod(A[:, s:s + step] @ B[s:s + step], p)
    return reduce_mod(out, p).astype(np.int64)


class EchelonBasis:
    """A subspace of F_p^n kept as reduced echelon rows.

    Supports normal forms modulo the subspace, membership and incremental
    extension.  Rows are stored as float64 to feed matrix products directly.
    """

    def __init__(self, n: int, p: int, rows=None):
        self.n = n
        self.p = p
        self.rows = np.zeros((0, n))
        self.pivots = np.zeros(0, np.int64)
        if rows is not None and len(rows):
            self.extend(rows)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, V):
        """Normal forms of the rows of V modulo the subspace (int64)."""
        V = np.atleast_2d(np.asarray(V, dtype=np.float64)) % self.p
        if self.rank == 0 or V.shape[0] == 0:
            return V.astype(np.int64)
        W = V - V[:, self.pivots] @ self.rows
        return reduce_mod(W, self.p).astype(np.int64)

    def contains(self, V) -> bool:
        return not self.reduce(V).any()

    def coordinates(self, V):
        """Coefficients of rows of V (assumed in the span) in the echelon basis."""
        V = np.atleast_2d(np.asarray(V))
        return V[:, self.pivots] % self.p

    def extend(self, V, chunk: int = 2048):
        V = np.atleast_2d(np.asarray(V))
        for s in range(0, V.shape[0], chunk):
            self._extend(V[s:s + chunk])
        return self

    def _extend(self, V):
        p = self.p
        W = self.reduce(V)
        W = W[W.any(axis=1)]
        if W.shape[0] == 0:
            return
        A = W.astype(np.float64)
        k, piv = _eliminate(A, p, reduced=True)
        if k == 0:
            return
        new = reduce_mod(A[:k], p)
        piv = np.array(piv, dtype=np.int64)
        old = self.rows
        if old.shape[0]:
            old = reduce_mod(old - old[:, piv] @ new, p)
        rows = np.vstack([old, new])
        pivots = np.concatenate([self.pivots, piv])
        order = np.argsort(pivots, kind="stable")
        self.rows = np.ascontiguousarray(rows[order])
        self.pivots = pivots[order]

    def basis(self):
        return self.rows.astype(np.int64)
