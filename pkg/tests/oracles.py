"""Independent brute-force oracles used by the property tests.

Everything here works degree by degree with dense matrices over F_p and
python-flint for ranks and kernels, so it shares no code with the engine
beyond polynomial arithmetic.
"""
import numpy as np
import flint

from reslab.poly import Polynomial


def _basis(ring, e):
    keys = ring.monomials(e) if e >= 0 else []
    return {k: i for i, k in enumerate(keys)}


def poly_vector(f, ring, e):
    idx = _basis(ring, e)
    v = [0] * len(idx)
    for k, c in f.keyed.items():
        v[idx[k]] = int(c)
    return v


def component(gens, ring, e):
    """Rows spanning (gens)_e for homogeneous generators."""
    rows = []
    for g in gens:
        k = e - g.degree()
        if k < 0 or not g:
            continue
        for m in ring.monomials(k):
            rows.append(poly_vector(g.shift(m, 1), ring, e))
    return rows


def _mat(rows, ncols, p):
    return flint.nmod_mat(len(rows), ncols, [int(x) % p for r in rows for x in r], p)


def rank(rows, ncols, p):
    if not rows or not ncols:
        return 0
    return _mat(rows, ncols, p).rank()


def kernel(rows, ncols, p):
    """Basis of {v : rows v = 0} as a list of lists."""
    if not ncols:
        return []
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    M = _mat(rows, ncols, p)
    X, nullity = M.nullspace()
    cols = []
    for j in range(nullity):
        cols.append([int(X[i, j]) for i in range(ncols)])
    return cols


def same_space(rows_a, rows_b, ncols, p):
    ra, rb = rank(rows_a, ncols, p), rank(rows_b, ncols, p)
    return ra == rb == rank(rows_a + rows_b, ncols, p)


def intersection_component(A, B, ring, e):
    p = ring.p
    n = ring.num_monomials(e)
    a, b = component(A, ring, e), component(B, ring, e)
    if not a or not b:
        return []
    # v = x a = y b  ->  kernel of [a^T | -b^T]
    M = [[a[i][r] for i in range(len(a))] + [(-b[j][r]) % p for j in range(len(b))] for r in range(n)]
    ker = kernel(M, len(a) + len(b), p)
    out = []
    for v in ker:
        out.append([sum(v[i] * a[i][r] for i in range(len(a))) % p for r in range(n)])
    return out


def colon_component(A, B, ring, e):
    """{f in R_e : f b in A for every generator b of B}."""
    p = ring.p
    monos = ring.monomials(e)
    n = len(monos)
    cons = []
    for b in B:
        d = e + b.degree()
        a = component(A, ring, d)
        # complement of span(a): use the kernel of a as linear functionals
        funcs = kernel(a, ring.num_monomials(d), p) if a else [
            [int(i == j) for j in range(ring.num_monomials(d))] for i in range(ring.num_monomials(d))]
        images = [poly_vector(b.shift(m, 1), ring, d) for m in monos]
        for phi in funcs:
            cons.append([sum(x * y for x, y in zip(phi, img)) % p for img in images])
    return kernel(cons, n, p) if cons else [[int(i == j) for j in range(n)] for i in range(n)]


def saturation_component(A, ring, e, kmax=12):
    """(A : m^k)_e for k large, stopping when two consecutive values agree past the generator degrees."""
    p = ring.p
    n = ring.num_monomials(e)
    prev = None
    top = max(g.degree() for g in A)
    for k in range(0, kmax + 1):
        monos = [Polynomial(ring, {m: 1}) for m in ring.monomials(k)]
        sub = colon_component(A, monos, ring, e)
        r = rank(sub, n, p)
        if prev is not None and r == prev[0] and e + k > top + 2:
            return sub
        prev = (r, sub)
    return prev[1]


def brute_hom_dim(M, N, e, p):
    """dim Hom(M, N)_e from the full Kronecker system of module-map equations."""
    degs = list(M.degrees())
    offs, pos = {}, 0
    for a in degs:
        offs[a] = pos
        pos += N.dim(a + e) * M.dim(a)
    if not pos:
        return 0
    rows = []
    for a in degs:
        for i in range(M.nvars):
            dN1, dM = N.dim(a + e + 1), M.dim(a)
            if not dN1 or not dM:
                continue
            Ni = N.act(i, a + e) if N.dim(a + e) else None
            Mi = M.act(i, a) if M.dim(a + 1) else None
            for r in range(dN1):
                for c in range(dM):
                    row = [0] * pos
                    if Ni is not None:
                        for k in range(N.dim(a + e)):
                            row[offs[a] + k * dM + c] += int(Ni[r, k])
                    if Mi is not None:
                        for k in range(M.dim(a + 1)):
                            row[offs[a + 1] + r * M.dim(a + 1) + k] -= int(Mi[k, c])
                    rows.append(row)
    if not rows:
        return pos
    return pos - rank(rows, pos, p)


def to_sympy(f, gens):
    import sympy
    expr = 0
    for exps, c in f.terms():
        c = int(c)
        if c > f.ring.p // 2:
            c -= f.ring.p
        term = sympy.Integer(c)
        for g, a in zip(gens, exps):
            term *= g ** a
        expr += term
    return expr


def as_array(rows):
    return np.array(rows, dtype=np.int64)
