"""Finite-length graded modules over k[x_1..x_n] by per-degree linear algebra.

A module stores, for each degree e in [lo, hi], its dimension and for each
variable x_i the matrix of multiplication M_e -> M_{e+1} (column vectors).
Modules built as quotients A/B of submodules of a graded free module also
keep representatives, so elements and products can be pushed in.
"""
from __future__ import annotations

import logging

import numpy as np

from . import linalg
from .linalg import EchelonBasis, matmul
from .spaces import GradedFreeModule, monomial_exponents

log = logging.getLogger(__name__)


class NotFiniteLength(ValueError):
    pass


class ContainmentError(ValueError):
    pass


class FiniteLengthGradedModule:
    """Dimensions and variable actions of a finite-length graded module."""

    def __init__(self, ring, dims: dict, action: dict, label: str = ""):
        self.ring = ring
        self.p = ring.p
        self.nvars = ring.n
        self.dims = {e: int(d) for e, d in dims.items() if d}
        self.action = action       # (i, e) -> array of shape (dim(e+1), dim(e))
        self.label = label

    # shape -----------------------------------------------------------------
    @property
    def lo(self):
        return min(self.dims) if self.dims else 0

    @property
    def hi(self):
        return max(self.dims) if self.dims else -1

    def dim(self, e: int) -> int:
        return self.dims.get(e, 0)

    def degrees(self):
        return range(self.lo, self.hi + 1) if self.dims else range(0)

    def is_zero(self) -> bool:
        return not self.dims

    def hilbert_function(self) -> dict:
        return {e: self.dim(e) for e in self.degrees()}

    def hf_list(self) -> list:
        return [self.dim(e) for e in self.degrees()]

    def length(self) -> int:
        return sum(self.dims.values())

    def act(self, i: int, e: int):
        """Matrix of x_i : M_e -> M_{e+1}."""
        m = self.action.get((i, e))
        if m is None:
            m = np.zeros((self.dim(e + 1), self.dim(e)), np.int64)
        return m

    def __repr__(self):
        return f"FiniteLengthGradedModule({self.label or ''} HF={self.hilbert_function()})"

    # checks ------------------------------------------------------------------
    def commutes(self) -> bool:
        p = self.p
        for e in self.degrees():
            for i in range(self.nvars):
                for j in range(i + 1, self.nvars):
                    a = matmul(self.act(j, e + 1), self.act(i, e), p)
                    b = matmul(self.act(i, e + 1), self.act(j, e), p)
                    if not np.array_equal(a, b):
                        return False
        return True

    # constructions -------------------------------------------------------
    def twist(self, k: int) -> "FiniteLengthGradedModule":
        """M(k), with M(k)_e = M_{e+k}."""
        dims = {e - k: d for e, d in self.dims.items()}
        action = {(i, e - k): m for (i, e), m in self.action.items()}
        return FiniteLengthGradedModule(self.ring, dims, action, f"{self.label}({k})")

    def dual(self) -> "FiniteLengthGradedModule":
        """Graded k-dual Hom_k(M, k) with (x f)(m) = f(x m); degrees are negated."""
        dims = {-e: d for e, d in self.dims.items()}
        action = {}
        for (i, e), m in self.action.items():
            # x_i : (M_{e+1})^* (degree -e-1) -> (M_e)^* (degree -e)
            action[(i, -e - 1)] = np.ascontiguousarray(m.T)
        return FiniteLengthGradedModule(self.ring, dims, action, f"dual({self.label})")

    def socle(self) -> "Socle":
        return socle(self)

    def is_gorenstein(self) -> bool:
        return socle(self).module.length() == 1


class Socle:
    """Socle of a module: the submodule plus its basis vectors in each degree."""

    def __init__(self, module, vectors):
        self.module = module
        self.vectors = vectors      # e -> array (k, dim M_e), rows in the coordinates of M

    def dims(self) -> dict:
        return self.module.dims

    def dim(self) -> int:
        return self.module.length()


def socle(M: FiniteLengthGradedModule) -> Socle:
    """Intersection of the kernels of all variable actions, degree by degree."""
    p = M.p
    dims = {}
    vecs = {}
    for e in M.degrees():
        d = M.dim(e)
        if not d:
            continue
        blocks = [M.act(i, e) for i in range(M.nvars) if M.dim(e + 1)]
        if blocks:
            K = linalg.nullspace(np.vstack(blocks), p)
        else:
            K = np.eye(d, dtype=np.int64)
        if len(K):
            dims[e] = len(K)
            vecs[e] = K
    sub = FiniteLengthGradedModule(M.ring, dims, {}, f"soc({M.label})")
    return Socle(sub, vecs)


# ---------------------------------------------------------------------------
# quotient modules A/B inside a graded free module


class QuotientModule(FiniteLengthGradedModule):
    """A/B for submodules B of A of a graded free module F, with representatives.

    reps[e] are rows in F_e coordinates spanning a complement of B_e in A_e
    (reduced echelon, pivots qpiv[e]); den[e] is the echelon form of B_e.
    """

    def __init__(self, ring, F, dims, action, reps, qpiv, den, label=""):
        super().__init__(ring, dims, action, label)
        self.F = F
        self.reps = reps
        self.qpiv = qpiv
        self.den = den

    def coordinates(self, V, e: int):
        """Coordinates of rows V (elements of A_e in F_e coordinates) in the basis of M_e."""
        V = np.atleast_2d(V)
        if not self.dim(e):
            return np.zeros((V.shape[0], 0), np.int64)
        W = self.den[e].reduce(V) if e in self.den else V % self.p
        return W[:, self.qpiv[e]]

    def reduce(self, V, e: int):
        """Normal forms modulo B_e (rows in F_e coordinates)."""
        V = np.atleast_2d(V)
        if e in self.den:
            return self.den[e].reduce(V)
        return V % self.p

    def element(self, vec, e: int):
        """Coordinates of a homogeneous element (polynomial or vector) of A."""
        return self.coordinates(self.F.vector(vec, e), e)[0]


def _gens_by_degree(F, vectors):
    out: dict[int, list] = {}
    for v in vectors:
        if not isinstance(v, (list, tuple)):
            v = [v]
        d = None
        for c, f in enumerate(v):
            if f:
                if not f.is_homogeneous():
                    raise ValueError("generators must be homogeneous")
                d = f.degree() + F.shifts[c]
                break
        if d is None:
            continue
        out.setdefault(d, []).append(F.vector(v, d))
    return {d: np.array(rows, np.int64) for d, rows in sorted(out.items())}


class _SubmoduleDegrees:
    """Echelon forms of the degree parts of a submodule generated by given vectors."""

    def __init__(self, F, gens_by_degree, chunk: int = 1024):
        self.F = F
        self.p = F.p
        self.chunk = chunk
        self.gens = {}
        for d, G in gens_by_degree.items():
            B = EchelonBasis(F.dim(d), F.p, G)
            if B.rank:
                self.gens[d] = B.basis()
        self.cache: dict[int, EchelonBasis] = {}

    def at(self, e: int) -> EchelonBasis:
        if e in self.cache:
            return self.cache[e]
        F = self.F
        basis = EchelonBasis(F.dim(e), self.p)
        ring = F.ring
        prev = self.cache.get(e - 1)
        cost_gens = sum(len(G) * ring.num_monomials(e - d) for d, G in self.gens.items() if d < e)
        if prev is not None and prev.rank * ring.n < cost_gens:
            B = prev.basis()
            for i in range(ring.n):
                basis.extend(F.mul_var(B, i, e - 1), self.chunk)
        else:
            for d, G in self.gens.items():
                if d >= e:
                    continue
                block = []
                size = 0
                for exps in monomial_exponents(ring, e - d):
                    block.append(F.mul_monomial(G, exps, d))
                    size += len(G)
                    if size >= self.chunk:
                        basis.extend(np.vstack(block), self.chunk)
                        block, size = [], 0
                if block:
                    basis.extend(np.vstack(block), self.chunk)
        if e in self.gens:
            basis.extend(self.gens[e])
        self.cache[e] = basis
        self.cache.pop(e - 2, None)
        return basis


def quotient_module(F: GradedFreeModule, A_gens, B_gens, label: str = "",
                    hi_bound: int | None = None, max_degree: int = 60,
                    check_containment: bool = True) -> QuotientModule:
    """The module A/B where A and B are generated by homogeneous vectors of F.

    A_gens may be None for A = F.  The degree range is found by scanning:
    once (A/B)_e = 0 in a degree at or beyond the top generator degree of A,
    every higher degree vanishes as well.
    """
    ring = F.ring
    p = F.p
    if A_gens is None:
        A = {}
        for c, s in enumerate(F.shifts):
            v = np.zeros(F.dim(s), np.int64)
            v[F.layout(s)[0][c]] = 1
            A.setdefault(s, []).append(v)
        A = {d: np.array(rows) for d, rows in A.items()}
    else:
        A = _gens_by_degree(F, A_gens)
    Bg = _gens_by_degree(F, B_gens)
    Bdeg = _SubmoduleDegrees(F, Bg)
    if not A:
        return QuotientModule(ring, F, {}, {}, {}, {}, {}, label)
    lo = min(A)
    top_gen = max(A)
    if check_containment and Bg:
        for d, G in Bg.items():
            if d < lo:
                raise ContainmentError("B has generators below the degrees of A")
            Ad = _SubmoduleDegrees(F, A).at(d)
            if not Ad.contains(G):
                raise ContainmentError("B is not contained in A")
    dims, action, reps, qpiv, den = {}, {}, {}, {}, {}
    prev = None
    e = lo
    while True:
        if e > max_degree or (hi_bound is not None and e > hi_bound + 1):
            raise NotFiniteLength(f"module does not vanish by degree {e - 1}")
        EB = Bdeg.at(e)
        cands = []
        shifted = []
        if prev is not None and len(prev):
            for i in range(ring.n):
                W = F.mul_var(prev, i, e - 1)
                shifted.append(W)
                cands.append(W)
        if e in A:
            cands.append(A[e])
        if cands:
            C = EB.reduce(np.vstack(cands)) if EB.rank else np.vstack(cands) % p
            R, piv = linalg.rref(C, p)
        else:
            R, piv = np.zeros((0, F.dim(e)), np.int64), np.zeros(0, np.int64)
        if len(R):
            dims[e] = len(R)
            reps[e] = R
            qpiv[e] = piv
            den[e] = EB
        if prev is not None and len(prev):
            for i, W in enumerate(shifted):
                if len(R):
                    Wr = EB.reduce(W) if EB.rank else W % p
                    action[(i, e - 1)] = np.ascontiguousarray(Wr[:, piv].T)
        if not len(R) and e >= top_gen:
            break
        prev = R
        e += 1
    return QuotientModule(ring, F, dims, action, reps, qpiv, den, label)


def finite_module(A, B, label: str = "", **kw) -> QuotientModule:
    """A/B for homogeneous ideals B contained in A."""
    from .ideal import Ideal
    ring = A.ring
    F = GradedFreeModule(ring, [0])
    if not isinstance(A, Ideal) or not isinstance(B, Ideal):
        raise TypeError("finite_module expects ideals")
    if not A.is_homogeneous() or not B.is_homogeneous():
        raise ValueError("ideals must be homogeneous")
    return quotient_module(F, [[g] for g in A.gens], [[g] for g in B.gens], label, **kw)


def cokernel_module(pres, label: str = "", **kw) -> QuotientModule:
    """coker of a homogeneous presentation, when of finite length."""
    F = GradedFreeModule(pres.ring, pres.row_shifts)
    return quotient_module(F, None, pres.columns, label, **kw)


# ---------------------------------------------------------------------------
# products of representatives (ideal quotients)


class ProductTable:
    """Index maps for multiplying homogeneous polynomials given as coordinate vectors."""

    def __init__(self, ring):
        self.ring = ring
        self._maps: dict = {}

    def index_map(self, d1: int, d2: int):
        key = (d1, d2)
        m = self._maps.get(key)
        if m is None:
            ring = self.ring
            k1 = ring.degree_table(d1)[0]
            k2 = ring.degree_table(d2)[0]
            index = ring.degree_table(d1 + d2)[1]
            m = np.array([[index[a + b] for b in k2] for a in k1], dtype=np.int64).reshape(len(k1), len(k2))
            self._maps[key] = m
        return m

    def products(self, a, d1: int, Bm, d2: int, p: int):
        """Rows a (one vector in R_{d1}) times each row of Bm (in R_{d2})."""
        idx = self.index_map(d1, d2)
        Bm = np.atleast_2d(Bm).astype(np.float64)
        out = np.zeros((Bm.shape[0], self.ring.num_monomials(d1 + d2)))
        nz = np.nonzero(a)[0]
        budget = 0
        lim = float(2 ** 52) / float(p - 1) ** 2
        for s in nz:
            out[:, idx[s]] += float(a[s]) * Bm
            budget += 1
            if budget >= lim:
                out = linalg.reduce_mod(out, p)
                budget = 1
        return linalg.reduce_mod(out, p).astype(np.int64)


def multiplication_map(A: QuotientModule, B: QuotientModule, C: QuotientModule, ea: int, eb: int,
                       table: ProductTable | None = None):
    """Tensor T[i, j, :] = coordinates in C of (rep_i of A_ea) * (rep_j of B_eb)."""
    ring = A.ring
    p = A.p
    table = table or ProductTable(ring)
    qa, qb, qc = A.dim(ea), B.dim(eb), C.dim(ea + eb)
    T = np.zeros((qa, qb, qc), np.int64)
    if not (qa and qb and qc):
        return T
    for i in range(qa):
        P = table.products(A.reps[ea][i], ea, B.reps[eb], eb, p)
        T[i] = C.coordinates(P, ea + eb)
    return T


# ---------------------------------------------------------------------------
# graded Hom


class HomModule(FiniteLengthGradedModule):
    """Hom_R(M, N) as a graded module; basis[e] rows are flattened maps of degree e.

    A map of degree e is the family phi_a : M_a -> N_{a+e}; it is flattened by
    concatenating phi_a (row-major, shape dim N_{a+e} x dim M_a) over a in M's
    degree range.
    """

    def __init__(self, ring, M, N, basis, action):
        dims = {e: len(b) for e, b in basis.items() if len(b)}
        super().__init__(ring, dims, action, f"Hom({M.label},{N.label})")
        self.M = M
        self.N = N
        self.basis = basis
        self._ech = {}

    def layout(self, e: int):
        offs = {}
        pos = 0
        for a in self.M.degrees():
            offs[a] = pos
            pos += self.N.dim(a + e) * self.M.dim(a)
        return offs, pos

    def unflatten(self, vec, e: int) -> dict:
        offs, _ = self.layout(e)
        out = {}
        for a in self.M.degrees():
            r, c = self.N.dim(a + e), self.M.dim(a)
            out[a] = np.asarray(vec[offs[a]:offs[a] + r * c]).reshape(r, c)
        return out

    def flatten(self, maps: dict, e: int):
        parts = []
        for a in self.M.degrees():
            r, c = self.N.dim(a + e), self.M.dim(a)
            m = maps.get(a)
            parts.append(np.zeros(r * c, np.int64) if m is None else np.asarray(m).reshape(-1))
        return np.concatenate(parts) if parts else np.zeros(0, np.int64)

    def echelon(self, e: int) -> EchelonBasis:
        if e not in self._ech:
            n = self.layout(e)[1]
            B = self.basis.get(e)
            self._ech[e] = EchelonBasis(n, self.p, B if B is not None and len(B) else None)
        return self._ech[e]

    def contains(self, vec, e: int) -> bool:
        return self.echelon(e).contains(vec)


def _hom_degree(M, N, e: int, p: int):
    """Basis of degree-e homomorphisms M -> N as a list of dicts a -> matrix."""
    n = M.nvars
    degs = list(M.degrees())
    if not degs:
        return []
    Z = 0
    Phi = None              # tensor (dim N_{a+e}, dim M_a, Z) for the current a
    history = []            # (a, Phi) pairs; earlier ones get re-parametrized
    for idx, a in enumerate(degs):
        dN, dM = N.dim(a + e), M.dim(a)
        if idx == 0:
            Z = dN * dM
            Phi = np.eye(Z, dtype=np.int64).reshape(dN, dM, Z) if Z else np.zeros((dN, dM, 0), np.int64)
            history.append([a, Phi])
        a1 = a + 1
        d1 = M.dim(a1)
        dN1 = N.dim(a1 + e)
        # Mcat : (d1, n*dM); Ncat(Phi) : (dN1, n*dM, Z)
        if dM:
            Mcat = np.hstack([M.act(i, a) for i in range(n)]) if d1 else np.zeros((0, n * dM), np.int64)
            Ncat = np.concatenate([np.einsum("rs,scz->rcz", N.act(i, a + e), Phi) % p
                                   if dN1 and Phi.shape[0] else np.zeros((dN1, dM, Z), np.int64)
                                   for i in range(n)], axis=1)
        else:
            Mcat = np.zeros((d1, 0), np.int64)
            Ncat = np.zeros((dN1, 0, Z), np.int64)
        # consistency: Ncat . ker(Mcat) = 0
        K = linalg.nullspace(Mcat, p) if Mcat.shape[1] else np.zeros((0, 0), np.int64)
        if len(K) and dN1 and Z:
            rows = []
            for r in range(dN1):
                rows.append(matmul(K, Ncat[r], p))     # (k, Z)
            Cmat = np.vstack(rows)
            S = linalg.nullspace(Cmat, p)              # (Z', Z) basis of allowed parameters
            Zp = len(S)
            ST = S.T
            for h in history:
                h[1] = _reparam(h[1], ST, p)
            Ncat = _reparam(Ncat, ST, p)
            Phi = history[-1][1]
            Z = Zp
        if a1 > degs[-1]:
            break
        # phi_{a+1} W = [Ncat[:, P] | Y], W = [Mcat[:, P] | E]
        if d1:
            if Mcat.shape[1]:
                _, P = linalg.rref(Mcat, p)            # independent columns of Mcat
            else:
                P = np.zeros(0, np.int64)
            r = len(P)
            V = Mcat[:, P] if r else np.zeros((d1, 0), np.int64)
            # complete V to a basis with unit vectors
            if r < d1:
                _, piv = linalg.rref(V.T, p) if r else (None, np.zeros(0, np.int64))
                free = [j for j in range(d1) if j not in set(int(x) for x in piv)]
                E = np.zeros((d1, len(free)), np.int64)
                E[free, np.arange(len(free))] = 1
                W = np.hstack([V, E])
            else:
                W = V
            Winv = linalg.inverse(W, p)
            newp = dN1 * (d1 - r)
            Ztot = Z + newp
            T = np.zeros((dN1, d1, Ztot), np.int64)
            if r and Z:
                T[:, :r, :Z] = Ncat[:, P, :]
            if newp:
                T[:, r:, Z:] = np.eye(newp, dtype=np.int64).reshape(dN1, d1 - r, newp)
            # phi = T . Winv  (contract the d1 axis)
            Phi = np.einsum("rjz,jk->rkz", T, Winv) % p if T.size else np.zeros((dN1, d1, Ztot), np.int64)
            if newp:
                for h in history:
                    h[1] = np.concatenate([h[1], np.zeros(h[1].shape[:2] + (newp,), np.int64)], axis=2)
            Z = Ztot
        else:
            Phi = np.zeros((dN1, 0, Z), np.int64)
        history.append([a1, Phi])
    out = []
    for z in range(Z):
        out.append({a: P[:, :, z] % p for a, P in history if a in M.dims})
    return out


def _reparam(T, ST, p):
    if T.size == 0:
        return np.zeros(T.shape[:2] + (ST.shape[1],), np.int64)
    sh = T.shape
    flat = T.reshape(-1, sh[2])
    return matmul(flat, ST, p).reshape(sh[0], sh[1], ST.shape[1])


def graded_hom(M: FiniteLengthGradedModule, N: FiniteLengthGradedModule, shifts=None) -> HomModule:
    """Hom_R(M, N) for finite-length graded modules, degree by degree."""
    p = M.p
    if shifts is None:
        if M.is_zero() or N.is_zero():
            shifts = []
        else:
            shifts = range(N.lo - M.hi, N.hi - M.lo + 1)
    basis = {}
    hom = HomModule(M.ring, M, N, {}, {})
    for e in shifts:
        maps = _hom_degree(M, N, e, p)
        if maps:
            basis[e] = np.array([hom.flatten(m, e) for m in maps], np.int64)
    hom = HomModule(M.ring, M, N, basis, {})
    for e in list(basis):
        hom.basis[e] = hom.echelon(e).basis()
    hom.action = _hom_actions(hom, p)
    return hom


def _hom_actions(hom, p):
    """(x_i phi)_a = x_i o phi_a, in the echelon bases of hom.basis."""
    action = {}
    M, N = hom.M, hom.N
    for e in hom.basis:
        if e + 1 not in hom.basis:
            continue
        ech = hom.echelon(e + 1)
        for i in range(M.nvars):
            rows = []
            for vec in hom.basis[e]:
                maps = hom.unflatten(vec, e)
                img = {a: matmul(N.act(i, a + e), m, p) for a, m in maps.items()}
                rows.append(hom.flatten(img, e + 1))
            action[(i, e)] = np.ascontiguousarray(ech.coordinates(np.array(rows, np.int64)).T)
    return action


def hom_element_is_iso(hom: HomModule, vec, e: int) -> bool:
    """True iff the map given by vec is bijective in every degree."""
    M, N = hom.M, hom.N
    maps = hom.unflatten(vec, e)
    degs = set(M.dims) | {a - e for a in N.dims}
    for a in degs:
        if M.dim(a) != N.dim(a + e):
            return False
        if M.dim(a) and linalg.rank(maps[a], hom.p) != M.dim(a):
            return False
    return True


def is_isomorphic(M, N, rng=None, shifts=None, trials: int = 3):
    """Search for a graded isomorphism M -> N(shift).

    Returns (shift, True) when a random homogeneous map of some admissible
    shift is bijective; (None, False) when no such map was found.  Shifts are
    restricted to those where the Hilbert functions match.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    p = M.p
    if M.is_zero() and N.is_zero():
        return 0, True
    if M.length() != N.length():
        return None, False
    cands = []
    if shifts is None:
        shifts = range(N.lo - M.hi, N.hi - M.lo + 1)
    for e in shifts:
        if all(M.dim(a) == N.dim(a + e) for a in set(M.dims) | {b - e for b in N.dims}):
            cands.append(e)
    for e in cands:
        maps = _hom_degree(M, N, e, p)
        if not maps:
            continue
        hom = HomModule(M.ring, M, N, {}, {})
        B = np.array([hom.flatten(m, e) for m in maps], np.int64)
        for _ in range(trials):
            c = rng.integers(0, p, len(B))
            vec = matmul(c[None, :], B, p)[0]
            if hom_element_is_iso(hom, vec, e):
                return e, True
    return None, False
