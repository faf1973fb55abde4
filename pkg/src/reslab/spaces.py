"""Homogeneous components of graded free modules as coordinate spaces.

F = sum_c R(-shift_c).  The degree-e part F_e has the basis of terms m*e_c
with deg m = e - shift_c; blocks are laid out by component, monomials
within a block descending in the ring order.
"""
from __future__ import annotations

import numpy as np

from .poly import Polynomial


class GradedFreeModule:
    def __init__(self, ring, shifts=(0,)):
        self.ring = ring
        self.shifts = list(shifts)
        self.rank = len(self.shifts)
        self.p = ring.p
        self._layout: dict[int, tuple] = {}
        self._var_maps: dict[tuple, np.ndarray] = {}

    def layout(self, e: int):
        """(offsets per component, total dimension) of F_e."""
        lay = self._layout.get(e)
        if lay is None:
            offs = []
            tot = 0
            for s in self.shifts:
                offs.append(tot)
                tot += self.ring.num_monomials(e - s)
            lay = (offs, tot)
            self._layout[e] = lay
        return lay

    def dim(self, e: int) -> int:
        return self.layout(e)[1]

    def vector(self, vec, e: int):
        """Coordinates of a homogeneous vector (list of polynomials, or a polynomial)."""
        if isinstance(vec, Polynomial):
            vec = [vec]
        offs, tot = self.layout(e)
        out = np.zeros(tot, np.int64)
        ring = self.ring
        for c, f in enumerate(vec):
            if not f:
                continue
            d = e - self.shifts[c]
            if d < 0:
                raise ValueError("vector is not homogeneous of the requested degree")
            index = ring.degree_table(d)[1]
            for k, v in f.keyed.items():
                try:
                    out[offs[c] + index[k]] = int(v)
                except KeyError:
                    raise ValueError("vector is not homogeneous of the requested degree") from None
        return out

    def to_vector(self, arr, e: int) -> list:
        offs, tot = self.layout(e)
        ring = self.ring
        out = []
        for c in range(self.rank):
            d = e - self.shifts[c]
            if d < 0:
                out.append(ring.zero())
                continue
            keys = ring.degree_table(d)[0]
            seg = arr[offs[c]:offs[c] + len(keys)]
            nz = np.nonzero(seg)[0]
            out.append(Polynomial(ring, {keys[j]: int(seg[j]) for j in nz}, True))
        return out

    def var_map(self, i: int, e: int):
        """Index array: position in F_{e+1} of x_i times each basis element of F_e."""
        key = (i, e)
        m = self._var_maps.get(key)
        if m is None:
            ring = self.ring
            offs0, tot0 = self.layout(e)
            offs1, _ = self.layout(e + 1)
            m = np.empty(tot0, np.int64)
            vk = ring.var_keys[i]
            for c in range(self.rank):
                d = e - self.shifts[c]
                if d < 0:
                    continue
                keys = ring.degree_table(d)[0]
                index = ring.degree_table(d + 1)[1]
                m[offs0[c]:offs0[c] + len(keys)] = [offs1[c] + index[k + vk] for k in keys]
            self._var_maps[key] = m
        return m

    def mul_var(self, V, i: int, e: int):
        """Rows of V (in F_e) multiplied by x_i, as rows of F_{e+1}."""
        V = np.atleast_2d(V)
        W = np.zeros((V.shape[0], self.dim(e + 1)), V.dtype)
        if V.shape[1]:
            W[:, self.var_map(i, e)] = V
        return W

    def mul_monomial(self, V, exps, e: int):
        """Rows of V times the monomial with exponent vector exps."""
        W = np.atleast_2d(V)
        d = e
        for i, a in enumerate(exps):
            for _ in range(a):
                W = self.mul_var(W, i, d)
                d += 1
        return W

    def span_rows(self, gens_by_degree: dict, e: int):
        """Rows spanning the degree-e part of the submodule generated by the given vectors.

        gens_by_degree maps a degree to a 2-d array of coordinate rows in that degree.
        """
        rows = []
        for d, G in gens_by_degree.items():
            if d > e or len(G) == 0:
                continue
            for exps in monomial_exponents(self.ring, e - d):
                rows.append(self.mul_monomial(G, exps, d))
        if not rows:
            return np.zeros((0, self.dim(e)), np.int64)
        return np.vstack(rows)


def monomial_exponents(ring, deg: int):
    if deg < 0:
        return []
    return [tuple(int(x) for x in row) for row in ring.degree_table(deg)[2]]
