"""Minimal generating sets of graded submodules by degree-wise linear algebra."""
from __future__ import annotations

import numpy as np

from .linalg import EchelonBasis
from .spaces import GradedFreeModule


def minimal_subset(vectors, ring, shifts, degrees=None):
    """Indices of a minimal generating subset of homogeneous vectors.

    vectors are lists of polynomials in F = sum R(-shifts); earlier vectors of
    a degree are preferred.
    """
    F = GradedFreeModule(ring, shifts)
    if degrees is None:
        degrees = []
        for v in vectors:
            d = None
            for c, f in enumerate(v):
                if f:
                    d = f.degree() + shifts[c]
                    break
            degrees.append(d)
    order = sorted((d, j) for j, d in enumerate(degrees) if d is not None)
    if not order:
        return []
    kept = []
    span = None
    e_prev = None
    pos = 0
    for e in range(order[0][0], order[-1][0] + 1):
        basis = EchelonBasis(F.dim(e), ring.p)
        if span is not None and span.rank:
            B = span.basis()
            for i in range(ring.n):
                basis.extend(F.mul_var(B, i, e_prev))
        while pos < len(order) and order[pos][0] == e:
            j = order[pos][1]
            v = F.vector(vectors[j], e)
            if not basis.contains(v):
                kept.append(j)
                basis.extend(v)
            pos += 1
        span = basis
        e_prev = e
    return sorted(kept)


def minimal_columns(pres):
    """Drop columns of a homogeneous presentation that are generated by the others."""
    from .groebner import ModulePresentation
    keep = minimal_subset(pres.columns, pres.ring, pres.row_shifts)
    return ModulePresentation(pres.ring, pres.rank, [pres.columns[j] for j in keep],
                              list(pres.row_shifts))


def minimal_generators(polys):
    """Minimal homogeneous generators of an ideal, as a sublist of polys."""
    polys = [f for f in polys if f]
    if not polys:
        return []
    ring = polys[0].ring
    keep = minimal_subset([[f] for f in polys], ring, [0])
    return [polys[j] for j in keep]


def basis_in_degree(polys, deg):
    """Echelon basis (as polynomials) of the span of degree-deg polynomials."""
    polys = [f for f in polys if f]
    if not polys:
        return []
    ring = polys[0].ring
    F = GradedFreeModule(ring, [0])
    V = np.array([F.vector(f, deg) for f in polys])
    B = EchelonBasis(F.dim(deg), ring.p, V)
    return [F.to_vector(row, deg)[0] for row in B.basis()]
