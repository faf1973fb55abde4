"""Fitting ideals and the G_s condition."""
from __future__ import annotations

from dataclasses import dataclass

from .det import minors
from .groebner import ModulePresentation, syzygy_module
from .ideal import Ideal, codimension, unit_ideal
from .minimize import basis_in_degree, minimal_generators


def _span_reduce(polys):
    """Drop linearly dependent homogeneous polynomials degree by degree."""
    polys = [f for f in polys if f]
    if not polys or not all(f.is_homogeneous() for f in polys):
        return polys
    by_deg: dict[int, list] = {}
    for f in polys:
        by_deg.setdefault(f.degree(), []).append(f)
    out = []
    for d in sorted(by_deg):
        out.extend(basis_in_degree(by_deg[d], d))
    return out


def fitting_ideal(pres: ModulePresentation, i: int) -> Ideal:
    """Fitt_i = ideal of (rank - i)-minors of the presentation matrix.

    Sizes <= 0 give the unit ideal; sizes beyond the matrix give zero.
    """
    ring = pres.ring
    size = pres.rank - i
    if size <= 0:
        return unit_ideal(ring)
    if size > min(pres.rank, pres.ncols):
        return Ideal([], ring)
    gens = _span_reduce(minors(pres.matrix(), size, ring))
    I = Ideal(gens, ring)
    if I.is_homogeneous() and gens:
        I = Ideal(minimal_generators(gens), ring)
    return I


def ideal_presentation(I: Ideal) -> ModulePresentation:
    """Presentation of I (as a module) on a minimal generating set."""
    gens = minimal_generators(I.gens) if I.is_homogeneous() else list(I.gens)
    return syzygy_module(gens, I.ring)


@dataclass
class GsResult:
    holds: bool
    first_failing_level: int | None
    codims: dict      # j -> codim Fitt_j(I)

    def __bool__(self):
        return self.holds


def check_Gs(I: Ideal, s: int, pres: ModulePresentation | None = None) -> GsResult:
    """G_s via codim Fitt_j(I) >= j + 1 for 1 <= j <= s - 1.

    A failure at j is reported as first failing level j + 1 (G_{j+1} fails).
    """
    if pres is None:
        pres = ideal_presentation(I)
    codims = {}
    for j in range(1, s):
        F = fitting_ideal(pres, j)
        c = codimension(F) if not F.is_zero() else 0
        codims[j] = c
        if c < j + 1:
            return GsResult(False, j + 1, codims)
    return GsResult(True, None, codims)
