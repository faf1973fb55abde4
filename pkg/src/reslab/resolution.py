"""Minimal graded free resolutions, depth, Cohen-Macaulay tests and canonical modules."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .graded import (FiniteLengthGradedModule, _SubmoduleDegrees, _gens_by_degree,
                     cokernel_module, finite_module, is_isomorphic, socle)
from .groebner import ModulePresentation, syzygy_module
from .ideal import Ideal, codimension, colon, maximal_ideal, unit_ideal
from .minimize import minimal_columns, minimal_generators
from .spaces import GradedFreeModule

log = logging.getLogger(__name__)


class NotCohenMacaulay(ValueError):
    pass


@dataclass
class GradedResolution:
    """F_0 <- F_1 <- ... <- F_L; maps[i] is d_{i+1} : F_{i+1} -> F_i."""

    ring: object
    shifts: list                       # shifts[i] = generator degrees of F_i
    maps: list = field(default_factory=list)
    complete: bool = True              # False when stopped by the length cap
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.maps)

    def projective_dimension(self):
        return self.length if self.complete else None

    def betti(self) -> list:
        """betti()[i][j] = number of generators of F_i in degree j."""
        out = []
        for sh in self.shifts:
            row: dict = {}
            for a in sh:
                row[a] = row.get(a, 0) + 1
            out.append(dict(sorted(row.items())))
        return out

    def ranks(self) -> list:
        return [len(s) for s in self.shifts]

    def composes_to_zero(self) -> bool:
        for i in range(1, len(self.maps)):
            A = self.maps[i - 1].matrix()
            B = self.maps[i].matrix()
            for r in range(len(A)):
                for c in range(len(B[0]) if B else 0):
                    acc = self.ring.zero()
                    for k in range(len(B)):
                        if A[r][k] and B[k][c]:
                            acc = acc + A[r][k] * B[k][c]
                    if acc:
                        return False
        return True

    def has_unit_entries(self) -> bool:
        for m in self.maps:
            for col in m.columns:
                for f in col:
                    if f and f.is_constant():
                        return True
        return False

    def euler_hf(self, e: int) -> int:
        """sum_i (-1)^i dim (F_i)_e, which equals HF of the resolved module in degree e."""
        ring = self.ring
        tot = 0
        for i, sh in enumerate(self.shifts):
            s = sum(ring.num_monomials(e - a) for a in sh if e >= a)
            tot += -s if i % 2 else s
        return tot


def free_resolution(A, length_cap: int | None = None, budget=None) -> GradedResolution:
    """Minimal graded free resolution of R/A (A an ideal) or of coker(A) (a presentation).

    Computed by iterated syzygies of minimal generators; each syzygy module is
    minimized degree by degree, so no differential has a unit entry.
    """
    if isinstance(A, Ideal):
        ring = A.ring
        if not A.is_homogeneous():
            raise ValueError("resolution needs a homogeneous ideal")
        if A.is_unit():
            raise ValueError("R/A is zero")
        gens = minimal_generators(A.gens)
        pres = ModulePresentation(ring, 1, [[g] for g in gens], [0])
    else:
        ring = A.ring
        if not A.is_homogeneous():
            raise ValueError("resolution needs a homogeneous presentation")
        pres = minimal_columns(A)
        pres = ModulePresentation(ring, pres.rank, [c for c in pres.columns if any(c)], list(pres.row_shifts))
        if any(f and f.is_constant() for c in pres.columns for f in c):
            raise ValueError("presentation is not minimal (unit entries); prune it first")
    n = ring.n
    cap = n if length_cap is None else length_cap
    if cap > n:
        raise ValueError("length cap exceeds the number of variables")
    res = GradedResolution(ring, [list(pres.row_shifts)])
    cur = pres
    while cur.ncols:
        if res.length >= cap:
            res.complete = False
            break
        res.maps.append(cur)
        res.shifts.append(cur.column_shifts())
        cur = syzygy_module(cur.columns, ring, shifts=cur.row_shifts, rank=cur.rank, budget=budget)
    return res


def depth_via_AB(A, length_cap: int | None = None):
    """depth = n - pd (Auslander-Buchsbaum); None when the resolution was truncated."""
    res = free_resolution(A, length_cap)
    pd = res.projective_dimension()
    if pd is None:
        return None
    return res.ring.n - pd


def has_depth_zero(A: Ideal) -> bool:
    """depth R/A = 0 iff the maximal ideal is associated, i.e. A : m is strictly bigger."""
    return not colon(A, maximal_ideal(A.ring)).is_subset(A)


def depth(A: Ideal, length_cap: int | None = None):
    """depth of R/A; a nonzero socle short-cuts to 0 before resolving."""
    if has_depth_zero(A):
        return 0
    return depth_via_AB(A, length_cap)


def is_cohen_macaulay(K: Ideal) -> bool:
    """R/K is Cohen-Macaulay iff pd R/K = codim K."""
    return free_resolution(K).projective_dimension() == codimension(K)


def is_gorenstein_artinian(M) -> bool:
    """Artinian graded algebra (or module) with a one-dimensional socle."""
    if isinstance(M, Ideal):
        M = finite_module(unit_ideal(M.ring), M, "R/K")
    return socle(M).module.length() == 1


# ---------------------------------------------------------------------------
# canonical module


@dataclass
class CanonicalModule:
    """omega_{R/K} = Ext^c(R/K, R(-n)), presented as coker of the dual last differential."""

    presentation: ModulePresentation
    codim: int
    resolution: GradedResolution
    module: FiniteLengthGradedModule | None = None     # artinian case

    def hilbert_function(self, degrees) -> dict:
        return presentation_hilbert_function(self.presentation, degrees)


def presentation_hilbert_function(pres: ModulePresentation, degrees) -> dict:
    """dim_k coker(pres)_e for each e in degrees."""
    F = GradedFreeModule(pres.ring, pres.row_shifts)
    sub = _SubmoduleDegrees(F, _gens_by_degree(F, pres.columns))
    out = {}
    for e in degrees:
        out[e] = F.dim(e) - sub.at(e).rank
    return out


def dual_presentation(res: GradedResolution, c: int) -> ModulePresentation:
    """coker(d_c^T) twisted by -n: rows are F_c^*(-n), generators in degrees n - a_j."""
    ring = res.ring
    n = ring.n
    d = res.maps[c - 1]                 # d_c : F_c -> F_{c-1}
    rows = [n - a for a in res.shifts[c]]
    cols = []
    for i in range(d.rank):             # one column per basis element of F_{c-1}
        cols.append([d.columns[j][i] for j in range(d.ncols)])
    return ModulePresentation(ring, d.ncols, cols, rows)


def canonical_module(K: Ideal, artinian_module: bool = True) -> CanonicalModule:
    """omega_{R/K} from the dualized last differential of the minimal resolution.

    With this twist, omega of an artinian R/K is the graded k-dual of R/K,
    living in degrees [-c, 0] where c is the top socle degree.
    """
    res = free_resolution(K)
    c = codimension(K)
    pd = res.projective_dimension()
    if pd != c:
        raise NotCohenMacaulay(f"R/K is not Cohen-Macaulay: pd = {pd} but codim = {c}")
    pres = dual_presentation(res, c)
    mod = None
    if artinian_module and c == K.ring.n:
        mod = cokernel_module(pres, "omega")
    return CanonicalModule(pres, c, res, mod)


def matlis_canonical(K: Ideal) -> FiniteLengthGradedModule:
    """omega of an artinian R/K as the graded k-dual of R/K."""
    RK = finite_module(unit_ideal(K.ring), K, "R/K")
    w = RK.dual()
    w.label = "omega"
    return w


def canonical_routes_agree(K: Ideal, rng=None) -> bool:
    """Compare the resolution route and the k-dual route for artinian R/K (same degrees)."""
    w1 = canonical_module(K).module
    w2 = matlis_canonical(K)
    if w1.hilbert_function() != w2.hilbert_function():
        return False
    e, ok = is_isomorphic(w1, w2, rng=rng, shifts=[0])
    return ok
