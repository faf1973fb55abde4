"""Residual intersections of codimension-2 perfect ideals through the stacked matrix C = (A over B)."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .det import determinant, minors
from .graded import _SubmoduleDegrees, _gens_by_degree, quotient_module
from .groebner import ModulePresentation
from .ideal import Ideal, codimension, colon, ideal_power
from .spaces import GradedFreeModule


def hilbert_burch_minors(A):
    """Signed maximal minors (Delta_0, -Delta_1, ...) of an n x (n+1) matrix; Delta_i omits column i."""
    n = len(A)
    if any(len(row) != n + 1 for row in A):
        raise ValueError("A must be n x (n+1)")
    out = []
    for i in range(n + 1):
        sub = [[row[j] for j in range(n + 1) if j != i] for row in A]
        d = determinant(sub)
        out.append(d if i % 2 == 0 else -d)
    return out


def contraction(delta, B):
    """J_k = sum_i delta_i B[k][i]."""
    ring = delta[0].ring
    J = []
    for row in B:
        f = ring.zero()
        for di, b in zip(delta, row):
            if di and b:
                f = f + di * b
        J.append(f)
    return J


def symmetric_power_presentation(C, u: int, gen_degrees) -> ModulePresentation:
    """Sym^u of coker(C^T), where C is (rows) x (m) and coker C^T has generators T_0..T_{m-1}.

    Each row c of C is the relation sum_i c_i T_i; Sym^u is presented on the
    monomials of degree u in the T_i by (relation) x (monomial of degree u-1).
    """
    ring = C[0][0].ring if C and C[0] else None
    m = len(gen_degrees)
    monos = list(combinations_with_replacement(range(m), u))
    index = {mono: k for k, mono in enumerate(monos)}
    shifts = [sum(gen_degrees[i] for i in mono) for mono in monos]
    lower = list(combinations_with_replacement(range(m), u - 1)) if u >= 1 else []
    cols = []
    for row in C:
        for beta in lower:
            vec = [ring.zero()] * len(monos)
            for i, c in enumerate(row):
                if not c:
                    continue
                mono = tuple(sorted(beta + (i,)))
                k = index[mono]
                vec[k] = vec[k] + c
            if any(vec):
                cols.append(vec)
    return ModulePresentation(ring, len(monos), cols, shifts)


def quotient_hf(A: Ideal, B: Ideal, degrees) -> dict:
    """dim (A/B)_e for B inside A, for each e in degrees."""
    F = GradedFreeModule(A.ring, [0])
    a = _SubmoduleDegrees(F, _gens_by_degree(F, [[g] for g in A.gens]))
    b = _SubmoduleDegrees(F, _gens_by_degree(F, [[g] for g in B.gens]))
    return {e: a.at(e).rank - b.at(e).rank for e in degrees}


def _presentation_hf(pres: ModulePresentation, degrees) -> dict:
    F = GradedFreeModule(pres.ring, pres.row_shifts)
    sub = _SubmoduleDegrees(F, _gens_by_degree(F, pres.columns))
    return {e: F.dim(e) - sub.at(e).rank for e in degrees}


@dataclass
class Codim2Result:
    I: Ideal
    J: Ideal
    C: list
    K: Ideal
    s: int
    codim_K: int
    codim_ok: bool
    K_is_colon: bool | None = None
    geometric: bool | None = None
    hf_comparison: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"s": self.s, "codim_K": self.codim_K, "codim_ok": self.codim_ok,
                "K_is_colon": self.K_is_colon, "geometric": self.geometric,
                "hf_comparison": {str(u): v for u, v in self.hf_comparison.items()}}


def build_residual_matrix_codim2(A, B, us=(), hf_span: int = 6, check_colon: bool = True) -> Codim2Result:
    """I = I_n(A), J = contraction of the signed minors through B, K = I_{n+1}(C).

    When codim K = s the colon J : I is compared with K.  For each u in us the
    Hilbert functions of I^u / J I^(u-1) and Sym^u(coker C^T) are compared
    (over the whole module when R/K is artinian, otherwise on hf_span degrees).
    """
    n = len(A)
    s = len(B)
    if any(len(row) != n + 1 for row in B):
        raise ValueError("B must be s x (n+1)")
    delta = hilbert_burch_minors(A)
    ring = delta[0].ring
    I = Ideal(delta, ring).minimalized()
    J = Ideal(contraction(delta, B), ring)
    C = [list(r) for r in A] + [list(r) for r in B]
    K = Ideal(minors(C, n + 1), ring)
    K = Ideal([f for f in K.gens if f], ring)
    cK = codimension(K)
    res = Codim2Result(I, J, C, K, s, cK, cK == s)
    if not res.codim_ok:
        return res
    if check_colon:
        res.K_is_colon = colon(J, I) == K
    res.geometric = codimension(I + K) >= s + 1
    gen_deg = [d.degree() if d else None for d in delta]
    if any(g is None for g in gen_deg):
        return res
    artinian = cK == ring.n
    for u in us:
        pres = symmetric_power_presentation(C, u, gen_deg)
        num = ideal_power(I, u)
        den = J * ideal_power(I, u - 1) if u > 1 else J
        if artinian:
            F = GradedFreeModule(ring, pres.row_shifts)
            sym = quotient_module(F, None, pres.columns, f"Sym^{u}").hilbert_function()
            from .graded import finite_module
            quo = finite_module(num, den, check_containment=False).hilbert_function()
        else:
            lo = u * min(gen_deg)
            degs = range(lo, lo + hf_span)
            sym = {e: v for e, v in _presentation_hf(pres, degs).items() if v}
            quo = {e: v for e, v in quotient_hf(num, den, degs).items() if v}
        res.hf_comparison[u] = {"I^u/JI^(u-1)": {str(k): v for k, v in quo.items()},
                                "Sym^u": {str(k): v for k, v in sym.items()},
                                "equal": quo == sym}
    return res
