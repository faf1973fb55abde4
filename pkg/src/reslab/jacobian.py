"""Jacobian determinants and their position relative to socles."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .det import determinant
from .graded import finite_module, socle
from .ideal import Ideal, codimension, colon, ideal_power, maximal_ideal, saturate
from .poly import Polynomial


class CharacteristicError(ValueError):
    pass


def jacobian_matrix(forms):
    forms = list(forms)
    if not forms:
        raise ValueError("no forms")
    ring = forms[0].ring
    if len(forms) != ring.n:
        raise ValueError(f"need {ring.n} forms for {ring.n} variables, got {len(forms)}")
    return [[f.derivative(j) for j in range(ring.n)] for f in forms]


def jacobian_determinant(forms) -> Polynomial:
    return determinant(jacobian_matrix(forms))


def check_jacformula(G: Polynomial, F) -> bool:
    """delta * det Jac(G F) == (delta + gamma) * G^d * det Jac(F), forms of F of one degree."""
    F = list(F)
    ring = G.ring
    d = ring.n
    delta = F[0].degree()
    if any(f.degree() != delta or not f.is_homogeneous() for f in F):
        raise ValueError("F must consist of forms of one degree")
    if not G.is_homogeneous():
        raise ValueError("G must be homogeneous")
    gamma = G.degree()
    lhs = jacobian_determinant([G * f for f in F]) * delta
    rhs = (G ** d) * jacobian_determinant(F) * (delta + gamma)
    return lhs == rhs


def _check_char(ring, values):
    p = ring.p
    for v in values:
        if v % p == 0:
            raise CharacteristicError(f"{v} vanishes in characteristic {p}")


def socle_quotient(A: Ideal):
    """(A : m) / A, the socle of R/A, as a finite-length module."""
    return finite_module(colon(A, maximal_ideal(A.ring)), A, "soc", check_containment=False)


@dataclass
class SocleVerdict:
    nonzero: bool
    annihilated: bool
    socle_dim: int
    generates: bool
    scalar_check: bool | None = None

    def __bool__(self):
        return self.generates


def g1_socle_check(G: Polynomial, F) -> SocleVerdict:
    """Is the socle of R/(G^d F) generated by det Jac(G F)?"""
    F = list(F)
    ring = G.ring
    d = ring.n
    delta = F[0].degree()
    gamma = G.degree()
    _check_char(ring, [delta, delta + gamma])
    if codimension(Ideal(F, ring)) != d:
        raise ValueError("F is not a regular sequence")
    A = Ideal([(G ** d) * f for f in F], ring)
    jac = jacobian_determinant([G * f for f in F])
    nonzero = not A.contains(jac)
    ann = all(A.contains(jac * v) for v in ring.gens())
    S = socle_quotient(A)
    dim = S.length()
    gen = nonzero and ann and dim == 1
    # the proof's scalar: det Jac(GF) = (delta+gamma)/delta G^d det Jac(F)
    other = (G ** d) * jacobian_determinant(F)
    scal = A.contains(jac * delta - other * (delta + gamma))
    return SocleVerdict(nonzero, ann, dim, gen, scal)


def jacobian_containment_check(setup) -> dict:
    """Where det Jac(J) sits for s = d and forms of one degree delta.

    Verdicts: generates_socle (the class spans the simple socle of
    H^0_m(R/JI^t)), lies_in_JIt, or violates.
    """
    ring = setup.ring
    if setup.s != ring.n:
        raise ValueError("needs s = d")
    degs = set(setup.degrees)
    if len(degs) != 1:
        raise ValueError("forms of J must share one degree")
    delta = degs.pop()
    jac = jacobian_determinant(setup.J.gens)
    expect = ring.n * (delta - 1)
    if jac and jac.degree() != expect:
        raise ValueError(f"det Jac has degree {jac.degree()}, expected {expect}")
    A = setup.J * ideal_power(setup.I, setup.t) if setup.t else setup.J
    out = {"det_jac_degree": expect, "det_jac_zero": not jac}
    if A.contains(jac):
        out["verdict"] = "lies_in_JIt"
        return out
    sat = saturate(A)
    H = finite_module(sat, A, "H0", check_containment=False)
    soc = socle(H)
    out["socle_dim"] = soc.dim()
    if not sat.contains(jac):
        out["verdict"] = "violates"
        out["reason"] = "not in H^0"
        return out
    v = H.element(jac, expect)
    in_socle = False
    if soc.dim() and expect in soc.vectors:
        from .linalg import EchelonBasis
        eb = EchelonBasis(H.dim(expect), H.p, soc.vectors[expect])
        in_socle = bool(eb.contains(v))
    out["class_nonzero"] = bool(np.any(v))
    out["in_socle"] = in_socle
    out["verdict"] = "generates_socle" if (in_socle and soc.dim() == 1 and np.any(v)) else "violates"
    return out


def symbolic_power_membership_linear(f: Polynomial, primes, k: int) -> bool:
    """f in the intersection of L^k over primes L generated by linear forms."""
    for L in primes:
        if any(not g.is_homogeneous() or g.degree() != 1 for g in L.gens):
            raise ValueError("primes must be generated by linear forms")
        if not ideal_power(L, k).contains(f):
            return False
    return True


def colon_by_jacobian(F, G) -> tuple:
    """((G^2 F) : det Jac(G F), det Jac(G F)) for two forms in two variables."""
    ring = G.ring
    J = [G * f for f in F]
    jac = jacobian_determinant(J)
    A = Ideal([(G ** (ring.n)) * f for f in F], ring)
    return colon(A, Ideal([jac], ring)), jac
