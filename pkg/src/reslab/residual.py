"""Residual intersections K = J : I, their hypotheses, and the duality checks."""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .fitting import check_Gs
from .graded import (HomModule, ProductTable, finite_module, graded_hom, is_isomorphic,
                     multiplication_map, socle)
from .ideal import (Ideal, codimension, colon, ideal_power, intersect, is_unit_codim,
                    maximal_ideal, saturate, unit_ideal)
from .linalg import matmul
from .poly import Polynomial
from .ring import PolynomialRing
from .resolution import depth_via_AB, has_depth_zero, matlis_canonical
from .seeding import generator, random_coefficients

log = logging.getLogger(__name__)

MAX_RETRIES = 8


class SetupError(ValueError):
    pass


# ---------------------------------------------------------------------------
# general elements


def general_elements(I: Ideal, s: int, delta, seed: int, label: str = "J", attempt: int = 0) -> Ideal:
    """s random homogeneous elements of I of degree delta (an int or a list of s ints).

    Each is a random combination of all products (monomial x generator) of
    the right degree, so it lies in I by construction.
    """
    ring = I.ring
    degs = [delta] * s if isinstance(delta, int) else list(delta)
    if len(degs) != s:
        raise ValueError("need one degree per element")
    rng = generator(seed, label, attempt)
    out = []
    for d in degs:
        prods = []
        for g in I.gens:
            e = d - g.degree()
            if e < 0:
                continue
            for k in ring.monomials(e):
                prods.append(g.shift(k, 1))
        if not prods:
            raise ValueError(f"I has no elements of degree {d}")
        c = random_coefficients(rng, ring.p, len(prods))
        f = ring.zero()
        for ci, pr in zip(c, prods):
            f = f + pr * int(ci)
        if not f:
            raise ValueError("random combination vanished")
        out.append(f)
    return Ideal(out, ring)


# ---------------------------------------------------------------------------
# setups


@dataclass
class ResidualSetup:
    ring: PolynomialRing
    I: Ideal
    J: Ideal
    K: Ideal
    s: int
    g: int
    t: int
    degrees: list
    codim_K: int
    is_residual: bool
    is_geometric: bool
    standard_hyp: bool | None = None
    strong_hyp: bool | None = None
    gs: object = None
    depths: dict = field(default_factory=dict)
    seed: int | None = None
    retries: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.ring.n

    @property
    def socle_degree(self) -> int:
        """D = sum (delta_i - 1)."""
        return sum(e - 1 for e in self.degrees)

    def summary(self) -> dict:
        return {
            "variables": list(self.ring.names),
            "I": [str(f) for f in self.I.gens],
            "J": [str(f) for f in self.J.gens],
            "K": [str(f) for f in self.K.gens],
            "s": self.s, "g": self.g, "t": self.t, "d": self.d,
            "degrees": list(self.degrees),
            "codim_K": self.codim_K,
            "is_residual": self.is_residual,
            "is_geometric": self.is_geometric,
            "standard_hyp": self.standard_hyp,
            "strong_hyp": self.strong_hyp,
            "G_s": None if self.gs is None else {
                "holds": self.gs.holds,
                "first_failing_level": self.gs.first_failing_level,
                "fitting_codims": {str(k): v for k, v in self.gs.codims.items()},
            },
            "depths": {str(k): v for k, v in self.depths.items()},
            "seed": self.seed,
            "retries": list(self.retries),
        }


def depth_at_least(A: Ideal, bound: int):
    """(depth R/A >= bound, depth value or None).  depth 0 is detected by a colon."""
    if bound <= 0:
        return True, None
    if has_depth_zero(A):
        return False, 0
    dep = depth_via_AB(A)
    return dep >= bound, dep


def check_hypotheses(I: Ideal, s: int, t: int, strong: bool = True):
    """(G_s result, standard, strong, depths) for I and s."""
    gs = check_Gs(I, s)
    dim_RI = I.ring.n - codimension(I)
    depths = {}
    standard = gs.holds
    top = t + 1 if strong else t
    strong_ok = None
    power = unit_ideal(I.ring)
    for j in range(1, top + 1):
        power = power * I if j > 1 else I
        bound = dim_RI - j + 1
        ok, dep = depth_at_least(power, bound)
        depths[j] = {"bound": bound, "holds": ok, "depth": dep}
        if j <= t:
            standard = standard and ok
        else:
            strong_ok = ok
    strong_flag = standard and (strong_ok if strong_ok is not None else True)
    return gs, standard, strong_flag, depths


def make_setup(I: Ideal, J: Ideal, seed: int | None = None, hypotheses: bool = True) -> ResidualSetup:
    """Compute K = J : I and all flags for J inside I."""
    ring = I.ring
    if J.ring != ring:
        raise SetupError("I and J live in different rings")
    if not J.is_subset(I):
        raise SetupError("J is not contained in I")
    s = len(J.gens)
    g = codimension(I)
    t = s - g
    if t < 0:
        raise SetupError(f"s = {s} is below codim I = {g}")
    K = colon(J, I)
    cK = codimension(K)
    proper = not is_unit_codim(K, cK)
    is_residual = proper and cK >= s
    is_geom = False
    if is_residual:
        cIK = codimension(I + K)
        is_geom = cIK >= s + 1
    setup = ResidualSetup(ring, I, J, K, s, g, t, [f.degree() for f in J.gens], cK,
                          is_residual, is_geom, seed=seed)
    if hypotheses:
        gs, std, strong, depths = check_hypotheses(I, s, t)
        setup.gs, setup.standard_hyp, setup.strong_hyp, setup.depths = gs, std, strong, depths
    return setup


def general_setup(I: Ideal, s: int, delta, seed: int, hypotheses: bool = True) -> ResidualSetup:
    """J = s general elements of degree delta; retried (up to 8 times) until codim K >= s."""
    retries = []
    for attempt in range(MAX_RETRIES):
        J = general_elements(I, s, delta, seed, attempt=attempt)
        st = make_setup(I, J, seed=seed, hypotheses=False)
        if st.is_residual:
            if hypotheses:
                gs, std, strong, depths = check_hypotheses(I, s, st.t)
                st.gs, st.standard_hyp, st.strong_hyp, st.depths = gs, std, strong, depths
            st.retries = retries
            st.notes["attempt"] = attempt
            return st
        msg = f"attempt {attempt}: codim K = {st.codim_K} < s = {s}"
        log.info("general elements retry: %s", msg)
        retries.append(msg)
    raise SetupError(f"no residual intersection after {MAX_RETRIES} attempts: {retries}")


# ---------------------------------------------------------------------------
# slicing


def _slice_map(ring: PolynomialRing, keep: int, rng):
    """Substitution killing d - keep general linear forms: x_j -> sum_i c_ji x_i for j >= keep."""
    small = PolynomialRing(ring.names[:keep], ring.field, ring.order)
    images = [small.gen(i) for i in range(keep)]
    for _ in range(keep, ring.n):
        c = random_coefficients(rng, ring.p, keep)
        f = small.zero()
        for i in range(keep):
            f = f + small.gen(i) * int(c[i])
        images.append(f)
    return small, images


def artinian_slice(setup: ResidualSetup, seed: int, hypotheses: bool = True) -> ResidualSetup:
    """Cut down by d - s general linear forms so that R/K becomes artinian.

    The slice is verified (codim K' = s, G_s for the image of I), retried with
    a new stream on failure.
    """
    ring = setup.ring
    s = setup.s
    if ring.n == s:
        return setup
    if ring.n < s:
        raise SetupError("more generators than variables")
    retries = []
    for attempt in range(MAX_RETRIES):
        rng = generator(seed, "slice", attempt)
        small, images = _slice_map(ring, s, rng)
        I2 = Ideal([f.substitute(images, small) for f in setup.I.gens], small).minimalized()
        J2 = Ideal([f.substitute(images, small) for f in setup.J.gens], small)
        if any(not f for f in J2.gens) or len(J2.gens) != s:
            retries.append(f"attempt {attempt}: a generator of J vanished")
            continue
        st = make_setup(I2, J2, seed=seed, hypotheses=False)
        reasons = []
        if st.codim_K != s or not st.is_residual:
            reasons.append(f"codim K' = {st.codim_K}")
        if st.g != setup.g:
            reasons.append(f"codim I' = {st.g}")
        gs = check_Gs(I2, s)
        if not gs.holds:
            reasons.append(f"G_s fails at level {gs.first_failing_level}")
        if reasons:
            msg = f"attempt {attempt}: " + ", ".join(reasons)
            log.info("slice retry: %s", msg)
            retries.append(msg)
            continue
        K_image = Ideal([f.substitute(images, small) for f in setup.K.gens], small)
        st.notes["image_of_K_matches"] = K_image == st.K
        st.notes["slice_images"] = [str(f) for f in images[s:]]
        st.notes["parent_standard_hyp"] = setup.standard_hyp
        st.notes["parent_strong_hyp"] = setup.strong_hyp
        if hypotheses:
            _, std, strong, depths = check_hypotheses(I2, s, st.t)
            st.gs, st.standard_hyp, st.strong_hyp, st.depths = gs, std, strong, depths
        st.retries = setup.retries + retries
        return st
    raise SetupError(f"slice failed after {MAX_RETRIES} attempts: {retries}")


# ---------------------------------------------------------------------------
# intersection lemma


def check_intersection_lemma(setup: ResidualSetup, u: int) -> bool:
    """I^u cap K == J I^(u-1)."""
    if u < 1:
        raise ValueError("u must be at least 1")
    I, J, K = setup.I, setup.J, setup.K
    lhs = intersect(ideal_power(I, u), K)
    rhs = J * ideal_power(I, u - 1) if u > 1 else J
    return lhs == rhs


# ---------------------------------------------------------------------------
# duality


class ModuleFamily:
    """The modules I^u / J I^(u-1) (u >= 1) and R/K (u = 0) of an artinian setup."""

    def __init__(self, setup: ResidualSetup):
        self.setup = setup
        self._powers = {0: unit_ideal(setup.ring), 1: setup.I}
        self._mods = {}
        self.table = ProductTable(setup.ring)

    def power(self, u: int) -> Ideal:
        if u not in self._powers:
            self._powers[u] = self.power(u - 1) * self.setup.I
        return self._powers[u]

    def module(self, u: int):
        if u not in self._mods:
            st = self.setup
            if u == 0:
                M = finite_module(unit_ideal(st.ring), st.K, "R/K", check_containment=False)
            else:
                den = st.J if u == 1 else st.J * self.power(u - 1)
                label = "I/J" if u == 1 else f"I^{u}/JI^{u - 1}"
                M = finite_module(self.power(u), den, label, check_containment=False)
            self._mods[u] = M
        return self._mods[u]


@dataclass
class PairingReport:
    u: int
    hf_A: dict
    hf_B: dict
    hf_C: dict
    D: int
    complementary: bool
    rank_table: list
    rank_verdict: str                 # perfect | fails | inapplicable
    rank_failure: tuple | None
    hom_verdict: bool | None
    hom_detail: dict
    verdict: str                      # perfect | fails
    omega_verdict: bool | None = None  # some perfect pairing A x B -> omega(-D) exists
    seconds: float = 0.0
    seed: int | None = None

    def as_dict(self) -> dict:
        return {
            "u": self.u,
            "hf_A": {str(k): v for k, v in self.hf_A.items()},
            "hf_B": {str(k): v for k, v in self.hf_B.items()},
            "hf_C": {str(k): v for k, v in self.hf_C.items()},
            "D": self.D,
            "complementary": self.complementary,
            "rank_table": [list(r) for r in self.rank_table],
            "rank_verdict": self.rank_verdict,
            "rank_failure": None if self.rank_failure is None else list(self.rank_failure),
            "hom_verdict": self.hom_verdict,
            "hom_detail": self.hom_detail,
            "verdict": self.verdict,
            "omega_verdict": self.omega_verdict,
        }


def _pairing_ranks(A, B, C, D, table):
    """Per-degree ranks of A_e x B_{D-e} -> C_D (C_D one-dimensional)."""
    p = A.p
    rows = []
    failure = None
    degs = sorted(set(A.dims) | {D - f for f in B.dims})
    for e in degs:
        da, db = A.dim(e), B.dim(D - e)
        if da and db:
            T = multiplication_map(A, B, C, e, D - e, table)[:, :, 0]
            r = linalg.rank(T, p)
        else:
            r = 0
        rows.append((e, da, db, r))
        if failure is None and not (da == db == r):
            failure = (e, max(da, db) - r)
    return rows, failure


def multiplication_hom_test(A, B, C, table, hom: HomModule | None = None):
    """Is a -> (b -> ab) an isomorphism A -> Hom_R(B, C) of degree 0?"""
    p = A.p
    if hom is None:
        hom = graded_hom(B, C)
    detail = {"hom_hf": {str(k): v for k, v in hom.hilbert_function().items()}}
    ok = True
    bad = []
    for e in sorted(set(A.dims) | set(hom.dims)):
        da, dh = A.dim(e), hom.dim(e)
        if da != dh:
            ok = False
            bad.append([e, "dimension", da, dh])
            continue
        if not da:
            continue
        rows = []
        for i in range(da):
            maps = {}
            for f in B.degrees():
                if not B.dim(f):
                    continue
                if C.dim(e + f):
                    T = multiplication_map(A, B, C, e, f, table)
                    maps[f] = T[i].T
            rows.append(hom.flatten(maps, e))
        rows = np.array(rows, np.int64)
        ech = hom.echelon(e)
        if not ech.contains(rows):
            ok = False
            bad.append([e, "not a module map"])
            continue
        r = linalg.rank(ech.coordinates(rows), p)
        if r != da:
            ok = False
            bad.append([e, "rank", r, da])
    detail["failures"] = bad
    return ok, detail


def omega_pairing_exists(A, B, D: int, rng=None) -> bool:
    """A perfect pairing A x B -> omega(-D) exists iff A = Hom(B, omega)(-D) = B^dual(-D)."""
    if any(A.dim(e) != B.dim(D - e) for e in set(A.dims) | {D - f for f in B.dims}):
        return False
    _, ok = is_isomorphic(A, B.dual(), rng=rng, shifts=[-D])
    return ok


def pairing_report(fam: ModuleFamily, u: int, rank_test: bool = True, hom_test: bool = True,
                   omega_test: bool = True) -> PairingReport:
    t0 = time.perf_counter()
    st = fam.setup
    t = st.t
    D = st.socle_degree
    A, B, C = fam.module(u), fam.module(t + 1 - u), fam.module(t + 1)
    hfA, hfB, hfC = A.hilbert_function(), B.hilbert_function(), C.hilbert_function()
    comp = all(A.dim(e) == B.dim(D - e) for e in set(A.dims) | {D - f for f in B.dims})
    rank_table, failure = [], None
    if not rank_test:
        rank_verdict = "skipped"
    elif C.dim(D) != 1:
        rank_verdict = "inapplicable"
    else:
        rank_table, failure = _pairing_ranks(A, B, C, D, fam.table)
        rank_verdict = "perfect" if failure is None else "fails"
    hom_ok, detail = (None, {})
    if hom_test:
        hom_ok, detail = multiplication_hom_test(A, B, C, fam.table)
    ok = rank_verdict in ("perfect", "inapplicable", "skipped") and (hom_ok is not False)
    if rank_verdict == "inapplicable" and hom_ok is None:
        ok = False
    omega_ok = omega_pairing_exists(A, B, D, np.random.default_rng(u)) if omega_test else None
    return PairingReport(u, hfA, hfB, hfC, D, comp, rank_table, rank_verdict, failure, hom_ok,
                         detail, "perfect" if ok else "fails", omega_ok, time.perf_counter() - t0, st.seed)


def require_artinian(setup: ResidualSetup):
    if setup.codim_K != setup.ring.n:
        raise SetupError("R/K is not artinian; slice the setup first")


def duality_suite(setup: ResidualSetup, us=None, rank_test: bool = True, hom_test: bool = True,
                  family: ModuleFamily | None = None, omega_test: bool = True) -> list:
    """PairingReport for each u in 0..t+1 (or the given us)."""
    require_artinian(setup)
    fam = family or ModuleFamily(setup)
    if us is None:
        us = range(0, setup.t + 2)
    return [pairing_report(fam, u, rank_test, hom_test, omega_test) for u in us]


def duality_window(t: int, g: int, w: int):
    """(v, epsilon, [lo, hi]) for G_w = G_{g+v}; the window is empty when v < (t-1)/2."""
    from fractions import Fraction
    v = w - g
    eps = Fraction(v) - Fraction(t - 1, 2)
    mid = Fraction(t + 1, 2)
    lo, hi = mid - eps, mid + eps
    valid = Fraction(t - 1, 2) <= v <= t
    us = [u for u in range(0, t + 2) if lo <= u <= hi] if valid else []
    return {"v": v, "epsilon": str(eps), "bounds": [str(lo), str(hi)], "hypothesis_range_ok": valid, "window": us}


def omega_duality(fam: ModuleFamily, u: int, rng=None) -> dict:
    """Compare I^u/JI^(u-1) with Hom_R(I^(t+1-u)/JI^(t-u), omega) twisted by -D."""
    st = fam.setup
    w = matlis_canonical(st.K)
    A, B = fam.module(u), fam.module(st.t + 1 - u)
    H = graded_hom(B, w)
    e, ok = is_isomorphic(A, H, rng=rng, shifts=[-st.socle_degree])
    return {"u": u, "hom_hf": {str(k): v for k, v in H.hilbert_function().items()}, "isomorphic": ok}


def canonical_comparison(fam: ModuleFamily, rng=None) -> dict:
    """I^(t+1)/JI^t (D) versus omega_{R/K}: Hilbert functions and an isomorphism search."""
    st = fam.setup
    C = fam.module(st.t + 1)
    w = matlis_canonical(st.K)
    D = st.socle_degree
    hfC = C.twist(D).hilbert_function()
    hfw = w.hilbert_function()
    same = hfC == hfw
    iso = False
    if same:
        _, iso = is_isomorphic(C, w, rng=rng, shifts=[-D])
    return {"hf_C_twisted": {str(k): v for k, v in hfC.items()},
            "hf_omega": {str(k): v for k, v in hfw.items()},
            "hf_match": same, "isomorphic": iso}


def rees_truncation_check(setup: ResidualSetup, family: ModuleFamily | None = None, rng=None,
                          reports: list | None = None) -> dict:
    """Gorenstein test for R/K + I/J + ... + I^(t+1)/JI^t via its three conditions.

    (1) holds for artinian R/K; (2) the top piece is isomorphic to omega up to
    the twist D; (3) every multiplication pairing is perfect.
    """
    require_artinian(setup)
    fam = family or ModuleFamily(setup)
    cond2 = canonical_comparison(fam, rng)
    if reports is None:
        reports = duality_suite(setup, family=fam)
    cond3 = all(r.verdict == "perfect" for r in reports)
    return {"artinian": True, "top_is_canonical": cond2, "pairings_perfect": cond3,
            "pairings": {str(r.u): r.verdict for r in reports},
            "gorenstein": bool(cond2["isomorphic"] and cond3)}


# ---------------------------------------------------------------------------
# simple socle


def local_cohomology_zero(A: Ideal):
    """H^0_m(R/A) = sat(A)/A as a finite-length module."""
    sat = saturate(A)
    return finite_module(sat, A, "H0", check_containment=False), sat


def simple_socle_check(setup: ResidualSetup) -> dict:
    """Socle of H^0_m(R / J I^t) for s = d; the verdict is dimension 1."""
    if setup.s != setup.ring.n:
        raise SetupError("simple socle check needs s = d")
    A = setup.J * ideal_power(setup.I, setup.t) if setup.t else setup.J
    H, _ = local_cohomology_zero(A)
    soc = socle(H)
    dims = {str(k): v for k, v in soc.module.dims.items()}
    return {"h0_hf": {str(k): v for k, v in H.hilbert_function().items()},
            "socle_dims": dims, "socle_dim": soc.dim(), "simple": soc.dim() == 1}
