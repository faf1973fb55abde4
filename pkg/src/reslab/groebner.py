"""Buchberger Groebner bases for ideals and submodules of free modules.

Ideal elements and module vectors share one internal form: a dict from an
extended monomial key to a coefficient.  For a free module of rank r the
key of the term m*e_c is ``(r - 1 - c) << cshift | key(m)``, which gives a
position-over-term order with component 0 largest.  An ideal is the case
r = 1.  Only prime fields are supported here.
"""
from __future__ import annotations

import heapq
import logging
import os
from dataclasses import dataclass, field

from .poly import Polynomial
from .ring import MAX_EXPONENT, PolynomialRing, RingMismatch

log = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its pair-count or degree cap."""


@dataclass
class Budget:
    max_pairs: int = 2_000_000
    max_degree: int = 24

    @classmethod
    def default(cls) -> "Budget":
        """Defaults, overridable through RESLAB_BUDGET="max_degree=30,max_pairs=1000"."""
        b = cls()
        spec = os.environ.get("RESLAB_BUDGET", "")
        for part in filter(None, (s.strip() for s in spec.split(","))):
            name, _, value = part.partition("=")
            name = name.strip()
            if name not in ("max_pairs", "max_degree"):
                raise ValueError(f"unknown budget field {name!r}")
            setattr(b, name, int(value))
        if b.max_degree > MAX_EXPONENT:
            raise ValueError(f"max_degree above {MAX_EXPONENT} is not supported")
        return b


_current_budget: Budget | None = None


def get_budget() -> Budget:
    return _current_budget or Budget.default()


def set_budget(b: Budget | None) -> None:
    global _current_budget
    _current_budget = b


def _require_prime(ring: PolynomialRing):
    if not ring.is_prime_field:
        raise NotImplementedError("Groebner engine works over prime fields only")


class _Engine:
    """Buchberger with sugar selection and Gebauer-Moeller pruning."""

    def __init__(self, ring: PolynomialRing, rank: int = 1, shifts=None, budget=None):
        _require_prime(ring)
        self.ring = ring
        self.p = ring.p
        self.rank = rank
        self.shifts = list(shifts) if shifts is not None else [0] * rank
        self.cshift = ring.key_bits + 1
        self.tmask = (1 << self.cshift) - 1
        self.budget = budget or get_budget()
        self.polys: list[list] = []      # (key, coeff) lists, descending, monic
        self.leads: list[int] = []
        self.sugar: list[int] = []
        self.by_comp: dict[int, list] = {}
        self.active: list[int] = []
        self.pairs: list = []
        self.live: set = set()
        self.npairs = 0
        self._lcm_cache: dict = {}

    # keys ------------------------------------------------------------------
    def comp(self, k: int) -> int:
        return self.rank - 1 - (k >> self.cshift)

    def term(self, k: int) -> int:
        return k & self.tmask

    def kdeg(self, k: int) -> int:
        return self.ring.degree_of_key(k & self.tmask) + self.shifts[self.comp(k)]

    def lcm(self, a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        v = self._lcm_cache.get(key)
        if v is None:
            ring = self.ring
            ta, tb = a & self.tmask, b & self.tmask
            v = (a - ta) + ring.lcm_key(ta, tb)
            self._lcm_cache[key] = v
        return v

    def divides(self, a: int, b: int) -> bool:
        if (a >> self.cshift) != (b >> self.cshift):
            return False
        return self.ring.divides(a & self.tmask, b & self.tmask)

    # reduction -------------------------------------------------------------
    def find_reducer(self, k: int):
        lst = self.by_comp.get(k >> self.cshift)
        if not lst:
            return None
        ring = self.ring
        g = ring.guard
        pk = ring.packed(k & self.tmask) | g
        for pl, idx in lst:
            if ((pk - pl) & g) == g:
                return idx
        return None

    def reduce(self, f: dict, full: bool = True) -> dict:
        """Normal form of f (consumed) modulo the current elements."""
        p = self.p
        heap = [-k for k in f]
        heapq.heapify(heap)
        rem = {}
        polys, leads = self.polys, self.leads
        while heap:
            k = -heapq.heappop(heap)
            c = f.pop(k, 0)
            if not c:
                continue
            idx = self.find_reducer(k)
            if idx is None:
                rem[k] = c
                if not full:
                    for kk in f:
                        rem[kk] = f[kk]
                    break
                continue
            sh = k - leads[idx]
            it = iter(polys[idx])
            next(it)
            for gk, gc in it:
                nk = gk + sh
                v = f.get(nk)
                if v is None:
                    f[nk] = (-c * gc) % p
                    heapq.heappush(heap, -nk)
                else:
                    v = (v - c * gc) % p
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
        return rem

    # basis maintenance ---------------------------------------------------
    def _add(self, f: dict, sugar: int) -> int:
        keys = sorted(f, reverse=True)
        lead = keys[0]
        inv = pow(f[lead], -1, self.p)
        p = self.p
        terms = [(k, f[k] * inv % p) for k in keys]
        idx = len(self.polys)
        self.polys.append(terms)
        self.leads.append(lead)
        self.sugar.append(sugar)
        pl = self.ring.packed(lead & self.tmask)
        self.by_comp.setdefault(lead >> self.cshift, []).append((pl, idx))
        return idx

    def _pair_sugar(self, i: int, j: int, L: int) -> int:
        dl = self.kdeg(L)
        return max(self.sugar[i] + dl - self.kdeg(self.leads[i]),
                   self.sugar[j] + dl - self.kdeg(self.leads[j]))

    def _update(self, h: int):
        leads = self.leads
        lh = leads[h]
        ideal = self.rank == 1
        ring = self.ring

        def coprime(a, b):
            return ideal and self.lcm(a, b) == a + b

        C = [i for i in self.active if (leads[i] >> self.cshift) == (lh >> self.cshift)]
        D = []
        while C:
            i = C.pop(0)
            Li = self.lcm(leads[i], lh)
            if coprime(leads[i], lh) or not any(
                    self.divides(self.lcm(leads[j], lh), Li) for j in C + D):
                D.append(i)
        E = [i for i in D if not coprime(leads[i], lh)]
        # prune old pairs
        dead = []
        for pr in self.live:
            a, b, L = pr
            if (self.divides(lh, L) and self.lcm(leads[a], lh) != L
                    and self.lcm(leads[b], lh) != L):
                dead.append(pr)
        for pr in dead:
            self.live.discard(pr)
        for i in E:
            L = self.lcm(leads[i], lh)
            pr = (i, h, L)
            self.live.add(pr)
            heapq.heappush(self.pairs, (self._pair_sugar(i, h, L), L, i, h))
        self.active = [g for g in self.active if not self.divides(lh, leads[g])] + [h]
        del ring

    def insert(self, f: dict, sugar: int):
        h = self._add(f, sugar)
        self._update(h)

    def spoly(self, i: int, j: int, L: int) -> dict:
        p = self.p
        f = {}
        si = L - self.leads[i]
        for k, c in self.polys[i][1:]:
            f[k + si] = c
        sj = L - self.leads[j]
        for k, c in self.polys[j][1:]:
            nk = k + sj
            v = (f.get(nk, 0) - c) % p
            if v:
                f[nk] = v
            else:
                f.pop(nk, None)
        return f

    def run(self, inputs):
        """inputs: list of (dict, sugar)."""
        inputs = [(f, s) for f, s in inputs if f]
        inputs.sort(key=lambda fs: (fs[1], max(fs[0])))
        for f, s in inputs:
            f = self.reduce(dict(f))
            if f:
                self.insert(f, s)
        bud = self.budget
        while self.pairs:
            sug, L, i, j = heapq.heappop(self.pairs)
            if (i, j, L) not in self.live:
                continue
            self.live.discard((i, j, L))
            if sug > bud.max_degree:
                raise BudgetExceeded(f"S-pair degree {sug} exceeds cap {bud.max_degree}")
            self.npairs += 1
            if self.npairs > bud.max_pairs:
                raise BudgetExceeded(f"more than {bud.max_pairs} S-pairs")
            h = self.reduce(self.spoly(i, j, L))
            if h:
                self.insert(h, sug)
        return self.reduced_basis()

    def reduced_basis(self) -> list:
        """Reduced basis as (key, coeff) lists sorted by leading key ascending."""
        leads = self.leads
        act = sorted(set(self.active), key=lambda i: leads[i])
        minimal = [i for i in act
                   if not any(j != i and self.divides(leads[j], leads[i]) for j in act)]
        # reducer table restricted to the minimal elements
        sub = _Engine(self.ring, self.rank, self.shifts, self.budget)
        for i in minimal:
            sub.polys.append(self.polys[i])
            sub.leads.append(leads[i])
            sub.sugar.append(self.sugar[i])
            pl = self.ring.packed(leads[i] & self.tmask)
            sub.by_comp.setdefault(leads[i] >> self.cshift, []).append((pl, len(sub.polys) - 1))
        out = []
        for pos, i in enumerate(minimal):
            terms = self.polys[i]
            tail = sub.reduce({k: c for k, c in terms[1:]})
            keys = sorted(tail, reverse=True)
            out.append([terms[0]] + [(k, tail[k]) for k in keys])
        return out


# ---------------------------------------------------------------------------
# public API for ideals

def _sugar_of(ring, poly: Polynomial) -> int:
    return poly.degree()


class GroebnerBasis:
    """Reduced Groebner basis of an ideal."""

    def __init__(self, ring: PolynomialRing, polys: list):
        self.ring = ring
        self.order = ring.order
        self.gens = polys
        self.reduced = True
        self._engine = None

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.gens]})"

    def leading_keys(self) -> list:
        return [g.leading_key() for g in self.gens]

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.gens)

    def _table(self):
        if self._engine is None:
            e = _Engine(self.ring)
            for g in self.gens:
                e._add(dict(g.keyed), g.degree())
            self._engine = e
        return self._engine

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatch("polynomial and basis live in different rings")
        if not f:
            return f
        rem = self._table().reduce(dict(f.keyed))
        return Polynomial(self.ring, {k: rem[k] for k in sorted(rem, reverse=True)}, True)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)


def groebner_basis(gens, ring: PolynomialRing | None = None, budget: Budget | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens in ring's order."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch("generators live in different rings")
    eng = _Engine(ring, budget=budget)
    basis = eng.run([(dict(g.keyed), g.degree()) for g in gens if g])
    polys = [Polynomial(ring, dict(t), True) for t in basis]
    return GroebnerBasis(ring, polys)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


def eliminate(gens, drop, budget: Budget | None = None):
    """Generators of (gens) intersected with k[remaining variables].

    drop is a set of variable indices.  Returns (ring of remaining variables,
    list of polynomials there).
    """
    gens = [g for g in gens]
    if not gens:
        raise ValueError("empty generator list")
    ring = gens[0].ring
    drop = sorted(set(drop))
    keep = [i for i in range(ring.n) if i not in drop]
    if not keep:
        raise ValueError("cannot eliminate every variable")
    names = [ring.names[i] for i in drop] + [ring.names[i] for i in keep]
    big = PolynomialRing(names, ring.field, f"elim({len(drop)})")
    perm = drop + keep
    images = [None] * ring.n
    for newpos, old in enumerate(perm):
        images[old] = big.gen(newpos)
    moved = [g.substitute(images, big) for g in gens]
    gb = groebner_basis(moved, big, budget)
    small = PolynomialRing([ring.names[i] for i in keep], ring.field)
    back = [small.zero()] * len(drop) + small.gens()
    out = []
    b = len(drop)
    for g in gb.gens:
        if all(big.exponents(k)[:b] == (0,) * b for k in g.keyed):
            out.append(g.substitute(back, small))
    return small, out


# ---------------------------------------------------------------------------
# modules


@dataclass
class ModulePresentation:
    """A matrix over R given by columns; presents coker(columns) when used as relations.

    rank is the rank of the ambient free module F_0 = sum_c R(-row_shifts[c]).
    """

    ring: PolynomialRing
    rank: int
    columns: list = field(default_factory=list)
    row_shifts: list | None = None

    def __post_init__(self):
        if self.row_shifts is None:
            self.row_shifts = [0] * self.rank
        for col in self.columns:
            if len(col) != self.rank:
                raise ValueError("column length differs from module rank")

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j][i]

    def column_degree(self, j: int):
        """Degree of column j w.r.t. row shifts (None for a zero column)."""
        for c, f in enumerate(self.columns[j]):
            if f:
                return f.degree() + self.row_shifts[c]
        return None

    def column_shifts(self) -> list:
        return [self.column_degree(j) for j in range(self.ncols)]

    def is_homogeneous(self) -> bool:
        for j, col in enumerate(self.columns):
            d = self.column_degree(j)
            for c, f in enumerate(col):
                if f and (not f.is_homogeneous() or f.degree() + self.row_shifts[c] != d):
                    return False
        return True

    def matrix(self) -> list:
        """Row-major list of lists."""
        return [[self.columns[j][i] for j in range(self.ncols)] for i in range(self.rank)]


def _vec_to_dict(eng: _Engine, vec) -> dict:
    out = {}
    r = eng.rank
    for c, f in enumerate(vec):
        if f:
            base = (r - 1 - c) << eng.cshift
            for k, v in f.keyed.items():
                out[base + k] = v
    return out


def _dict_to_vec(eng: _Engine, d, ring, rank, offset=0) -> list:
    parts: list[dict] = [dict() for _ in range(rank)]
    for k, v in d.items():
        c = eng.comp(k) - offset
        parts[c][eng.term(k)] = v
    return [Polynomial(ring, {k: p[k] for k in sorted(p, reverse=True)}, True) for p in parts]


def _vec_degree(vec, shifts):
    for c, f in enumerate(vec):
        if f:
            return f.degree() + shifts[c]
    return 0


def module_groebner(vectors, ring, rank, shifts=None, budget=None) -> list:
    """Reduced POT Groebner basis of a submodule of R^rank (list of vectors)."""
    shifts = list(shifts) if shifts is not None else [0] * rank
    eng = _Engine(ring, rank, shifts, budget)
    inputs = [(_vec_to_dict(eng, v), _vec_degree(v, shifts)) for v in vectors]
    basis = eng.run(inputs)
    return [_dict_to_vec(eng, dict(t), ring, rank) for t in basis]


def syzygy_gb(vectors, ring, rank, shifts=None, budget=None) -> list:
    """Groebner basis (as vectors in R^m) of the syzygies of the given vectors of R^rank."""
    shifts = list(shifts) if shifts is not None else [0] * rank
    m = len(vectors)
    vdeg = [_vec_degree(v, shifts) for v in vectors]
    total = rank + m
    eng = _Engine(ring, total, shifts + vdeg, budget)
    inputs = []
    one = ring.one()
    zero = ring.zero()
    for i, v in enumerate(vectors):
        aug = list(v) + [zero] * m
        aug[rank + i] = one
        inputs.append((_vec_to_dict(eng, aug), vdeg[i]))
    basis = eng.run(inputs)
    out = []
    for t in basis:
        lead = t[0][0]
        if eng.comp(lead) >= rank:
            d = dict(t)
            out.append(_dict_to_vec(eng, d, ring, m, offset=rank))
    return out, vdeg


def syzygy_module(gens, ring=None, shifts=None, rank=None, budget=None) -> ModulePresentation:
    """First syzygies of gens (polynomials, or vectors when rank is given).

    For homogeneous input the columns are a minimal generating set.
    """
    from .minimize import minimal_columns
    if rank is None:
        gens = [g for g in gens]
        if ring is None:
            ring = gens[0].ring
        vectors = [[g] for g in gens]
        rank = 1
        shifts = [0]
    else:
        vectors = [list(v) for v in gens]
    syz, vdeg = syzygy_gb(vectors, ring, rank, shifts, budget)
    pres = ModulePresentation(ring, len(vectors), syz, vdeg)
    if pres.is_homogeneous():
        pres = minimal_columns(pres)
    return pres
