"""Ideals: arithmetic, intersection, colon, saturation and codimension."""
from __future__ import annotations

from itertools import combinations

from .groebner import GroebnerBasis, groebner_basis
from .minimize import minimal_generators
from .poly import Polynomial
from .ring import PolynomialRing, RingMismatch


class Ideal:
    """An ideal given by generators, with a lazily computed Groebner basis."""

    def __init__(self, gens, ring: PolynomialRing | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("need a ring for the zero ideal")
            ring = gens[0].ring
        gens = [ring(g) for g in gens]
        self.ring = ring
        self.gens = [g for g in gens if g]
        self._gb: GroebnerBasis | None = None
        self._codim = None

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    # basic predicates --------------------------------------------------
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner_basis(self.gens, self.ring)
        return self._gb

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        if any(g.is_constant() for g in self.gens):
            return True
        return self.gb().is_unit()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    @property
    def degrees(self) -> list:
        return [g.degree() for g in self.gens]

    def contains(self, f) -> bool:
        f = self.ring(f)
        if not f:
            return True
        if not self.gens:
            return False
        return self.gb().contains(f)

    def __contains__(self, f):
        return self.contains(f)

    def is_subset(self, other: "Ideal") -> bool:
        self._check(other)
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        self._check(other)
        if self.is_zero() or other.is_zero():
            return self.is_zero() == other.is_zero()
        return [str(g) for g in self.gb()] == [str(g) for g in other.gb()]

    __hash__ = None

    def _check(self, other):
        if other.ring != self.ring:
            raise RingMismatch("ideals live in different rings")

    def normal_form(self, f):
        f = self.ring(f)
        if not self.gens:
            return f
        return self.gb().normal_form(f)

    # arithmetic ----------------------------------------------------------
    def minimalized(self) -> "Ideal":
        """Same ideal with a minimal generating set (homogeneous case)."""
        if not self.is_homogeneous():
            return Ideal([g.monic() for g in self.gens], self.ring)
        out = Ideal([g.monic() for g in minimal_generators(self.gens)], self.ring)
        out._gb = self._gb
        return out

    def __add__(self, other):
        self._check(other)
        return Ideal(self.gens + other.gens, self.ring)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Ideal([g * other for g in self.gens], self.ring)
        self._check(other)
        prods = [a * b for a in self.gens for b in other.gens]
        out = Ideal(prods, self.ring)
        return out.minimalized()

    def power(self, u: int) -> "Ideal":
        return ideal_power(self, u)

    def intersect(self, other):
        return intersect(self, other)

    def colon(self, other):
        return colon(self, other)

    def saturate(self, other=None):
        return saturate(self, other)

    def codim(self) -> int:
        return codimension(self)

    def hilbert_function(self, e: int) -> int:
        """dim_k (R/self)_e for a homogeneous ideal, by counting standard monomials."""
        ring = self.ring
        keys = ring.monomials(e)
        if not self.gens:
            return len(keys)
        leads = self.gb().leading_keys()
        return sum(1 for k in keys if not any(ring.divides(l, k) for l in leads))

    def dimension(self) -> int:
        c = codimension(self)
        return max(self.ring.n - c, -1)


def unit_ideal(ring) -> Ideal:
    return Ideal([ring.one()], ring)


def maximal_ideal(ring) -> Ideal:
    return Ideal(ring.gens(), ring)


def ideal_power(I: Ideal, u: int) -> Ideal:
    if u < 0:
        raise ValueError("negative power")
    result = unit_ideal(I.ring)
    for _ in range(u):
        result = result * I
    return result


# ---------------------------------------------------------------------------
# helpers

def permuted_ring(ring: PolynomialRing, perm, order=None):
    """Ring whose i-th variable is ring's perm[i]-th, with maps both ways."""
    names = [ring.names[i] for i in perm]
    other = PolynomialRing(names, ring.field, order or ring.order)
    to_images = [None] * ring.n
    for new, old in enumerate(perm):
        to_images[old] = other.gen(new)
    back_images = [ring.gen(old) for old in perm]
    return other, (lambda f: f.substitute(to_images, other)), (lambda f: f.substitute(back_images, ring))


def exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, raising ValueError if g does not divide f."""
    ring = f.ring
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    lk, lc = g.leading_key(), g.leading_coefficient()
    inv = ring.field.inv(lc)
    q = {}
    r = f
    while r:
        k = r.leading_key()
        if not ring.divides(lk, k):
            raise ValueError("not an exact quotient")
        c = ring.field.mul(r.leading_coefficient(), inv)
        mk = k - lk
        q[mk] = c
        r = r - g.shift(mk, c)
    return Polynomial(ring, q)


def _is_variable(f: Polynomial):
    if len(f) != 1 or f.leading_coefficient() == 0:
        return None
    exps = f.leading_exponents()
    if sum(exps) == 1:
        return exps.index(1)
    return None


# ---------------------------------------------------------------------------
# operations

def intersect(A: Ideal, B: Ideal) -> Ideal:
    """A cap B by eliminating t from t*A + (1-t)*B."""
    A._check(B)
    ring = A.ring
    if A.is_zero() or B.is_zero():
        return Ideal([], ring)
    if A.is_unit():
        return B
    if B.is_unit():
        return A
    tname = "t"
    while tname in ring.names:
        tname = "_" + tname
    big = PolynomialRing((tname,) + ring.names, ring.field, "elim(1)")
    up = [big.gen(i + 1) for i in range(ring.n)]
    t = big.gen(0)
    gens = [t * a.substitute(up, big) for a in A.gens]
    gens += [(1 - t) * b.substitute(up, big) for b in B.gens]
    gb = groebner_basis(gens, big)
    back = [ring.zero()] + ring.gens()
    out = [g.substitute(back, ring) for g in gb.gens if big.exponents(g.leading_key())[0] == 0]
    return Ideal(out, ring).minimalized()


def _colon_variable(A: Ideal, i: int, saturate: bool = False) -> Ideal:
    """A : x_i (or A : x_i^inf) for homogeneous A via a reverse-lex basis with x_i last."""
    ring = A.ring
    perm = [j for j in range(ring.n) if j != i] + [i]
    other, to, back = permuted_ring(ring, perm, "grevlex")
    gb = groebner_basis([to(g) for g in A.gens], other)
    last = other.n - 1
    out = []
    for g in gb.gens:
        m = min(other.exponents(k)[last] for k in g.keyed)
        if m and not saturate:
            m = 1
        if m:
            mono = other.key(tuple(0 for _ in range(last)) + (m,))
            g = Polynomial(other, {k - mono: c for k, c in g.keyed.items()}, True)
        out.append(back(g))
    return Ideal(out, ring).minimalized()


def colon_element(A: Ideal, b: Polynomial) -> Ideal:
    ring = A.ring
    b = ring(b)
    if not b:
        return unit_ideal(ring)
    if A.is_zero():
        return Ideal([], ring)
    i = _is_variable(b)
    if i is not None and A.is_homogeneous():
        return _colon_variable(A, i)
    meet = intersect(A, Ideal([b], ring))
    return Ideal([exact_quotient(g, b) for g in meet.gens], ring).minimalized()


def colon(A: Ideal, B: Ideal) -> Ideal:
    """A : B as the intersection of A : b over generators b of B."""
    A._check(B)
    ring = A.ring
    if B.is_zero():
        return unit_ideal(ring)
    result = None
    for b in B.gens:
        q = colon_element(A, b)
        result = q if result is None else intersect(result, q)
        if result.is_zero():
            break
    return result


def saturate(A: Ideal, B: Ideal | None = None, max_steps: int = 64) -> Ideal:
    """A : B^inf as the fixpoint of iterated colons (B defaults to the maximal ideal)."""
    ring = A.ring
    if B is None:
        B = maximal_ideal(ring)
    cur = A
    for _ in range(max_steps):
        nxt = colon(cur, B)
        if nxt.is_subset(cur):
            return cur
        cur = nxt
    raise RuntimeError("saturation did not stabilize")


def codimension(A: Ideal) -> int:
    """Codimension from the leading-term ideal: the least number of variables
    meeting the support of every leading monomial.  The zero ideal has
    codimension 0 and the unit ideal is reported as n + 1.
    """
    if A._codim is not None:
        return A._codim
    ring = A.ring
    if A.is_zero():
        A._codim = 0
        return 0
    if A.is_unit():
        A._codim = ring.n + 1
        return A._codim
    supports = set()
    for k in A.gb().leading_keys():
        e = ring.exponents(k)
        supports.add(sum(1 << i for i, x in enumerate(e) if x))
    # drop supports containing another support
    sup = sorted(supports, key=lambda s: bin(s).count("1"))
    minimal = []
    for s in sup:
        if not any((m & s) == m for m in minimal):
            minimal.append(s)
    result = ring.n
    for size in range(0, ring.n + 1):
        found = False
        for T in combinations(range(ring.n), size):
            mask = sum(1 << i for i in T)
            if all(mask & s for s in minimal):
                found = True
                break
        if found:
            result = size
            break
    A._codim = result
    return result


def is_unit_codim(A: Ideal, c: int) -> bool:
    """True when c is the sentinel value used for the unit ideal."""
    return c == A.ring.n + 1
