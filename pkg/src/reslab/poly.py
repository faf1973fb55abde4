"""Multivariate polynomials with exact coefficients."""
from __future__ import annotations

from .ring import PolynomialRing, RingMismatch


class Polynomial:
    """An immutable polynomial.

    Terms are held in a dict from monomial key to nonzero coefficient whose
    insertion order is strictly descending in the ring's monomial order.
    """

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: PolynomialRing, terms: dict, normalized: bool = False):
        self.ring = ring
        if not normalized:
            f = ring.field
            terms = {k: f(c) for k, c in terms.items()}
            terms = {k: terms[k] for k in sorted(terms, reverse=True) if terms[k]}
        self._t = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolynomialRing, terms) -> "Polynomial":
        """Build from (exponent vector, coefficient) pairs; like terms are added."""
        acc: dict = {}
        f = ring.field
        for exps, c in terms:
            k = ring.key(exps)
            acc[k] = f.add(acc.get(k, f.zero()), f(c))
        return cls(ring, acc)

    # basic data -----------------------------------------------------------
    def terms(self) -> list:
        """(exponent tuple, coefficient) pairs, descending."""
        return [(self.ring.exponents(k), c) for k, c in self._t.items()]

    @property
    def keyed(self) -> dict:
        return self._t

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def leading_key(self) -> int:
        return next(iter(self._t))

    def leading_coefficient(self):
        return next(iter(self._t.values()))

    def leading_exponents(self) -> tuple:
        return self.ring.exponents(self.leading_key())

    def degree(self) -> int:
        if not self._t:
            return -1
        dk = self.ring.degree_of_key
        return max(dk(k) for k in self._t)

    def degrees(self) -> set:
        dk = self.ring.degree_of_key
        return {dk(k) for k in self._t}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def homogeneous_part(self, deg: int) -> "Polynomial":
        dk = self.ring.degree_of_key
        return Polynomial(self.ring, {k: c for k, c in self._t.items() if dk(k) == deg}, True)

    def coefficient(self, exps) -> object:
        return self._t.get(self.ring.key(exps), self.ring.field.zero())

    def monic(self) -> "Polynomial":
        if not self._t:
            return self
        return self * self.ring.field.inv(self.leading_coefficient())

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and list(self._t.items()) == list(other._t.items())
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._t.items()))
        return self._hash

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch("operands live in different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        acc = dict(self._t)
        for k, c in other._t.items():
            v = f.add(acc.get(k, f.zero()), c)
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
        return Polynomial(self.ring, {k: acc[k] for k in sorted(acc, reverse=True)}, True)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {k: f.neg(c) for k, c in self._t.items()}, True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero()
            f = self.ring.field
            return Polynomial(self.ring, {k: f.mul(v, c) for k, v in self._t.items()}, True)
        other = self._coerce(other)
        if not self._t or not other._t:
            return self.ring.zero()
        ring = self.ring
        ring.check_key(self.leading_key_by_degree() + other.leading_key_by_degree())
        f = ring.field
        acc: dict = {}
        if ring.is_prime_field:
            p = ring.p
            for k1, c1 in self._t.items():
                for k2, c2 in other._t.items():
                    k = k1 + k2
                    acc[k] = (acc.get(k, 0) + c1 * c2) % p
        else:
            for k1, c1 in self._t.items():
                for k2, c2 in other._t.items():
                    k = k1 + k2
                    acc[k] = acc.get(k, 0) + c1 * c2
        return Polynomial(ring, {k: acc[k] for k in sorted(acc, reverse=True) if acc[k]}, True)

    __rmul__ = __mul__

    def leading_key_by_degree(self) -> int:
        """Key of a term of maximal total degree (for overflow checks)."""
        dk = self.ring.degree_of_key
        return max(self._t, key=dk)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, mono_key: int, coeff=1) -> "Polynomial":
        """Multiply by coeff * monomial (given by key)."""
        if self._t:
            self.ring.check_key(self.leading_key_by_degree() + mono_key)
        f = self.ring.field
        c = f(coeff)
        return Polynomial(self.ring, {k + mono_key: f.mul(v, c) for k, v in self._t.items()}, True)

    # calculus and substitution ------------------------------------------------
    def derivative(self, i: int) -> "Polynomial":
        ring = self.ring
        if not 0 <= i < ring.n:
            raise IndexError(f"variable index {i} out of range")
        f = ring.field
        vk = ring.var_keys[i]
        acc = {}
        for k, c in self._t.items():
            e = ring.exponents(k)[i]
            if e:
                v = f.mul(c, f(e))
                if v:
                    acc[k - vk] = v
        return Polynomial(ring, acc, True)

    def substitute(self, images, target: PolynomialRing | None = None) -> "Polynomial":
        """Ring map sending variable i to images[i] (polynomials in target)."""
        target = target or self.ring
        if len(images) != self.ring.n:
            raise ValueError("need one image per variable")
        images = [target(g) for g in images]
        powers: list[dict] = [{0: target.one()} for _ in images]

        def pw(i, e):
            d = powers[i]
            if e not in d:
                d[e] = pw(i, e - 1) * images[i]
            return d[e]

        result = target.zero()
        exps_of = self.ring.exponents
        fconv = target.field
        for k, c in self._t.items():
            term = target.const(fconv(c) if not self.ring.is_prime_field else c)
            for i, e in enumerate(exps_of(k)):
                if e:
                    term = term * pw(i, e)
            result = result + term
        return result

    def evaluate(self, point):
        f = self.ring.field
        total = f.zero()
        for exps, c in self.terms():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = f.mul(v, f(x) ** e if not self.ring.is_prime_field else pow(int(x), e, f.p))
            total = f.add(total, v)
        return total

    # printing ------------------------------------------------------------------
    def __str__(self):
        if not self._t:
            return "0"
        f = self.ring.field
        out = []
        for k, c in self._t.items():
            c = f.signed(c)
            neg = c < 0
            a = -c if neg else c
            mono = self.ring.monomial_str(k)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"
