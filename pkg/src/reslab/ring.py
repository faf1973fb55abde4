"""Polynomial rings and monomial orders.

A monomial is encoded as one non-negative Python int (its *key*) that is
linear in the exponent vector, so that multiplying monomials adds keys and
comparing keys compares monomials in the ring's order.  The key is built
from weight blocks (total degree, or block degree for elimination orders)
placed above a packed exponent field; reverse-lex tie breaking is obtained
by subtracting the packed field instead of adding it.

Each packed exponent field has a guard bit, which makes divisibility a
single subtraction and mask test.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .field import PrimeField, make_field

_BITS = 8                 # bits per exponent field, top bit is a guard
_WBITS = 16               # bits per weight block
MAX_EXPONENT = (1 << (_BITS - 1)) - 1


class RingMismatch(ValueError):
    pass


class ExponentOverflow(OverflowError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "glex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination order needs a positive block size")

    def __str__(self):
        return f"elim({self.block})" if self.kind == "elim" else self.kind

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        t = text.strip().lower().replace("-", "").replace("_", "")
        if t in ("grevlex", "gradedreverselex", "degrevlex"):
            return cls("grevlex")
        if t in ("glex", "gradedlex", "deglex"):
            return cls("glex")
        if t.startswith("elim(") and t.endswith(")"):
            return cls("elim", int(t[5:-1]))
        raise ValueError(f"unknown monomial order {text!r}")


GREVLEX = MonomialOrder("grevlex")


class PolynomialRing:
    """k[x_1..x_n] with a fixed monomial order."""

    def __init__(self, names, field=None, order: MonomialOrder | str | None = None):
        if isinstance(names, int):
            names = [f"x{i + 1}" for i in range(names)]
        names = tuple(str(v) for v in names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        if isinstance(order, str):
            order = MonomialOrder.parse(order)
        self.names = names
        self.n = n = len(names)
        self.field = make_field(field if field is not None else 32003)
        self.order = order or GREVLEX
        if self.order.kind == "elim" and self.order.block >= n:
            raise ValueError("elimination block must leave some variables")

        if self.order.kind == "glex":
            self._sign = 1
            pos = [n - 1 - i for i in range(n)]
            weights = [(1,) * n]
        elif self.order.kind == "grevlex":
            self._sign = -1
            pos = list(range(n))
            weights = [(1,) * n]
        else:
            b = self.order.block
            self._sign = -1
            pos = list(range(n))
            weights = [(1,) * b + (0,) * (n - b), (1,) * n]
        self._pos = pos
        self._nw = len(weights)
        self._shift = _BITS * n
        self.low_mask = (1 << self._shift) - 1
        self.guard = sum(1 << (_BITS * i + _BITS - 1) for i in range(n))
        self.key_bits = self._shift + _WBITS * self._nw
        self._deg_shift = self._shift
        keys = []
        for i in range(n):
            k = 0
            for j, w in enumerate(weights):
                k += w[i] << (self._shift + _WBITS * (self._nw - 1 - j))
            k += self._sign * (1 << (_BITS * pos[i]))
            keys.append(k)
        self.var_keys = tuple(keys)
        self._degree_tables: dict[int, tuple] = {}

    # identity -----------------------------------------------------------
    def __repr__(self):
        return f"PolynomialRing({list(self.names)}, {self.field!r}, {self.order})"

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.names == other.names
                and self.field == other.field and self.order == other.order)

    def __hash__(self):
        return hash((self.names, self.field, self.order))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def is_prime_field(self) -> bool:
        return isinstance(self.field, PrimeField)

    def with_order(self, order) -> "PolynomialRing":
        return PolynomialRing(self.names, self.field, order)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    # keys ---------------------------------------------------------------
    def key(self, exps) -> int:
        if len(exps) != self.n:
            raise ValueError("exponent vector has wrong length")
        k = 0
        for e, vk in zip(exps, self.var_keys):
            if e:
                if e < 0 or e > MAX_EXPONENT:
                    raise ExponentOverflow(f"exponent {e} out of range")
                k += e * vk
        return k

    def packed(self, key: int) -> int:
        return (self._sign * key) & self.low_mask

    def exponents(self, key: int) -> tuple:
        s = self.packed(key)
        return tuple((s >> (_BITS * self._pos[i])) & ((1 << _BITS) - 1) for i in range(self.n))

    def degree_of_key(self, key: int) -> int:
        if self._sign < 0:
            key = key + self.low_mask
        return (key >> self._deg_shift) & ((1 << _WBITS) - 1)

    def divides(self, a: int, b: int) -> bool:
        """True iff monomial a divides monomial b."""
        g = self.guard
        return (((self.packed(b) | g) - self.packed(a)) & g) == g

    def check_key(self, key: int) -> None:
        """Raise if some exponent of the product overflowed its field."""
        if self.degree_of_key(key) > MAX_EXPONENT:
            raise ExponentOverflow("total degree exceeds supported bound")

    def lcm_key(self, a: int, b: int) -> int:
        ea, eb = self.exponents(a), self.exponents(b)
        return self.key([max(x, y) for x, y in zip(ea, eb)])

    def monomial_str(self, key: int) -> str:
        parts = []
        for name, e in zip(self.names, self.exponents(key)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # monomials of a degree ----------------------------------------------
    def monomials(self, deg: int) -> list:
        """Keys of all monomials of total degree deg, descending in the order."""
        return list(self.degree_table(deg)[0])

    def degree_table(self, deg: int):
        """(keys descending, {key: index}, exponent array) for degree deg."""
        tab = self._degree_tables.get(deg)
        if tab is None:
            import numpy as np
            keys = []
            for combo in combinations_with_replacement(range(self.n), deg):
                k = 0
                for i in combo:
                    k += self.var_keys[i]
                keys.append(k)
            keys.sort(reverse=True)
            index = {k: i for i, k in enumerate(keys)}
            exps = np.array([self.exponents(k) for k in keys], dtype=np.int64).reshape(len(keys), self.n)
            tab = (tuple(keys), index, exps)
            self._degree_tables[deg] = tab
        return tab

    def num_monomials(self, deg: int) -> int:
        if deg < 0:
            return 0
        from math import comb
        return comb(deg + self.n - 1, self.n - 1)

    # construction helpers -------------------------------------------------
    def gen(self, i: int):
        from .poly import Polynomial
        return Polynomial(self, {self.var_keys[i]: self.field.one()})

    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def __getitem__(self, name: str):
        return self.gen(self.index(name))

    def one(self):
        from .poly import Polynomial
        return Polynomial(self, {0: self.field.one()})

    def zero(self):
        from .poly import Polynomial
        return Polynomial(self, {})

    def const(self, c):
        from .poly import Polynomial
        return Polynomial.from_terms(self, [((0,) * self.n, c)])

    def parse(self, text: str):
        from .parse import parse_polynomial
        return parse_polynomial(text, self)

    def __call__(self, obj):
        from .poly import Polynomial
        if isinstance(obj, Polynomial):
            if obj.ring != self:
                raise RingMismatch("polynomial belongs to another ring")
            return obj
        if isinstance(obj, str):
            return self.parse(obj)
        return self.const(obj)
