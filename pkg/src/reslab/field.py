"""Coefficient fields: prime fields F_p and the rationals."""
from __future__ import annotations

from fractions import Fraction


class CoefficientError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field Z/p with elements stored as ints in [0, p)."""

    exact_rational = False

    def __init__(self, p: int = 32003):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __call__(self, c):
        if isinstance(c, Fraction):
            return self.from_fraction(c.numerator, c.denominator)
        return int(c) % self.p

    def from_fraction(self, num: int, den: int):
        if den % self.p == 0:
            raise CoefficientError(f"denominator {den} vanishes mod {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def one(self):
        return 1

    def zero(self):
        return 0

    def signed(self, a) -> int:
        """Symmetric representative, used for printing."""
        return a - self.p if a > self.p // 2 else a

    def random_element(self, rng):
        return int(rng.integers(0, self.p))


class RationalField:
    """The rationals, using fractions.Fraction."""

    exact_rational = True
    characteristic = 0
    p = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __call__(self, c):
        return Fraction(c)

    def from_fraction(self, num: int, den: int):
        if den == 0:
            raise CoefficientError("zero denominator")
        return Fraction(num, den)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def one(self):
        return Fraction(1)

    def zero(self):
        return Fraction(0)

    def signed(self, a):
        return a

    def random_element(self, rng):
        return Fraction(int(rng.integers(-50, 51)))


QQ = RationalField()


def make_field(spec) -> PrimeField | RationalField:
    """Field from a config value: an int prime, 'QQ', or 'GF(p)'."""
    if isinstance(spec, (PrimeField, RationalField)):
        return spec
    if isinstance(spec, int):
        return PrimeField(spec)
    s = str(spec).strip()
    if s.upper() in ("QQ", "Q"):
        return QQ
    if s.upper().startswith("GF(") and s.endswith(")"):
        return PrimeField(int(s[3:-1]))
    return PrimeField(int(s))
