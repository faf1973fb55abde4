"""Deterministic constructors for the example families, with asserted properties."""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Callable

from .det import minors
from .ideal import Ideal, codimension, intersect
from .poly import Polynomial
from .ring import PolynomialRing
from .seeding import generator, random_coefficients, random_form, random_linear_form

log = logging.getLogger(__name__)

DEFAULT_PRIME = 32003


class UnknownExample(KeyError):
    pass


@dataclass
class CatalogEntry:
    id: str
    params: dict
    ring: PolynomialRing
    I: Ideal
    description: str
    remark: str
    J_recipe: dict | None = None           # {"s": .., "delta": ..} or {"explicit": [...]}
    J: Ideal | None = None
    asserted: dict = field(default_factory=dict)     # name -> (value, reason)
    expected: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def make_J(self, seed: int = 0):
        from .residual import general_elements
        if self.J is not None:
            return self.J
        if self.J_recipe is None:
            raise ValueError(f"{self.id} has no J recipe")
        return general_elements(self.I, self.J_recipe["s"], self.J_recipe["delta"], seed)


def _ring(names, p=DEFAULT_PRIME):
    return PolynomialRing(names, p)


def _mat_str(M) -> list:
    return [[str(e) for e in row] for row in M]


# ---------------------------------------------------------------------------
# entries


def mystery_module(p: int = DEFAULT_PRIME) -> CatalogEntry:
    R = _ring(["x", "y", "z"], p)
    x, y, z = R.gens()
    I = Ideal([x * x, x * y, y * y], R)
    return CatalogEntry(
        "mystery-module", {}, R, I,
        "I = (x,y)^2 in k[x,y,z] with J three general cubics in I",
        "worked example: self-dual I/J whose duality does not come from multiplication",
        {"s": 3, "delta": 3},
        asserted={"codim_I": (2, "stated"), "num_generators": (3, "stated")},
        expected={"hf_I/J": [3, 4, 3], "hf_I2/IJ": [5, 2], "hf_omega": [6, 3, 1]})


def _linear_matrix(R, rows, cols, rng):
    return [[random_linear_form(R, rng) for _ in range(cols)] for _ in range(rows)]


def generic_determinantal(rows: int = 2, cols: int = 4, num_vars: int = 5, seed: int = 0,
                          p: int = DEFAULT_PRIME) -> CatalogEntry:
    """2 x 2 (maximal) minors of a random linear matrix; reseeded if the codimension drops."""
    R = _ring([f"x{i}" for i in range(num_vars)], p)
    k = min(rows, cols)
    expect = abs(cols - rows) + 1
    retries = []
    for attempt in range(8):
        rng = generator(seed, f"determinantal-{rows}x{cols}", attempt)
        M = _linear_matrix(R, rows, cols, rng)
        I = Ideal(minors(M, k), R).minimalized()
        c = codimension(I)
        if c == min(expect, num_vars):
            break
        retries.append(f"attempt {attempt}: codim {c}")
        log.info("determinantal reseed: codim %d", c)
    else:
        raise RuntimeError(f"degenerate random matrices: {retries}")
    s = 4 if (rows, cols, num_vars) == (2, 4, 5) else num_vars
    return CatalogEntry(
        f"generic-{rows}x{cols}", {"rows": rows, "cols": cols, "num_vars": num_vars, "seed": seed},
        R, I, f"maximal minors of a random {rows}x{cols} linear matrix in {num_vars} variables",
        "random determinantal example where multiplication gives a perfect pairing",
        {"s": s, "delta": 3},
        asserted={"codim_I": (min(expect, num_vars), "generic codimension (cols-rows+1)")},
        matrices={"M": _mat_str(M)}, extra={"retries": retries})


def rational_quartic(p: int = DEFAULT_PRIME) -> CatalogEntry:
    R = _ring([f"x{i}" for i in range(5)], p)
    X = R.gens()
    M = [[X[0], X[1], X[2], X[3]], [X[1], X[2], X[3], X[4]]]
    I = Ideal(minors(M, 2), R).minimalized()
    return CatalogEntry(
        "rational-quartic", {}, R, I,
        "rational normal quartic: 2x2 minors of the 2x4 Hankel matrix in x0..x4, J five general cubics",
        "negative control: G_5 holds but depth R/I^2 = 0 and I/J, I^2/IJ are not dual",
        {"s": 5, "delta": 3},
        asserted={"codim_I": (3, "curve in P^4"), "G5": (True, "stated"), "depth_R/I2": (0, "stated")},
        matrices={"M": _mat_str(M)})


def veronese(p: int = DEFAULT_PRIME) -> CatalogEntry:
    R = _ring([f"x{i}" for i in range(6)], p)
    X = R.gens()
    M = [[X[0], X[1], X[2]], [X[1], X[3], X[4]], [X[2], X[4], X[5]]]
    I = Ideal(minors(M, 2), R).minimalized()
    return CatalogEntry(
        "veronese", {}, R, I,
        "Veronese surface in P^5: 2x2 minors of the generic symmetric 3x3 matrix, J six general cubics",
        "behaves like the rational quartic; the failing pairing is recorded, not asserted",
        {"s": 6, "delta": 3},
        asserted={"codim_I": (3, "surface in P^5")},
        matrices={"M": _mat_str(M)})


def macaulay_matrices(s: int, w: int, R: PolynomialRing):
    """M (s x 2s-1), N (s x s-1), M' (s x 2s-1), P (s x s) and the left-out variable index."""
    if not (s >= w + 2 and w + 2 >= 4):
        raise ValueError("need s >= w + 2 >= 4")
    X = R.gens()
    zero = R.zero()
    M = [[zero] * (2 * s - 1) for _ in range(s)]
    for r in range(s):
        for i in range(s):
            M[r][r + i] = X[i]
    r0 = s - w - 1                     # row whose last entry inside columns 1..s-1 is zeroed
    left = s - 1 - r0                  # index of that variable
    N = [[M[r][c] for c in range(1, s)] for r in range(s)]
    N[r0][s - 2] = zero
    Mp = [list(row) for row in M]
    Mp[r0][s - 1] = zero
    Mp[r0][0] = X[left]
    Mp[r0][2 * s - w - 1] = X[left]
    keep = [0] + list(range(s, 2 * s - 1))
    P = [[Mp[r][c] for c in keep] for r in range(s)]
    return M, N, Mp, P, left


def signed_minors(N):
    """(Delta_1, -Delta_2, ...) with Delta_i the minor of N omitting row i."""
    from .det import determinant
    n = len(N)
    out = []
    for i in range(n):
        sub = [row for j, row in enumerate(N) if j != i]
        d = determinant(sub)
        out.append(d if i % 2 == 0 else -d)
    return out


def macaulay_family(s: int = 5, w: int = 2, p: int = DEFAULT_PRIME) -> CatalogEntry:
    R = _ring([f"x{i}" for i in range(1, s + 1)], p)
    M, N, Mp, P, left = macaulay_matrices(s, w, R)
    delta = signed_minors(N)
    I = Ideal([d for d in delta], R)
    J = []
    for k in range(s):
        f = R.zero()
        for i in range(s):
            if P[i][k]:
                f = f + delta[i] * P[i][k]
        J.append(f)
    K = Ideal(minors(Mp, s), R)
    entry = CatalogEntry(
        f"macaulay(s={s},w={w})", {"s": s, "w": w}, R, I,
        f"codimension-2 Hilbert-Burch ideal from a {s}x{2 * s - 1} Macaulay matrix; satisfies G_{w} but not G_{w + 1}",
        "sharpness family for the G condition in the duality window",
        None, Ideal(J, R),
        asserted={"codim_I": (2, "Hilbert-Burch"), f"G{w}": (True, "stated"), f"G{w + 1}": (False, "stated"),
                  "codim_K": (s, "computed for s <= 7")},
        matrices={"M": _mat_str(M), "N": _mat_str(N), "M'": _mat_str(Mp), "P": _mat_str(P)},
        extra={"K_candidate": K, "left_out_variable": R.names[left], "P_poly": P, "N_poly": N})
    return entry


def semigroup_example(p: int = DEFAULT_PRIME) -> CatalogEntry:
    """k[t^10..t^19] as k[x1..x10] modulo 2x2 minors (not standard graded)."""
    R = _ring([f"x{i}" for i in range(1, 11)], p)
    X = R.gens()
    top = list(X)
    bottom = list(X[1:]) + [X[0] * X[0]]
    M = [top, bottom]
    P = Ideal(minors(M, 2), R)
    A = Ideal([X[0], X[1]], R)
    I = Ideal([X[0], X[1], X[3], X[4]], R)
    return CatalogEntry(
        "semigroup", {}, R, I,
        "k[t^10,...,t^19] = k[x1..x10]/P with P the 2x2 minors; omega = (x1,x2)^8 is both ((x1,x2)^4)^2 and I^2",
        "negative control: omega = I^2 does not force I = omega : I",
        None,
        asserted={"codim_P": (9, "one-dimensional domain in 10 variables")},
        matrices={"M": _mat_str(M)},
        extra={"presentation": P, "A": A})


def semigroup_checks(entry: CatalogEntry) -> dict:
    """Negative control on the semigroup ring.

    (x1,x2)^8 and I^2 agree modulo P only up to the unit-free factor
    x1^6 = t^60 (values 80+{0..8} against 20+{0..8}), so they are isomorphic
    ideals; the colon I^2 : I is strictly larger than I.
    """
    from .ideal import colon, ideal_power
    P, A, I = entry.extra["presentation"], entry.extra["A"], entry.I
    R = entry.ring
    A8 = ideal_power(A, 8) + P
    I2 = I * I + P
    x1 = R.gen(0)
    IP = I + P
    col = colon(I2, IP)
    return {
        "codim_P": codimension(P),
        "squares_equal": A8 == I2,
        "squares_isomorphic_via_x1^6": A8 == Ideal([x1 ** 6], R) * I * I + P,
        "colon_contains_I": IP.is_subset(col),
        "colon_equals_I": col == IP,
    }


def g1_family(gamma: int = 1, delta: int = 2, d: int = 2, seed: int = 0,
              p: int = DEFAULT_PRIME) -> CatalogEntry:
    """I = (G) principal, J = G * F with F a random regular sequence of forms of degree delta."""
    names = ["x", "y", "z", "w", "v", "u"][:d] if d <= 6 else [f"x{i}" for i in range(d)]
    R = _ring(names, p)
    retries = []
    for attempt in range(8):
        rng = generator(seed, f"g1-{gamma}-{delta}-{d}", attempt)
        G = random_form(R, gamma, rng) if gamma else R.one()
        F = [random_form(R, delta, rng) for _ in range(d)]
        if codimension(Ideal(F, R)) == d:
            break
        retries.append(f"attempt {attempt}: F not regular")
    else:
        raise RuntimeError("no regular sequence found")
    I = Ideal([G], R)
    J = Ideal([G * f for f in F], R)
    return CatalogEntry(
        f"g1(gamma={gamma},delta={delta},d={d},seed={seed})",
        {"gamma": gamma, "delta": delta, "d": d, "seed": seed}, R, I,
        "principal I = (G) and J = G F with F a regular sequence",
        "principal case: socle of R/(G^d F) generated by det Jac(G F)",
        None, J, asserted={"F_regular": (True, "verified at construction")},
        extra={"G": G, "F": F, "retries": retries})


def g1_toy(p: int = DEFAULT_PRIME) -> CatalogEntry:
    R = _ring(["x", "y"], p)
    x, y = R.gens()
    return CatalogEntry(
        "g1-toy", {}, R, Ideal([x], R),
        "I = (x), J = (x^2, xy) in k[x,y]: t = 1 and every pairing is k x k -> k",
        "principal case toy", None, Ideal([x * x, x * y], R),
        asserted={"t": (1, "s - g = 2 - 1")})


def complete_intersection(seed: int = 0, p: int = DEFAULT_PRIME) -> CatalogEntry:
    """I = (x, y), J two general quadrics in I: t = 0, R/J Gorenstein."""
    R = _ring(["x", "y"], p)
    x, y = R.gens()
    return CatalogEntry(
        "complete-intersection", {"seed": seed}, R, Ideal([x, y], R),
        "I = (x,y) in k[x,y], J two general quadrics (a complete intersection, t = 0)",
        "classical case: R/J Gorenstein, socle generated by det Jac", {"s": 2, "delta": 2},
        asserted={"t": (0, "s = g")})


def jacobian_mixed(corrected: bool = False, p: int = DEFAULT_PRIME) -> CatalogEntry:
    R = _ring(["x", "y"], p)
    x, y = R.gens()
    F = [x * x + y * y, x + y] if corrected else [x * x + y * y, x + y * y]
    G = x
    return CatalogEntry(
        "jacobian-mixed" + ("-corrected" if corrected else ""), {}, R, Ideal([G], R),
        f"G = x, F = ({F[0]}, {F[1]}): forms of different degrees",
        "mixed degrees: det Jac(G F) need not generate the socle",
        None, Ideal([G * f for f in F], R),
        expected={"colon": ["x"]}, extra={"G": G, "F": F})


def jacobian_two_planes(seed: int = 0, p: int = DEFAULT_PRIME) -> CatalogEntry:
    R = _ring(["x", "y", "z"], p)
    x, y, z = R.gens()
    I = intersect(Ideal([x, y], R), Ideal([x, z], R))
    return CatalogEntry(
        "jacobian-two-planes", {"seed": seed}, R, I,
        "I = (x,y) cap (x,z) in k[x,y,z], J three general quartics in I",
        "det Jac generates the socle of S/IJ yet lies in (x,y)J and (x,z)J",
        {"s": 3, "delta": 4},
        asserted={"reduced": (True, "intersection of two linear primes"), "codim_I": (2, "two planes")},
        extra={"primes": [Ideal([x, y], R), Ideal([x, z], R)]})


# ---------------------------------------------------------------------------
# registry

_FIXED: dict[str, Callable] = {
    "mystery-module": mystery_module,
    "generic-2x4": lambda **kw: generic_determinantal(2, 4, 5, **kw),
    "rational-quartic": rational_quartic,
    "veronese": veronese,
    "macaulay": macaulay_family,
    "semigroup": semigroup_example,
    "g1": g1_family,
    "g1-toy": g1_toy,
    "complete-intersection": complete_intersection,
    "jacobian-mixed": jacobian_mixed,
    "jacobian-two-planes": jacobian_two_planes,
}

_INT = re.compile(r"^-?\d+$")


def parse_id(text: str):
    """'macaulay(s=5,w=2)' -> ('macaulay', {'s': 5, 'w': 2})."""
    m = re.fullmatch(r"\s*([A-Za-z0-9_\-]+)\s*(?:\((.*)\))?\s*", text)
    if not m:
        raise UnknownExample(text)
    name, args = m.group(1), m.group(2)
    params = {}
    if args:
        for part in args.split(","):
            if not part.strip():
                continue
            if "=" not in part:
                raise UnknownExample(f"bad parameter {part!r} in {text!r}")
            k, v = part.split("=", 1)
            k, v = k.strip(), v.strip()
            if _INT.match(v):
                params[k] = int(v)
            elif v.lower() in ("true", "false"):
                params[k] = v.lower() == "true"
            else:
                params[k] = v
    return name, params


def get(text: str, **overrides) -> CatalogEntry:
    name, params = parse_id(text)
    if name not in _FIXED:
        raise UnknownExample(name)
    params.update(overrides)
    try:
        return _FIXED[name](**params)
    except TypeError as exc:
        raise UnknownExample(f"bad parameters for {name}: {exc}") from None


def list_examples() -> list:
    return sorted(_FIXED)


_DESCRIBE = {
    "mystery-module": ("I = (x,y)^2 in k[x,y,z], J = 3 general cubics. Expected Hilbert functions: "
                       "I/J 3,4,3; I^2/IJ 5,2; omega 6,3,1.",
                       "Example (mystery module): self-duality of I/J holds but is not induced by multiplication."),
    "generic-2x4": ("2x2 minors of a seeded random 2x4 linear matrix in 5 variables, J = 4 general cubics.",
                    "Example (random determinantal): multiplication I/J x I/J -> I^2/IJ is a perfect pairing."),
    "rational-quartic": ("2x2 minors of the Hankel matrix (x0 x1 x2 x3 / x1 x2 x3 x4), J = 5 general cubics.",
                         "Example (deformation condition): depth R/I^2 = 0 and I/J, I^2/IJ are not dual."),
    "veronese": ("2x2 minors of the generic symmetric 3x3 matrix in 6 variables.",
                 "Example (Veronese surface): recorded without an asserted verdict."),
    "macaulay": ("Parameters s, w with s >= w + 2 >= 4. I = maximal minors of N, J = signed minors times P, "
                 "K = maximal minors of M'.",
                 "Example family (sharpness of the G condition): G_w holds and G_{w+1} fails."),
    "semigroup": ("k[t^10..t^19] presented by the 2x2 minors of (x1..x10 / x2..x10 x1^2).",
                  "Example (semigroup ring): omega = I^2 without I = omega : I."),
    "g1": ("Parameters gamma, delta, d, seed: I = (G), J = G F with F a random regular sequence.",
           "Principal case: the socle of R/(G^d F) is generated by det Jac(G F)."),
    "g1-toy": ("I = (x), J = (x^2, xy) in k[x,y].", "Principal case toy with t = 1."),
    "complete-intersection": ("I = (x,y), J = 2 general quadrics in k[x,y].", "Complete intersection, t = 0."),
    "jacobian-mixed": ("G = x, F = (x^2+y^2, x+y^2); option corrected=true uses F = (x^2+y^2, x+y).",
                       "Jacobian example with forms of different degrees."),
    "jacobian-two-planes": ("I = (x,y) cap (x,z), J = 3 general quartics in I.",
                            "Jacobian example: socle generator lying in (x,y)J and (x,z)J."),
}


def describe(text: str) -> str:
    name, _ = parse_id(text)
    if name not in _FIXED:
        raise UnknownExample(name)
    body, cite = _DESCRIBE[name]
    return f"{name}\n  {body}\n  source: {cite}"
