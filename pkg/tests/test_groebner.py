import pytest
import sympy
from hypothesis import given, settings, strategies as st

from reslab import PolynomialRing, parse_polynomial
from reslab.catalog import get
from reslab.groebner import (Budget, BudgetExceeded, eliminate, groebner_basis, normal_form,
                             syzygy_module)
from reslab.poly import Polynomial

from oracles import component, rank, to_sympy

R = PolynomialRing(["x", "y"])
x, y = R.gens()


def P(s, ring=R):
    return parse_polynomial(s, ring)


def test_gb_examples():
    gb = groebner_basis([x ** 2, x * y + y ** 2])
    assert y ** 3 in gb.gens
    assert [str(g) for g in groebner_basis([x]).gens] == ["x"]
    assert sorted(str(g) for g in groebner_basis([x, y, x + y]).gens) == ["x", "y"]


def test_gb_drops_zero():
    gb = groebner_basis([R.zero(), x])
    assert len(gb) == 1


def test_normal_forms():
    assert normal_form(x ** 2, groebner_basis([x])) == R.zero()
    assert normal_form(y, groebner_basis([x])) == y
    # grevlex: the leading term of x^2 - y^3 is y^3, so x^2 y is already reduced
    gb = groebner_basis([x ** 2 - y ** 3])
    assert gb.gens[0].leading_exponents() == (0, 3)
    assert normal_form(x ** 2 * y, gb) == x ** 2 * y


def test_eliminate_examples():
    S = PolynomialRing(["t", "x", "y"])
    t, X, Y = S.gens()
    small, out = eliminate([t * X, (1 - t) * Y], {0})
    assert [str(f) for f in out] == ["x*y"]
    small, out = eliminate([X - t], {0})
    assert out == []
    small, out = eliminate([t, X], {0})
    assert [str(f) for f in out] == ["x"]


def test_syzygy_examples():
    pres = syzygy_module([x, y])
    assert pres.ncols == 1
    col = [pres.entry(i, 0) for i in range(2)]
    assert col[0] * x + col[1] * y == R.zero()
    assert {str(c) for c in col} <= {"y", "-y", "x", "-x"}
    pres = syzygy_module([x ** 2, x])
    assert pres.ncols == 1
    col = [pres.entry(i, 0) for i in range(2)]
    assert col[0] * x ** 2 + col[1] * x == R.zero()
    assert col[0].is_constant()


def test_syzygies_of_hilbert_burch_minors():
    e = get("macaulay(s=5,w=2)")
    gens = e.I.gens
    assert [f.degree() for f in gens] == [4] * 5
    pres = syzygy_module(gens)
    assert pres.ncols == 4 and pres.column_shifts() == [5] * 4
    ring = e.ring
    N = e.extra["N_poly"]

    def flat(col):
        v = []
        for f in col:
            v.extend(int(f.coefficient(tuple(int(i == j) for i in range(ring.n)))) if f else 0
                     for j in range(ring.n))
        return v
    ncols = [flat([N[r][c] for r in range(5)]) for c in range(4)]
    scols = [flat([pres.entry(r, c) for r in range(5)]) for c in range(4)]
    assert rank(ncols, 25, ring.p) == rank(scols, 25, ring.p) == rank(ncols + scols, 25, ring.p) == 4


def test_budget_exceeded():
    S = PolynomialRing(["a", "b", "c", "d"])
    gens = [P(s, S) for s in ("a^3 - b*c*d", "b^3 - a*c*d", "c^3 - a*b*d", "a*b + c*d")]
    with pytest.raises(BudgetExceeded):
        groebner_basis(gens, budget=Budget(max_pairs=2, max_degree=24))
    with pytest.raises(BudgetExceeded):
        groebner_basis(gens, budget=Budget(max_pairs=10 ** 6, max_degree=3))


def test_budget_env(monkeypatch):
    monkeypatch.setenv("RESLAB_BUDGET", "max_degree=7,max_pairs=99")
    b = Budget.default()
    assert (b.max_degree, b.max_pairs) == (7, 99)
    monkeypatch.setenv("RESLAB_BUDGET", "bogus=1")
    with pytest.raises(ValueError):
        Budget.default()


# randomized ---------------------------------------------------------------

S3 = PolynomialRing(["x", "y", "z"])
sx, sy, sz = sympy.symbols("x y z")


def forms(deg):
    monos = S3.monomials(deg)
    return st.lists(st.tuples(st.sampled_from(monos), st.integers(1, 20)), min_size=1, max_size=3).map(
        lambda ts: Polynomial(S3, {k: c for k, c in ts}))


ideals = st.lists(st.integers(1, 3).flatmap(forms), min_size=1, max_size=3)


def _sympy_gb(gens):
    G = sympy.groebner([to_sympy(g, (sx, sy, sz)) for g in gens], sx, sy, sz, order="grevlex",
                       modulus=S3.p)
    return G


@settings(max_examples=60, deadline=None)
@given(ideals)
def test_gb_matches_sympy(gens):
    gb = groebner_basis(gens)
    G = _sympy_gb(gens)
    ours = sorted(tuple(sorted(g.leading_exponents())) for g in gb.gens)
    theirs = sorted(tuple(sorted(sympy.Poly(p, sx, sy, sz).monoms(order="grevlex")[0])) for p in G.exprs)
    assert len(gb) == len(G.exprs)
    assert ours == theirs
    for g in gb.gens:
        assert G.contains(to_sympy(g, (sx, sy, sz)))


@settings(max_examples=60, deadline=None)
@given(ideals, st.integers(1, 3).flatmap(forms), st.integers(1, 3).flatmap(forms))
def test_gb_properties(gens, a, b):
    gb = groebner_basis(gens)
    for g in gens:
        assert normal_form(g, gb) == S3.zero()
    again = groebner_basis(gb.gens)
    assert [str(g) for g in again.gens] == [str(g) for g in gb.gens]
    assert normal_form(a + b, gb) == normal_form(a, gb) + normal_form(b, gb)
    lts = gb.leading_keys()
    for i, u in enumerate(lts):
        for j, v in enumerate(lts):
            assert i == j or not S3.divides(u, v)


@settings(max_examples=40, deadline=None)
@given(ideals)
def test_syzygies_product_zero(gens):
    gens = [g for g in gens if g.is_homogeneous()]
    pres = syzygy_module(gens)
    for j in range(pres.ncols):
        total = S3.zero()
        for i, g in enumerate(gens):
            total = total + g * pres.entry(i, j)
        assert total == S3.zero()


@settings(max_examples=40, deadline=None)
@given(ideals)
def test_elimination_sound(gens):
    small, out = eliminate(gens, {0})
    gb = groebner_basis(gens)
    back = [S3.gen(1), S3.gen(2)]
    for f in out:
        assert gb.contains(f.substitute(back, S3))


@settings(max_examples=40, deadline=None)
@given(ideals)
def test_gb_spans_components(gens):
    # the ideal generated by the basis equals the input ideal degree by degree
    gb = groebner_basis(gens)
    for e in range(1, 5):
        a, b = component(gens, S3, e), component(gb.gens, S3, e)
        n = S3.num_monomials(e)
        assert rank(a, n, S3.p) == rank(b, n, S3.p) == rank(a + b, n, S3.p)
