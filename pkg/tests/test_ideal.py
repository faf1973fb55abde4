import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from reslab import PolynomialRing, parse_polynomial
from reslab.catalog import get
from reslab.fitting import check_Gs, fitting_ideal, ideal_presentation
from reslab.groebner import ModulePresentation
from reslab.ideal import (Ideal, codimension, colon, colon_element, ideal_power, intersect,
                          is_unit_codim, maximal_ideal, saturate, unit_ideal)
from reslab.poly import Polynomial

from oracles import colon_component, component, intersection_component, same_space, saturation_component

R = PolynomialRing(["x", "y", "z"])
x, y, z = R.gens()


def Id(*gens):
    return Ideal(list(gens), R)


def test_powers():
    m2 = ideal_power(Id(x, y), 2)
    assert m2 == Id(x * x, x * y, y * y)
    assert ideal_power(Id(x, y), 0).is_unit()
    assert len(ideal_power(m2, 2).minimalized().gens) == 5
    S = PolynomialRing(["x", "y"])
    m = Ideal(S.gens(), S)
    assert len(ideal_power(ideal_power(m, 2), 2).minimalized().gens) == 5
    T = PolynomialRing(["a", "b", "c", "d"])
    assert len(ideal_power(Ideal(T.gens(), T), 2).minimalized().gens) == 10


def test_intersections():
    assert intersect(Id(x), Id(y)) == Id(x * y)
    assert intersect(Id(x * x, y), Id(x)) == Id(x * x, x * y)
    A = Id(x * x + y * z, y ** 3)
    assert intersect(A, A) == A


def test_colons():
    assert colon(Id(x * x), Id(x)) == Id(x)
    assert colon(Id(x * y, y * y), Id(y)) == Id(x, y)
    # membership oracle for the second example
    Q = Id(x * y, y * y)
    C = colon(Q, Id(y))
    for e in range(4):
        for m in R.monomials(e):
            f = Polynomial(R, {m: 1})
            assert C.contains(f) == Q.contains(f * y)


def test_colon_paths_agree():
    A = Id(x * x * y, x * z * z, y ** 3)
    for v in range(3):
        fast = colon(A, Id(R.gen(v)))
        slow = colon_element(A, R.gen(v))
        assert fast == slow


def test_saturations():
    assert saturate(Id(x * x * y)) == Id(x * x * y)
    assert saturate(Id(x * x, x * y), Id(x, y)) == Id(x)
    assert saturate(Id(x * x, x * y)) == Id(x * x, x * y)
    assert saturate(Id(x * x, x * y), unit_ideal(R)) == Id(x * x, x * y)


def test_codimension():
    assert codimension(ideal_power(Id(x, y), 2)) == 2
    assert codimension(Ideal([], R)) == 0
    c = codimension(unit_ideal(R))
    assert c == 4 and is_unit_codim(unit_ideal(R), c)
    assert codimension(get("generic-2x4").I) == 3
    assert codimension(get("rational-quartic").I) == 3
    assert codimension(get("macaulay(s=5,w=2)").extra["K_candidate"]) == 5


def test_fitting_examples():
    S = PolynomialRing(["x", "y"])
    X, Y = S.gens()
    pres = ModulePresentation(S, 2, [[Y, -X]], [1, 1])
    assert fitting_ideal(pres, 1) == Ideal([X, Y], S)
    assert fitting_ideal(pres, 0).is_zero()
    zero = ModulePresentation(S, 2, [[S.zero(), S.zero()]], [0, 0])
    assert fitting_ideal(zero, 2).is_unit()


def test_fitting_invariant_under_trivial_column():
    S = PolynomialRing(["x", "y", "z"])
    X, Y, Z = S.gens()
    I = Ideal([X * X, X * Y, Y * Z], S)
    pres = ideal_presentation(I)
    bigger = ModulePresentation(S, pres.rank, pres.columns + [[S.zero()] * pres.rank], pres.row_shifts)
    for i in range(pres.rank + 1):
        assert fitting_ideal(pres, i) == fitting_ideal(bigger, i)


def test_Gs_examples():
    r = check_Gs(ideal_power(Id(x, y), 2), 3)
    assert not r.holds and r.first_failing_level == 3
    assert r.codims == {1: 2, 2: 2}
    assert check_Gs(get("generic-2x4").I, 4).holds
    assert check_Gs(get("rational-quartic").I, 5).holds
    mac = get("macaulay(s=5,w=2)")
    assert check_Gs(mac.I, 2).holds
    r3 = check_Gs(mac.I, 3)
    assert not r3.holds and r3.first_failing_level == 3


# oracle suite --------------------------------------------------------------

def form(deg):
    monos = R.monomials(deg)
    return st.lists(st.tuples(st.sampled_from(monos), st.integers(1, 32002)), min_size=1, max_size=3).map(
        lambda ts: Polynomial(R, {k: c for k, c in ts}))


small_ideal = st.lists(st.integers(1, 3).flatmap(form), min_size=1, max_size=3).map(lambda g: Ideal(g, R))

ORACLE = settings(max_examples=200, deadline=None, derandomize=True,
                  suppress_health_check=[HealthCheck.too_slow])


def _agrees(result, oracle_rows, e):
    return same_space(component(result.gens, R, e), oracle_rows, R.num_monomials(e), R.p)


@ORACLE
@given(small_ideal, small_ideal)
def test_intersection_oracle(A, B):
    C = intersect(A, B)
    for e in range(0, 6):
        assert _agrees(C, intersection_component(A.gens, B.gens, R, e), e)


@ORACLE
@given(small_ideal, small_ideal)
def test_colon_oracle(A, B):
    C = colon(A, B)
    assert A.is_subset(C)
    assert (C * B).is_subset(A)
    for e in range(0, 5):
        assert _agrees(C, colon_component(A.gens, B.gens, R, e), e)


@ORACLE
@given(small_ideal)
def test_saturation_oracle(A):
    S = saturate(A)
    assert colon(S, maximal_ideal(R)) == S
    for e in range(0, 5):
        assert _agrees(S, saturation_component(A.gens, R, e), e)


@settings(max_examples=60, deadline=None)
@given(small_ideal, small_ideal)
def test_codim_of_intersection(A, B):
    assert codimension(intersect(A, B)) == min(codimension(A), codimension(B))
