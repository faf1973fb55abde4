"""End-to-end acceptance checks; each prints one PASS/FAIL line."""
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from reslab import PolynomialRing, cli
from reslab.catalog import get
from reslab.config import from_dict
from reslab.ideal import Ideal, codimension, ideal_power
from reslab.jacobian import (check_jacformula, colon_by_jacobian, g1_socle_check, jacobian_containment_check,
                             jacobian_determinant)
from reslab.residual import (ModuleFamily, artinian_slice, duality_suite, general_setup, make_setup,
                             omega_duality, simple_socle_check)
from reslab.resolution import canonical_module, depth, matlis_canonical
from reslab.seeding import generator, random_form

from test_catalog import PRINTED, _grid

HERE = Path(__file__).parent


def _hf_list(hf):
    return [hf[k] for k in sorted(hf) if hf[k]]


@pytest.fixture(scope="module")
def sliced_2x4():
    t0 = time.perf_counter()
    e = get("generic-2x4")
    st = general_setup(e.I, 4, 3, seed=0)
    sl = artinian_slice(st, seed=0)
    return st, sl, time.perf_counter() - t0


def test_ac1_mystery_module(verdict):
    t0 = time.perf_counter()
    e = get("mystery-module")
    st = general_setup(e.I, 3, 3, seed=1)
    fam = ModuleFamily(st)
    A, C = fam.module(1), fam.module(2)
    omega = matlis_canonical(st.K)
    hfs = (A.hf_list(), C.hf_list(), omega.hf_list())
    res_route = _hf_list(canonical_module(st.K).hilbert_function(range(-10, 10)))
    iso = omega_duality(fam, 1, np.random.default_rng(1))["isomorphic"]
    rep = duality_suite(st, us=[1], family=fam)[0]
    # C is killed by m^2: every product of two variable actions vanishes on C
    killed = all(not np.any(C.act(j, a + 1) @ C.act(i, a))
                 for a in C.degrees() for i in range(3) for j in range(3) if C.dim(a + 2) and C.dim(a))
    secs = time.perf_counter() - t0
    ok = (hfs == ([3, 4, 3], [5, 2], [6, 3, 1]) and res_route == [6, 3, 1] and iso
          and rep.rank_verdict == "inapplicable" and rep.verdict == "fails" and killed and secs < 10)
    assert verdict("AC1", ok, f"HF {hfs}, self-dual {iso}, pairing {rep.rank_verdict}/{rep.verdict}, "
                              f"C killed by m^2 {killed}, {secs:.1f}s")


def test_ac2_positive_duality(verdict, sliced_2x4):
    st, sl, t_setup = sliced_2x4
    t0 = time.perf_counter()
    reps = duality_suite(sl, us=[0, 1, 2])
    secs = t_setup + time.perf_counter() - t0
    D = sl.socle_degree
    comp = all(r.hf_A.get(i, 0) == r.hf_B.get(D - i, 0) for r in reps for i in range(-1, D + 2))
    perfect = all(r.verdict == "perfect" and r.rank_verdict == "perfect" for r in reps)
    ok = D == 8 and perfect and comp and codimension(st.I) == 3 and secs < 300
    assert verdict("AC2", ok, f"D={D}, verdicts {[r.verdict for r in reps]}, complementary {comp}, {secs:.0f}s")


def test_ac3_rational_quartic(verdict):
    t0 = time.perf_counter()
    e = get("rational-quartic")
    d2 = depth(ideal_power(e.I, 2))
    st = general_setup(e.I, 5, 3, seed=0)
    sl = artinian_slice(st, seed=0)
    rep = duality_suite(sl, us=[1])[0]
    secs = time.perf_counter() - t0
    ok = d2 == 0 and rep.verdict == "fails" and secs < 300
    assert verdict("AC3", ok, f"depth R/I^2 = {d2}, u=1 pairing {rep.verdict} "
                              f"(omega {rep.omega_verdict}), {secs:.0f}s")


def _macaulay_run(w):
    t0 = time.perf_counter()
    report, code = cli.run(from_dict({"example": f"macaulay(s=5,w={w})", "seed": 0,
                                      "checks": ["codim2-matrix", "duality"]}))
    return report, code, time.perf_counter() - t0


@pytest.fixture(scope="module")
def macaulay_w2():
    return _macaulay_run(2)


def _window_summary(report):
    d = report["checks"]["duality"]
    w = d["window"]
    return w, {p["u"]: p["omega_verdict"] for p in d["pairings"]}


# With w = 2 the window predicted from v = w - g = 0 is empty, so no u inside it can pass.
@pytest.mark.xfail(strict=True, reason="duality window is empty for w = 2; analysis in the decisions ledger")
def test_ac4_macaulay_w2(verdict, macaulay_w2):
    report, code, secs = macaulay_w2
    e = get("macaulay(s=5,w=2)")
    match = all(e.matrices[k] == _grid(v) for k, v in PRINTED.items())
    c2 = report["checks"]["codim2-matrix"]
    w, table = _window_summary(report)
    inside = [u for u in w["window"] if table.get(u)]
    outside = [u for u, ok in table.items() if u not in w["window"] and not ok]
    ok = match and c2["codim_K"] == 5 and bool(inside) and bool(outside) and secs < 900
    verdict("AC4", ok, f"matrices match {match}, codim K {c2['codim_K']}, window {w['window']}, "
                       f"omega verdicts {table}, {secs:.0f}s")
    assert ok


def test_ac4_macaulay_w2_parts(verdict, macaulay_w2):
    # the parts of the w = 2 criterion that are attainable
    report, code, secs = macaulay_w2
    e = get("macaulay(s=5,w=2)")
    match = all(e.matrices[k] == _grid(v) for k, v in PRINTED.items())
    c2 = report["checks"]["codim2-matrix"]
    _, table = _window_summary(report)
    ok = code == 0 and match and c2["codim_K"] == 5 and c2["K_is_colon"] and len(table) == 5
    assert verdict("AC4a", ok, f"matrices byte-match, codim K = 5, K = J:I, table over u=0..4")


@pytest.mark.slow
def test_ac4_macaulay_w3_window(verdict):
    report, code, secs = _macaulay_run(3)
    w, table = _window_summary(report)
    inside = [u for u in w["window"] if table.get(u)]
    outside = [u for u, ok in table.items() if u not in w["window"] and not ok]
    ok = report["checks"]["codim2-matrix"]["codim_K"] == 5 and bool(inside) and bool(outside)
    assert verdict("AC4b", ok, f"w=3: window {w['window']}, omega verdicts {table}, {secs:.0f}s")


def test_ac5_jacformula(verdict):
    t0 = time.perf_counter()
    bad = []
    for seed in range(100):
        rng = generator(seed, "ac5")
        d, gamma, delta = int(rng.integers(1, 4)), int(rng.integers(0, 4)), int(rng.integers(1, 4))
        R = PolynomialRing(["x", "y", "z"][:d])
        G = random_form(R, gamma, rng)
        F = [random_form(R, delta, rng) for _ in range(d)]
        if not check_jacformula(G, F):
            bad.append(seed)
    secs = time.perf_counter() - t0
    assert verdict("AC5", not bad and secs < 30, f"100 instances, failures {bad}, {secs:.1f}s")


@pytest.mark.xfail(strict=True, reason="literal F = (x^2+y^2, x+y^2) gives a larger colon; see decisions ledger")
def test_ac6a_literal(verdict):
    e = get("jacobian-mixed")
    col, jac = colon_by_jacobian(e.extra["F"], e.extra["G"])
    ok = col == Ideal([e.extra["G"]], e.ring)
    verdict("AC6a", ok, f"(G^2F) : detJac = ({', '.join(map(str, col.gens))}) for F = (x^2+y^2, x+y^2)")
    assert ok


def test_ac6a_corrected(verdict):
    e = get("jacobian-mixed(corrected=True)")
    col, jac = colon_by_jacobian(e.extra["F"], e.extra["G"])
    ok = col == Ideal([e.extra["G"]], e.ring)
    assert verdict("AC6a'", ok, f"(G^2F) : detJac = ({', '.join(map(str, col.gens))}) for F = (x^2+y^2, x+y)")


def test_ac6b_two_planes(verdict):
    t0 = time.perf_counter()
    e = get("jacobian-two-planes")
    st = general_setup(e.I, 3, 4, seed=0)
    out = jacobian_containment_check(st)
    jac = jacobian_determinant(st.J.gens)
    mem = [(L * st.J).contains(jac) for L in e.extra["primes"]]
    secs = time.perf_counter() - t0
    ok = out["verdict"] == "generates_socle" and all(mem) and secs < 120
    assert verdict("AC6b", ok, f"{out['verdict']}, in (x,y)J {mem[0]}, in (x,z)J {mem[1]}, {secs:.1f}s")


def test_ac7_principal_case(verdict):
    t0 = time.perf_counter()
    results = []
    for k in range(20):
        d = 2 if k < 10 else 3
        rng = generator(k, "ac7")
        gamma, delta = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        e = get(f"g1(gamma={gamma},delta={delta},d={d},seed={k})")
        results.append(bool(g1_socle_check(e.extra["G"], e.extra["F"])))
    secs = time.perf_counter() - t0
    ok = all(results) and secs < 120
    assert verdict("AC7", ok, f"{sum(results)}/20 generate the socle, {secs:.1f}s")


PROPERTY_SUITES = [
    "tests/test_ideal.py::test_intersection_oracle",
    "tests/test_ideal.py::test_colon_oracle",
    "tests/test_ideal.py::test_saturation_oracle",
    "tests/test_groebner.py::test_gb_properties",
    "tests/test_groebner.py::test_syzygies_product_zero",
    "tests/test_resolution.py::test_resolution_properties",
    "tests/test_graded.py::test_actions_commute",
    "tests/test_resolution.py::test_matlis_symmetry_gorenstein",
]


def test_ac8_property_suites(verdict):
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *PROPERTY_SUITES],
                          cwd=HERE.parent, capture_output=True, text=True)
    secs = time.perf_counter() - t0
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    ok = proc.returncode == 0 and secs < 300
    assert verdict("AC8", ok, f"{tail} ({secs:.0f}s)")


def test_ac9_simple_socle(verdict, sliced_2x4):
    setups = {}
    for k in range(3):
        e = get(f"g1(gamma=1,delta=2,d=2,seed={k})")
        setups[e.id] = make_setup(e.I, e.J)
    e = get("g1-toy")
    setups["g1-toy"] = make_setup(e.I, e.J)
    setups["complete-intersection"] = general_setup(get("complete-intersection").I, 2, 2, seed=0)
    setups["jacobian-two-planes"] = general_setup(get("jacobian-two-planes").I, 3, 4, seed=0)
    setups["generic-2x4 (sliced)"] = sliced_2x4[1]
    setups["mystery-module"] = general_setup(get("mystery-module").I, 3, 3, seed=1)
    checked, skipped, bad = [], [], []
    for name, st in setups.items():
        assert st.s == st.ring.n
        if not st.strong_hyp:
            skipped.append(name)
            continue
        checked.append(name)
        if not simple_socle_check(st)["simple"]:
            bad.append(name)
    ok = not bad and len(checked) >= 5
    assert verdict("AC9", ok, f"simple socle on {len(checked)} setups with the strong hypothesis; "
                              f"failures {bad}; hypothesis fails (skipped) {skipped}")
