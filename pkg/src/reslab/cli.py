"""Command-line front end: reslab run | list | describe | selftest."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
import time

import numpy as np

from . import __version__
from . import catalog
from .config import CHECKS, SCHEMA_VERSION, ConfigError, ExperimentConfig, from_dict, load, parse_checks
from .groebner import Budget, BudgetExceeded, set_budget
from .ideal import Ideal, ideal_power
from .parse import PolynomialSyntaxError, parse_polynomial
from .ring import PolynomialRing
from .seeding import generator

log = logging.getLogger("reslab")

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_SCHEMA = 2
EXIT_BUDGET = 3


class NotApplicable(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, Ideal):
        return [str(f) for f in obj.gens]
    return obj


def dumps(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=True)


def write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".report-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# building the experiment


class Experiment:
    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self.entry = None
        self.ring = None
        self.I = self.J = None
        self.setup = None
        self._slice = None
        self._reports = None
        self._family = None

    def build(self):
        from .residual import general_setup, make_setup
        cfg = self.cfg
        if cfg.example:
            try:
                self.entry = catalog.get(cfg.example)
            except catalog.UnknownExample as exc:
                raise ConfigError(f"unknown example {exc}") from None
            self.ring, self.I = self.entry.ring, self.entry.I
            self.J = self.entry.J
            recipe = self.entry.J_recipe
        elif cfg.variables is not None:
            self.ring = PolynomialRing(cfg.variables, cfg.prime)
            recipe = None
        if cfg.I is not None:
            self.I = self._ideal(cfg.I)
        if cfg.J is not None:
            self.J = self._ideal(cfg.J)
        if cfg.J_general is not None:
            recipe = cfg.J_general
        if self.I is None:
            return
        if self.J is not None:
            self.setup = make_setup(self.I, self.J, seed=cfg.seed, hypotheses=False)
        elif recipe is not None:
            self.setup = general_setup(self.I, recipe["s"], recipe["delta"], cfg.seed, hypotheses=False)
            self.J = self.setup.J

    def _ideal(self, gens):
        try:
            return Ideal([parse_polynomial(f, self.ring) for f in gens], self.ring)
        except PolynomialSyntaxError as exc:
            raise ConfigError(f"cannot parse polynomial: {exc}") from None

    def need_setup(self):
        if self.setup is None:
            raise NotApplicable("no residual setup (example has no J)")
        if not self.setup.is_residual:
            raise NotApplicable(f"not a residual intersection (codim K = {self.setup.codim_K} < s = {self.setup.s})")
        return self.setup

    def artinian(self):
        from .residual import artinian_slice
        st = self.need_setup()
        if self._slice is None:
            self._slice = artinian_slice(st, self.cfg.seed, hypotheses="hypotheses" in self.cfg.checks)
        return self._slice

    def family(self):
        from .residual import ModuleFamily
        if self._family is None:
            self._family = ModuleFamily(self.artinian())
        return self._family

    def reports(self):
        from .residual import duality_suite
        if self._reports is None:
            st = self.artinian()
            us = self.cfg.us if self.cfg.us is not None else list(range(st.t + 2))
            self._reports = duality_suite(st, us=us, family=self.family())
        return self._reports


# ---------------------------------------------------------------------------
# checks


def check_hypotheses(ex: Experiment) -> dict:
    from .residual import check_hypotheses as hyp
    st = ex.need_setup()
    gs, std, strong, depths = hyp(st.I, st.s, st.t)
    st.gs, st.standard_hyp, st.strong_hyp, st.depths = gs, std, strong, depths
    out = {"setup": st.summary()}
    if st.ring.n > st.s:
        out["slice"] = ex.artinian().summary()
        out["slice_notes"] = {k: v for k, v in ex.artinian().notes.items()}
    return out


def check_lemma(ex: Experiment) -> dict:
    from .residual import check_intersection_lemma
    st = ex.need_setup()
    rows = {u: check_intersection_lemma(st, u) for u in range(1, st.t + 2)}
    return {"is_geometric": st.is_geometric, "holds": rows,
            "all_hold": all(rows.values()),
            "note": None if st.is_geometric else "setup is not geometric; the equality is not claimed"}


def _macaulay_window(ex: Experiment, reports) -> dict | None:
    from .residual import duality_window
    if ex.entry is None or not ex.entry.id.startswith("macaulay"):
        return None
    st = ex.artinian()
    win = duality_window(st.t, st.g, ex.entry.params["w"])
    dual = {r.u: r.omega_verdict for r in reports}
    inside = [u for u in win["window"] if u in dual]
    outside = [u for u in dual if u not in win["window"]]
    inside_pass = any(dual[u] for u in inside)
    outside_fail = any(dual[u] is False for u in outside)
    win.update({"dual_into_omega": dual, "inside_passes": inside_pass, "outside_fails": outside_fail,
                "asymmetric": inside_pass and outside_fail})
    return win


def check_duality(ex: Experiment) -> dict:
    from .resolution import matlis_canonical
    st = ex.artinian()
    reports = ex.reports()
    out = {"D": st.socle_degree, "t": st.t,
           "omega_hf": matlis_canonical(st.K).hilbert_function(),
           "pairings": [r.as_dict() for r in reports],
           "all_perfect": all(r.verdict == "perfect" for r in reports)}
    win = _macaulay_window(ex, reports)
    if win is not None:
        out["window"] = win
    return out


def check_hom(ex: Experiment) -> dict:
    from .residual import omega_duality
    st = ex.artinian()
    fam = ex.family()
    us = ex.cfg.us if ex.cfg.us is not None else list(range(st.t + 2))
    rows = [omega_duality(fam, u, generator(ex.cfg.seed, "iso", u)) for u in us]
    return {"omega_duality": rows}


def check_rees(ex: Experiment) -> dict:
    from .residual import rees_truncation_check
    st = ex.artinian()
    return rees_truncation_check(st, ex.family(), generator(ex.cfg.seed, "rees"), ex.reports())


def check_socle(ex: Experiment) -> dict:
    from .residual import simple_socle_check
    st = ex.need_setup()
    if st.s != st.ring.n:
        raise NotApplicable("needs s = d")
    out = simple_socle_check(st)
    out["strong_hyp"] = st.strong_hyp
    return out


def check_jacobian(ex: Experiment) -> dict:
    from .jacobian import colon_by_jacobian, g1_socle_check, jacobian_containment_check
    e = ex.entry
    if e is not None and e.id.startswith("jacobian-mixed"):
        col, jac = colon_by_jacobian(e.extra["F"], e.extra["G"])
        target = Ideal([parse_polynomial(f, e.ring) for f in e.expected["colon"]], e.ring)
        return {"det_jac": str(jac), "colon": [str(f) for f in col.minimalized().gens],
                "colon_equals_expected": col == target}
    if e is not None and "G" in e.extra and "F" in e.extra:
        v = g1_socle_check(e.extra["G"], e.extra["F"])
        return {"verdict": "generates_socle" if v.generates else "violates", "nonzero": v.nonzero,
                "annihilated": v.annihilated, "socle_dim": v.socle_dim, "scalar_check": v.scalar_check}
    st = ex.need_setup()
    if st.s != st.ring.n:
        raise NotApplicable("needs s = d")
    out = jacobian_containment_check(st)
    if e is not None and "primes" in e.extra:
        from .jacobian import jacobian_determinant
        jac = jacobian_determinant(st.J.gens)
        out["in_LJ"] = {str([str(g) for g in L.gens]): (L * st.J).contains(jac) for L in e.extra["primes"]}
    return out


def check_codim2(ex: Experiment) -> dict:
    from .codim2 import build_residual_matrix_codim2
    cfg = ex.cfg
    us = [1]
    if cfg.codim2 is not None:
        parse = lambda rows: [[parse_polynomial(str(c), ex.ring) for c in r] for r in rows]
        try:
            A, B = parse(cfg.codim2["A"]), parse(cfg.codim2["B"])
        except PolynomialSyntaxError as exc:
            raise ConfigError(f"cannot parse matrix entry: {exc}") from None
        us = cfg.codim2.get("us", us)
    elif ex.entry is not None and "N_poly" in ex.entry.extra:
        N, P = ex.entry.extra["N_poly"], ex.entry.extra["P_poly"]
        A = [list(r) for r in zip(*N)]
        B = [list(r) for r in zip(*P)]
    else:
        raise NotApplicable("no Hilbert-Burch matrices for this input")
    res = build_residual_matrix_codim2(A, B, us=us)
    out = res.as_dict()
    out["I"] = [str(f) for f in res.I.gens]
    if ex.entry is not None and "K_candidate" in ex.entry.extra:
        out["matches_catalog_K"] = res.K == ex.entry.extra["K_candidate"]
        out["matrices"] = ex.entry.matrices
    return out


RUNNERS = {
    "hypotheses": check_hypotheses,
    "lemma-basic": check_lemma,
    "codim2-matrix": check_codim2,
    "duality": check_duality,
    "hom": check_hom,
    "rees": check_rees,
    "socle": check_socle,
    "jacobian": check_jacobian,
}


def run(cfg: ExperimentConfig) -> tuple[dict, int]:
    """Execute the config; returns (report, exit code).  Verdict failures are not errors."""
    if cfg.budget:
        set_budget(Budget(**{**vars(Budget.default()), **cfg.budget}))
    report = {"schema_version": SCHEMA_VERSION, "engine_version": __version__,
              "config": cfg.as_dict(), "checks": {}, "partial": False, "budget_exhausted": None}
    timings = {}
    code = EXIT_OK
    ex = Experiment(cfg)
    try:
        t0 = time.perf_counter()
        try:
            ex.build()
        except BudgetExceeded as exc:
            report.update(partial=True, budget_exhausted=f"setup: {exc}")
            return report, EXIT_BUDGET
        timings["setup"] = time.perf_counter() - t0
        if ex.entry is not None:
            report["example"] = {"id": ex.entry.id, "description": ex.entry.description,
                                 "asserted": {k: list(v) for k, v in ex.entry.asserted.items()},
                                 "expected": ex.entry.expected}
            if ex.entry.id == "semigroup":
                report["example"]["negative_control"] = catalog.semigroup_checks(ex.entry)
        if ex.setup is not None:
            report["setup"] = ex.setup.summary()
            report["retries"] = list(ex.setup.retries)
        order = [c for c in CHECKS if c in cfg.checks]
        for name in order:
            t0 = time.perf_counter()
            try:
                report["checks"][name] = {"status": "ok", **RUNNERS[name](ex)}
            except NotApplicable as exc:
                report["checks"][name] = {"status": "not_applicable", "reason": str(exc)}
            except BudgetExceeded as exc:
                report["checks"][name] = {"status": "budget_exhausted", "reason": str(exc)}
                report.update(partial=True, budget_exhausted=f"{name}: {exc}")
                code = EXIT_BUDGET
                break
            except ConfigError:
                raise
            except (ValueError, ArithmeticError) as exc:
                report["checks"][name] = {"status": "error", "reason": f"{type(exc).__name__}: {exc}"}
            timings[name] = time.perf_counter() - t0
        if ex._slice is not None and ex._slice is not ex.setup:
            report["slice"] = ex._slice.summary()
            report["retries"] = list(ex._slice.retries)
    finally:
        report["timings"] = {k: round(v, 3) for k, v in timings.items()}
        if cfg.budget:
            set_budget(None)
    return report, code


# ---------------------------------------------------------------------------
# text output


def _hf(d) -> str:
    if not d:
        return "0"
    keys = sorted(int(k) for k in d)
    return f"[{keys[0]}] " + ",".join(str(d[str(k)] if str(k) in d else d[k]) for k in keys)


def summary_table(report: dict) -> str:
    lines = []
    ex = report.get("example", {}).get("id") or "explicit input"
    lines.append(f"reslab {report['engine_version']}  {ex}  seed={report['config'].get('seed')}")
    st = report.get("slice") or report.get("setup")
    if st:
        lines.append(f"s={st['s']} g={st['g']} t={st['t']} d={st['d']} codim K={st['codim_K']} "
                     f"residual={st['is_residual']} geometric={st['is_geometric']}")
    rows = []
    for name, res in report["checks"].items():
        status = res.get("status")
        if status != "ok":
            rows.append((name, status, res.get("reason", "")))
            continue
        if name == "hypotheses":
            s = res["setup"]
            rows.append((name, f"standard={s['standard_hyp']} strong={s['strong_hyp']}",
                         f"G_s={s['G_s']['holds']} depths=" + ",".join(
                             f"{j}:{v['depth']}" for j, v in s["depths"].items())))
            if "slice" in res:
                s = res["slice"]
                rows.append(("  slice", f"standard={s['standard_hyp']} strong={s['strong_hyp']}",
                             f"G_s={s['G_s']['holds']} K image matches={res['slice_notes'].get('image_of_K_matches')}"))
        elif name == "duality":
            rows.append((name, "all perfect" if res["all_perfect"] else "not all perfect",
                         f"D={res['D']} omega={_hf(res['omega_hf'])}"))
            for r in res["pairings"]:
                rows.append((f"  u={r['u']}", r["verdict"],
                             f"A={_hf(r['hf_A'])} B={_hf(r['hf_B'])} rank={r['rank_verdict']} "
                             f"hom={r['hom_verdict']} omega={r['omega_verdict']}"))
            if "window" in res:
                w = res["window"]
                rows.append(("  window", f"asymmetric={w['asymmetric']}",
                             f"v={w['v']} u in {w['window']} bounds={w['bounds']}"))
        elif name == "hom":
            for r in res["omega_duality"]:
                rows.append((f"  hom u={r['u']}", f"isomorphic={r['isomorphic']}", f"Hom(B,omega)={_hf(r['hom_hf'])}"))
        elif name == "rees":
            rows.append((name, f"gorenstein={res['gorenstein']}",
                         f"top=omega:{res['top_is_canonical']['isomorphic']} pairings:{res['pairings_perfect']}"))
        elif name == "socle":
            rows.append((name, f"simple={res['simple']}", f"socle dims {res['socle_dims']}"))
        elif name == "lemma-basic":
            rows.append((name, f"all_hold={res['all_hold']}", f"geometric={res['is_geometric']}"))
        elif name == "codim2-matrix":
            rows.append((name, f"codim K={res['codim_K']} colon={res['K_is_colon']}",
                         " ".join(f"u={u}:{'=' if v['equal'] else '!='}" for u, v in res["hf_comparison"].items())))
        elif name == "jacobian":
            verdict = res.get("verdict", res.get("colon_equals_expected"))
            rows.append((name, str(verdict), json.dumps({k: v for k, v in res.items()
                                                        if k in ("in_LJ", "colon", "socle_dim")})))
    w0 = max([len(r[0]) for r in rows] + [5])
    w1 = max([len(r[1]) for r in rows] + [7])
    for a, b, c in rows:
        lines.append(f"{a:<{w0}}  {b:<{w1}}  {c}")
    if report.get("partial"):
        lines.append(f"PARTIAL: budget exhausted ({report['budget_exhausted']})")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# self test


def selftest() -> list:
    """Small fast checks; returns (name, passed) pairs."""
    from .jacobian import check_jacformula
    from .seeding import random_form
    out = []
    rep, _ = run(from_dict({"example": "g1-toy", "seed": 0, "checks": ["duality", "rees", "socle"]}))
    out.append(("g1-toy pairings perfect", rep["checks"]["duality"].get("all_perfect") is True))
    out.append(("g1-toy Rees truncation Gorenstein", rep["checks"]["rees"].get("gorenstein") is True))
    rep, _ = run(from_dict({"example": "mystery-module", "seed": 1, "checks": ["duality"]}))
    d = rep["checks"]["duality"]
    hfs = [list(d["pairings"][1]["hf_A"].values()), list(d["pairings"][2]["hf_A"].values()),
           list(d["omega_hf"].values())]
    out.append(("mystery-module Hilbert functions", hfs == [[3, 4, 3], [5, 2], [6, 3, 1]]))
    R = PolynomialRing(["x", "y"])
    rng = generator(0, "selftest")
    ok = all(check_jacformula(random_form(R, 1, rng), [random_form(R, 2, rng) for _ in range(2)])
             for _ in range(5))
    out.append(("Jacobian product formula", ok))
    return out


# ---------------------------------------------------------------------------
# argparse


def _parser():
    ap = argparse.ArgumentParser(prog="reslab", description="residual intersection experiments")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="run checks on example:<id> or a JSON config file")
    r.add_argument("target")
    r.add_argument("--checks", help=f"comma list from {','.join(CHECKS)}")
    r.add_argument("--seed", type=int)
    r.add_argument("--us", help="comma list of u values for the pairing checks")
    r.add_argument("--out", help="directory for report.json")
    r.add_argument("--json", action="store_true", help="print the JSON report instead of the table")
    sub.add_parser("list", help="list catalog ids")
    d = sub.add_parser("describe", help="describe a catalog entry")
    d.add_argument("id")
    sub.add_parser("selftest", help="run a quick self test")
    return ap


def _config_from_args(args) -> ExperimentConfig:
    if args.target.startswith("example:"):
        doc = {"example": args.target[len("example:"):], "seed": 0 if args.seed is None else args.seed}
        if args.checks:
            doc["checks"] = args.checks
        cfg = from_dict(doc)
    else:
        cfg = load(args.target)
        if args.checks:
            cfg.checks = parse_checks(args.checks)
        if args.seed is not None:
            cfg.seed = args.seed
    if args.us:
        try:
            cfg.us = [int(u) for u in args.us.split(",")]
        except ValueError:
            raise ConfigError("--us takes a comma list of integers") from None
    if args.out:
        cfg.out = args.out
    return cfg


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.cmd == "list":
        for name in catalog.list_examples():
            print(name)
        return EXIT_OK
    if args.cmd == "describe":
        try:
            print(catalog.describe(args.id))
        except catalog.UnknownExample as exc:
            print(f"error: unknown example {exc}", file=sys.stderr)
            return EXIT_SCHEMA
        return EXIT_OK
    if args.cmd == "selftest":
        results = selftest()
        for name, ok in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
        return EXIT_OK if all(ok for _, ok in results) else EXIT_SELFTEST
    try:
        cfg = _config_from_args(args)
        report, code = run(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    text = dumps(report)
    if cfg.out:
        write_atomic(os.path.join(cfg.out, "report.json"), text + "\n")
    print(text if args.json else summary_table(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
