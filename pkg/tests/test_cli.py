import json

import pytest

from reslab import cli
from reslab.config import ConfigError, ExperimentConfig, from_dict, load, parse_checks


def _write(tmp_path, doc, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_run_mystery_report(tmp_path, capsys):
    code = cli.main(["run", "example:mystery-module", "--checks", "duality,hom", "--seed", "1",
                     "--out", str(tmp_path)])
    assert code == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "duality" in out
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["schema_version"] == 1 and rep["config"]["seed"] == 1
    d = rep["checks"]["duality"]
    assert d["status"] == "ok"
    hom = rep["checks"]["hom"]
    assert hom["status"] == "ok"
    assert rep["example"]["expected"]["hf_omega"] == [6, 3, 1]


def test_report_round_trip():
    report, code = cli.run(from_dict({"example": "g1-toy", "seed": 0, "checks": ["duality", "rees", "socle"]}))
    assert code == 0
    text = cli.dumps(report)
    assert cli.dumps(json.loads(text)) == text


def test_replay_identical_body():
    cfg = {"example": "mystery-module", "seed": 3, "checks": ["hypotheses", "duality"]}
    a, _ = cli.run(from_dict(cfg))
    b, _ = cli.run(from_dict(cfg))
    a.pop("timings"), b.pop("timings")
    assert cli.dumps(a) == cli.dumps(b)


def test_explicit_ring_config(tmp_path):
    path = _write(tmp_path, {"schema_version": 1, "seed": 0, "ring": {"variables": ["x", "y"]},
                             "I": ["x"], "J": ["x^2", "x*y"], "checks": ["duality", "socle"]})
    report, code = cli.run(load(path))
    assert code == 0
    assert report["checks"]["duality"]["all_perfect"]
    assert report["checks"]["socle"]["simple"]


def test_verdict_failure_is_not_an_error():
    # rank test does not apply and the pairing fails, still exit 0
    report, code = cli.run(from_dict({"example": "mystery-module", "seed": 1, "checks": ["duality", "socle"]}))
    assert code == 0
    assert not report["checks"]["duality"]["all_perfect"]
    assert report["checks"]["socle"]["status"] == "ok"


def test_not_applicable():
    report, code = cli.run(from_dict({"example": "semigroup", "seed": 0, "checks": ["duality"]}))
    assert code == 0
    assert report["checks"]["duality"]["status"] == "not_applicable"
    assert report["example"]["negative_control"]["colon_equals_I"] is False


def test_budget_exit(tmp_path):
    path = _write(tmp_path, {"example": "generic-2x4", "seed": 0, "checks": ["duality"],
                             "budget": {"max_pairs": 5}})
    assert cli.main(["run", path, "--out", str(tmp_path)]) == cli.EXIT_BUDGET
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["partial"] and rep["budget_exhausted"]


def test_budget_env(monkeypatch):
    monkeypatch.setenv("RESLAB_BUDGET", "max_pairs=5")
    _, code = cli.run(from_dict({"example": "generic-2x4", "seed": 0, "checks": ["duality"]}))
    assert code == cli.EXIT_BUDGET


@pytest.mark.parametrize("doc", [
    {"example": "g1-toy"},                                     # no seed
    {"example": "g1-toy", "seed": 0, "colour": 1},             # unknown key
    {"example": "g1-toy", "seed": 0, "schema_version": 9},
    {"example": "g1-toy", "seed": "0"},
    {"example": "g1-toy", "seed": 0, "checks": ["nope"]},
    {"seed": 0, "ring": {"variables": ["x"]}, "I": ["x"]},    # no J
    {"seed": 0, "I": ["x"]},                                  # no ring
    {"example": "g1-toy", "seed": 0, "J": {"s": 2}},
    {"example": "g1-toy", "seed": 0, "budget": {"max_time": 4}},
    [1, 2],
])
def test_schema_errors(doc):
    with pytest.raises(ConfigError):
        from_dict(doc)


def test_schema_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["run", str(bad)]) == cli.EXIT_SCHEMA
    assert cli.main(["run", "example:bogus"]) == cli.EXIT_SCHEMA
    assert cli.main(["run", "example:g1-toy", "--checks", "dual"]) == cli.EXIT_SCHEMA
    assert cli.main(["run", "example:g1-toy", "--us", "a,b"]) == cli.EXIT_SCHEMA
    path = _write(tmp_path, {"seed": 0, "ring": {"variables": ["x"]}, "I": ["x+"], "J": ["x"]})
    assert cli.main(["run", path]) == cli.EXIT_SCHEMA
    assert cli.main(["describe", "bogus"]) == cli.EXIT_SCHEMA
    assert cli.main(["run", str(tmp_path / "missing.json")]) == cli.EXIT_SCHEMA


def test_parse_checks():
    assert parse_checks("duality,hom,duality") == ["duality", "hom"]
    assert parse_checks([]) == []


def test_config_as_dict():
    cfg = ExperimentConfig(example="g1-toy", seed=2, out="/tmp/x")
    d = cfg.as_dict()
    assert "out" not in d and d["seed"] == 2 and "I" not in d


def test_list_describe(capsys):
    assert cli.main(["list"]) == 0
    names = capsys.readouterr().out.split()
    assert len(names) >= 6 and "mystery-module" in names
    assert cli.main(["describe", "mystery-module"]) == 0
    assert "source:" in capsys.readouterr().out


def test_selftest(capsys):
    assert cli.main(["selftest"]) == cli.EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines and all(l.startswith("PASS") for l in lines)


def test_codim2_config():
    doc = {"seed": 0, "ring": {"variables": ["a", "b", "c"]}, "checks": ["codim2-matrix"],
           "codim2": {"A": [["a", "b"]], "B": [["a+c", "b"], ["c", "a"]]}}
    report, code = cli.run(from_dict(doc))
    assert code == 0
    c = report["checks"]["codim2-matrix"]
    assert c["status"] == "ok" and c["codim_ok"] and c["K_is_colon"]


def test_codim2_bad_shape_recorded():
    doc = {"seed": 0, "ring": {"variables": ["a", "b", "c"]}, "checks": ["codim2-matrix"],
           "codim2": {"A": [["a", "b", "c"]], "B": [["a", "0", "0"], ["0", "b", "0"]]}}
    report, code = cli.run(from_dict(doc))
    assert code == 0
    assert report["checks"]["codim2-matrix"]["status"] == "error"
