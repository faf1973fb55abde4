"""Experiment configs: loading and validation."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

SCHEMA_VERSION = 1

CHECKS = ("hypotheses", "duality", "hom", "rees", "socle", "jacobian", "lemma-basic", "codim2-matrix")


class ConfigError(ValueError):
    """Schema violation; the CLI maps it to exit code 2."""


@dataclass
class ExperimentConfig:
    example: str | None = None
    variables: list | None = None
    prime: int = 32003
    I: list | None = None
    J: list | None = None               # explicit generators
    J_general: dict | None = None       # {"s": .., "delta": ..}
    codim2: dict | None = None          # {"A": [[..]], "B": [[..]], "us": [..]}
    checks: list = field(default_factory=lambda: ["hypotheses"])
    seed: int = 0
    us: list | None = None
    budget: dict | None = None
    out: str | None = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("out")
        return {k: v for k, v in d.items() if v is not None}


_KEYS = {"schema_version", "example", "ring", "I", "J", "codim2", "checks", "seed", "us", "budget", "out"}


def parse_checks(items) -> list:
    if isinstance(items, str):
        items = [c for c in items.split(",") if c.strip()]
    out = []
    for c in items:
        c = str(c).strip()
        if c not in CHECKS:
            raise ConfigError(f"unknown check {c!r}; choose from {', '.join(CHECKS)}")
        if c not in out:
            out.append(c)
    return out


def _int(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer")
    return value


def from_dict(doc: dict) -> ExperimentConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    extra = set(doc) - _KEYS
    if extra:
        raise ConfigError(f"unknown config keys: {sorted(extra)}")
    ver = doc.get("schema_version", SCHEMA_VERSION)
    if ver != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {ver}")
    if "seed" not in doc:
        raise ConfigError("seed is mandatory")
    cfg = ExperimentConfig(seed=_int(doc["seed"], "seed"))
    cfg.checks = parse_checks(doc.get("checks", ["hypotheses"]))
    if "example" in doc:
        if not isinstance(doc["example"], str):
            raise ConfigError("example must be a string id")
        if "ring" in doc or "I" in doc:
            raise ConfigError("give either an example id or a ring with I, not both")
        cfg.example = doc["example"]
    elif "codim2" not in doc:
        ring = doc.get("ring")
        if not isinstance(ring, dict) or not isinstance(ring.get("variables"), list):
            raise ConfigError("ring.variables is required without an example id")
        cfg.variables = [str(v) for v in ring["variables"]]
        cfg.prime = _int(ring.get("prime", 32003), "ring.prime")
        I = doc.get("I")
        if not isinstance(I, list) or not I or not all(isinstance(f, str) for f in I):
            raise ConfigError("I must be a non-empty list of polynomial strings")
        cfg.I = I
    J = doc.get("J")
    if isinstance(J, list):
        if not all(isinstance(f, str) for f in J):
            raise ConfigError("J must list polynomial strings")
        cfg.J = J
    elif isinstance(J, dict):
        if set(J) != {"s", "delta"}:
            raise ConfigError("J recipe needs exactly s and delta")
        cfg.J_general = {"s": _int(J["s"], "J.s"), "delta": J["delta"]}
    elif J is not None:
        raise ConfigError("J must be a list or a recipe object")
    if cfg.example is None and cfg.I is not None and cfg.J is None and cfg.J_general is None:
        raise ConfigError("an explicit ideal needs J (generators or recipe)")
    if "codim2" in doc:
        c2 = doc["codim2"]
        if not isinstance(c2, dict) or "A" not in c2 or "B" not in c2:
            raise ConfigError("codim2 needs matrices A and B")
        ring = doc.get("ring")
        if isinstance(ring, dict) and isinstance(ring.get("variables"), list):
            cfg.variables = [str(v) for v in ring["variables"]]
            cfg.prime = _int(ring.get("prime", 32003), "ring.prime")
        elif cfg.example is None:
            raise ConfigError("codim2 matrices need ring.variables")
        cfg.codim2 = c2
    if "us" in doc:
        if not isinstance(doc["us"], list):
            raise ConfigError("us must be a list of integers")
        cfg.us = [_int(u, "us") for u in doc["us"]]
    if "budget" in doc:
        b = doc["budget"]
        if not isinstance(b, dict) or set(b) - {"max_pairs", "max_degree"}:
            raise ConfigError("budget accepts max_pairs and max_degree")
        cfg.budget = {k: _int(v, f"budget.{k}") for k, v in b.items()}
    cfg.out = doc.get("out")
    return cfg


def load(path: str) -> ExperimentConfig:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None
    return from_dict(doc)
