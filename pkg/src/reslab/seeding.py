"""Reproducible random streams: one top-level seed, one counter-based stream per label."""
from __future__ import annotations

import zlib

import numpy as np


def generator(seed: int, label: str = "", attempt: int = 0) -> np.random.Generator:
    """Philox stream keyed by (seed, crc32(label), attempt)."""
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFF, zlib.crc32(label.encode()), int(attempt)])
    return np.random.Generator(np.random.Philox(ss))


def sub_seed(seed: int, label: str, attempt: int = 0) -> int:
    """A derived integer seed (recorded in reports)."""
    return int(generator(seed, label, attempt).integers(0, 2 ** 31 - 1))


def random_coefficients(rng: np.random.Generator, p: int, size, nonzero: bool = True):
    lo = 1 if nonzero else 0
    return rng.integers(lo, p, size=size)


def random_linear_form(ring, rng, nonzero: bool = True):
    p = ring.p
    c = random_coefficients(rng, p, ring.n, nonzero)
    out = ring.zero()
    for i, ci in enumerate(c):
        out = out + ring.const(int(ci)) * ring.gen(i)
    return out


def random_form(ring, degree: int, rng, nonzero: bool = True):
    """Random homogeneous polynomial of the given degree (all monomials present)."""
    from .poly import Polynomial
    keys = ring.monomials(degree)
    c = random_coefficients(rng, ring.p, len(keys), nonzero)
    return Polynomial(ring, {k: int(v) for k, v in zip(keys, c) if v}, True)
