"""Shared fixtures: the worked examples, random generators, field helpers."""

from __future__ import annotations

import json
import random
from functools import lru_cache
from pathlib import Path

import pytest

from ultragreed.field import FieldSpec, field_make, is_prime
from ultragreed.geg import VectorFamily
from ultragreed.laurent import Laurent, from_terms
from ultragreed.ultra import UltraTriple

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# GF(p^n) orders we can build without a user-supplied modulus
EXTENSION_ORDERS = {4: (2, 2), 8: (2, 3), 9: (3, 2), 16: (2, 4), 25: (5, 2),
                    27: (3, 3), 32: (2, 5), 49: (7, 2), 64: (2, 6)}


def load_fixture(name: str) -> dict:
    with open(FIXTURES / name, "r", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture
def bhargava1() -> UltraTriple:
    return UltraTriple.from_json(load_fixture("bhargava1.json"))


@pytest.fixture
def bhargava0() -> UltraTriple:
    return UltraTriple.from_json(load_fixture("bhargava0.json"))


@pytest.fixture
def matrix2_gf7() -> VectorFamily:
    return VectorFamily.from_json(load_fixture("geg_matrix2_gf7.json"))


def make_field(q: int) -> FieldSpec:
    if q in EXTENSION_ORDERS:
        p, n = EXTENSION_ORDERS[q]
        return field_make(p, n)
    return field_make(q)


def available_order(v: int) -> int:
    """Smallest constructible field order >= max(2, v)."""
    q = max(2, v)
    while not (is_prime(q) or q in EXTENSION_ORDERS):
        q += 1
    return q


def random_ultrametric(rng: random.Random, size: int,
                       weight_range: tuple[int, int] = (-5, 5)) -> UltraTriple:
    """Hierarchically generated ultrametric with random integer weights."""
    labels = list(range(size))
    weights = {x: rng.randint(*weight_range) for x in labels}
    dist = [[0] * size for _ in range(size)]

    def fill(group: list[int], alpha: int) -> None:
        if len(group) <= 1:
            return
        pool = group[:]
        rng.shuffle(pool)
        nparts = rng.randint(2, len(pool))
        cuts = sorted(rng.sample(range(1, len(pool)), nparts - 1))
        parts, prev = [], 0
        for cut in cuts + [len(pool)]:
            parts.append(pool[prev:cut])
            prev = cut
        for i, pa in enumerate(parts):
            for pb in parts[i + 1:]:
                for a in pa:
                    for b in pb:
                        dist[a][b] = dist[b][a] = alpha
        for pa in parts:
            fill(pa, alpha - rng.randint(1, 3))

    fill(labels, rng.randint(-3, 6))
    return UltraTriple(labels, weights, dist)


def random_laurent(rng: random.Random, spec: FieldSpec, *,
                   max_terms: int = 6, exp_range: tuple[int, int] = (-10, 10),
                   nonneg: bool = False) -> Laurent:
    lo, hi = exp_range
    if nonneg:
        lo = max(lo, 0)
    pairs = []
    for _ in range(rng.randint(0, max_terms)):
        coeff = spec.element_from_index(rng.randrange(1, spec.q))
        pairs.append((rng.randint(lo, hi), coeff))
    return from_terms(spec, pairs)


def random_nonzero_laurent(rng: random.Random, spec: FieldSpec, **kw) -> Laurent:
    while True:
        a = random_laurent(rng, spec, **kw)
        if a:
            return a


@lru_cache(maxsize=1)
def triple_corpus() -> tuple[UltraTriple, ...]:
    """200 seeded random triples with |E| <= 8; shared across the suite."""
    rng = random.Random(20260809)
    return tuple(random_ultrametric(rng, rng.randint(1, 8)) for _ in range(200))
