"""Seeded random test systems for the property and cross-check suites.

Instances stay tiny on purpose (n <= 4, r <= 2, few monomials, small
exponents) so that exact counting and the LP scans both finish quickly.
The draw is fully determined by the seed.
"""

from __future__ import annotations

import random

from .model import VarietySpec, serialize_variety_spec, support_system, variety_spec

# exponent coordinates, biased toward small values
_COORDS = (0, 1, 2, 3, 4)
_WEIGHTS = (45, 25, 15, 10, 5)
_NONZERO = tuple(x for x in range(-9, 10) if x != 0)


def _draw_vector(rng: random.Random, n: int) -> tuple[int, ...]:
    return tuple(rng.choices(_COORDS, weights=_WEIGHTS)[0] for _ in range(n))


def _draw_support(rng: random.Random, n: int) -> list[tuple[int, ...]]:
    # no zero vector: constant terms would put the trace formula out of scope
    size = rng.randint(1, 4)
    out: list[tuple[int, ...]] = []
    guard = 0
    while len(out) < size and guard < 200:
        guard += 1
        g = _draw_vector(rng, n)
        if g in out or not any(g):
            continue
        out.append(g)
    if not out:
        out.append(tuple(1 if i == 0 else 0 for i in range(n)))
    return out


def _draw_system(rng: random.Random):
    while True:
        n = rng.randint(1, 4)
        r = rng.randint(1, 2)
        supports = [_draw_support(rng, n) for _ in range(r)]
        covered = {i for gs in supports for g in gs for i, e in enumerate(g, 1) if e}
        if covered == set(range(1, n + 1)):
            return support_system(n, supports)


def generate_corpus(seed: int, count: int) -> list[VarietySpec]:
    """count varieties with random supports and unit-free random coefficients."""
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        system = _draw_system(rng)
        coeffs = {key: rng.choice(_NONZERO) for key in system.coefficient_keys()}
        out.append(variety_spec(system, coeffs))
    return out


def corpus_documents(seed: int, count: int) -> list[dict]:
    """The same corpus as JSON-ready documents."""
    return [serialize_variety_spec(spec) for spec in generate_corpus(seed, count)]
