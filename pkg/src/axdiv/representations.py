"""Rational representations, denominators, multiplicities, and the conditional number.

A rational representation of (t, v) writes v = (1/d) * sum r_g * g with
nonnegative integers r_g, per-polynomial sums matching t, and d jointly
coprime to the r_g.  Representations are read off the vertices of the level-1
fiber; D collects the occurring denominators, and when D = {1} the signed
count of integral fiber points over K is the conditional number c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .geometry import enumerate_integral_points, enumerate_vertices, fiber_polytope
from .lattice import LatticePair, MinimalData, minimal_data
from .model import CoefficientKey, SupportSystem


@dataclass(frozen=True)
class RationalRepresentation:
    """v = (1/d) * sum r_g * g over the restricted generators of the pair."""

    d: int
    gens: tuple[CoefficientKey, ...]
    r_coeffs: tuple[int, ...]


@dataclass(frozen=True)
class ConditionalReport:
    D_set: frozenset[int]
    c_value: int | None  # None means undefined (D != {1})
    multiplicities: Mapping[LatticePair, int]
    sparsity: bool
    warnings: tuple[str, ...]


def _level1_fiber(system: SupportSystem, lp: LatticePair):
    return fiber_polytope(system, lp.pair, lp.t, lp.v, level=1)


def rational_representations(system: SupportSystem, lp: LatticePair
                             ) -> list[RationalRepresentation]:
    """Vertex-derived representations of a minimal lattice pair.

    Each fiber vertex u, written jointly in lowest terms as r/d, gives one
    representation.  A positive-dimensional fiber has further non-vertex
    representations; callers that care receive a warning via the conditional
    report.
    """
    fiber = _level1_fiber(system, lp)
    vertices, dim = enumerate_vertices(fiber)
    if dim < 0:
        raise RuntimeError(f"infeasible fiber for {lp}, violating its invariant")
    out = []
    for u in vertices:
        d = math.lcm(*(x.denominator for x in u)) if u else 1
        r = tuple(int(x * d) for x in u)
        out.append(RationalRepresentation(d, fiber.gens, r))
    return out


def denominator_set(system: SupportSystem, data: MinimalData | None = None) -> frozenset[int]:
    """Denominators of all vertex representations over Zmin, together with 1.

    1 is always adjoined: it never changes the admissibility modulus
    lcm(D) when other denominators are present, and it keeps the set
    meaningful for systems whose minimal fibers are all fractional.
    """
    if data is None:
        data = minimal_data(system)
    out = {1}
    for pairs in data.zmin.values():
        for lp in pairs:
            for rep in rational_representations(system, lp):
                out.add(rep.d)
    return frozenset(out)


def check_sparsity_criterion(system: SupportSystem, data: MinimalData | None = None) -> bool:
    """True when every minimal level-1 fiber is a single integral point.

    This is the checkable sufficient condition for D = {1}: a zero-dimensional
    fiber with an integral vertex admits no fractional representation at all.
    """
    if data is None:
        data = minimal_data(system)
    for pairs in data.zmin.values():
        for lp in pairs:
            vertices, dim = enumerate_vertices(_level1_fiber(system, lp))
            if dim != 0:
                return False
            if any(x.denominator != 1 for x in vertices[0]):
                return False
    return True


def conditional_number(system: SupportSystem, data: MinimalData | None = None
                       ) -> ConditionalReport:
    """D, multiplicities, sparsity verdict, and c = sum over K of
    (-1)^{w_Z} * sum of multiplicities, defined only when D = {1}."""
    if data is None:
        data = minimal_data(system)
    warnings: list[str] = []
    denominators = {1}
    multiplicities: dict[LatticePair, int] = {}
    for pair, w in data.K:
        for lp in data.zmin[pair]:
            fiber = _level1_fiber(system, lp)
            vertices, dim = enumerate_vertices(fiber)
            if dim > 0:
                warnings.append(
                    f"fiber of (t={lp.t}, v={lp.v}) at {pair.B}/{pair.C} has dimension {dim}; "
                    "vertex denominators understate the representation set")
            for u in vertices:
                d = math.lcm(*(x.denominator for x in u)) if u else 1
                denominators.add(d)
            multiplicities[lp] = len(enumerate_integral_points(fiber))
    D = frozenset(denominators)
    c: int | None = None
    if D == {1}:
        c = 0
        for pair, w in data.K:
            c += (-1) ** w * sum(multiplicities[lp] for lp in data.zmin[pair])
    sparsity = check_sparsity_criterion(system, data)
    return ConditionalReport(D, c, multiplicities, sparsity, tuple(warnings))


def _is_prime(x: int) -> bool:
    if x < 2:
        return False
    if x < 4:
        return True
    if x % 2 == 0:
        return False
    f = 3
    while f * f <= x:
        if x % f == 0:
            return False
        f += 2
    return True


def default_theta(system: SupportSystem) -> int:
    """Heuristic size threshold: twice the largest coordinate times r.

    Large enough that distinct points of the enumerated windows stay distinct
    mod p for every admitted prime; overridable wherever it is consumed.
    """
    return 2 * system.r * system.max_coordinate()


def admissible_primes(D_set: frozenset[int] | set[int], theta: int, limit: int) -> list[int]:
    """Primes p <= limit with p > theta and p = 1 mod lcm(D)."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    modulus = math.lcm(*D_set) if D_set else 1
    return [p for p in range(2, limit + 1)
            if _is_prime(p) and p > theta and p % modulus == 1 % modulus]
