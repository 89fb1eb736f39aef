"""Exact LP, minimal dilation, and fiber polytope enumeration."""

from __future__ import annotations

from fractions import Fraction

import pytest
from helpers import naive_fiber_points

from axdiv import (
    InfeasibleError,
    UnboundedError,
    enumerate_integral_points,
    enumerate_vertices,
    fiber_feasible,
    fiber_polytope,
    lp_feasible,
    lp_minimize,
    minimal_dilation,
    rational_lp,
    subset_pair,
    support_system,
)


def test_lp_minimize_exact_rational_optimum():
    # 2x + y = 4, x + 3y = 6, minimize x + y: solution (6/5, 8/5).
    lp = rational_lp([[2, 1], [1, 3]], [4, 6], [1, 1])
    value, x = lp_minimize(lp)
    assert value == Fraction(14, 5)
    assert x == (Fraction(6, 5), Fraction(8, 5))


def test_lp_minimize_unbounded():
    lp = rational_lp([[0, 1]], [1], [-1, 0])
    with pytest.raises(UnboundedError):
        lp_minimize(lp)


def test_lp_minimize_infeasible_raises_with_certificate():
    lp = rational_lp([[1, 1], [1, 1]], [1, 2], [1, 1])
    with pytest.raises(InfeasibleError) as err:
        lp_minimize(lp)
    assert err.value.certificate is not None


def test_feasibility_witness_is_exact():
    lp = rational_lp([[3, 1, 0], [1, 0, 2]], [5, 3])
    verdict = lp_feasible(lp)
    assert verdict.feasible
    x = verdict.witness
    assert all(xi >= 0 for xi in x)
    for row, b in zip(lp.rows, lp.rhs):
        assert sum(c * xi for c, xi in zip(row, x)) == b


def test_farkas_certificate_separates():
    # x + y = 1 and x + y = 2 cannot both hold for x, y >= 0.
    lp = rational_lp([[1, 1], [1, 1]], [1, 2])
    verdict = lp_feasible(lp)
    assert not verdict.feasible
    y = verdict.certificate
    assert y is not None
    # y.rows <= 0 componentwise while y.rhs > 0 certifies infeasibility.
    for col in range(2):
        assert sum(yi * lp.rows[i][col] for i, yi in enumerate(y)) <= 0
    assert sum(yi * b for yi, b in zip(y, lp.rhs)) > 0


def test_minimal_dilation_goldens():
    # Lifted support of the two-monomial cube example with the origin adjoined.
    delta = [(3, 3, 0, 1), (0, 2, 2, 1)]
    assert minimal_dilation(delta, (3, 5, 2, 2)) == 2
    assert minimal_dilation([(1, 1)], (1, 1)) == 1
    assert minimal_dilation([(2, 0)], (1, 1)) is None
    assert minimal_dilation([(2, 0)], (0, 0)) == 0


def test_minimal_dilation_scales_linearly():
    delta = [(3, 3, 0, 1), (0, 2, 2, 1)]
    base = minimal_dilation(delta, (3, 5, 2, 2))
    for k in (2, 3, 5):
        scaled = minimal_dilation(delta, tuple(k * x for x in (3, 5, 2, 2)))
        assert scaled == k * base


def test_minimal_dilation_rejects_empty():
    with pytest.raises(ValueError):
        minimal_dilation([], (1,))


def test_fiber_polytope_shape(ex2_system):
    pair = subset_pair([1], [2, 3])
    f = fiber_polytope(ex2_system, pair, (1,), (0, 2, 2))
    # Only the generator supported inside C becomes a variable.
    assert f.gens == ((1, (0, 2, 2)),)
    with pytest.raises(ValueError):
        fiber_polytope(ex2_system, pair, (1,), (1, 2, 2))  # nonzero off C
    with pytest.raises(ValueError):
        fiber_polytope(ex2_system, pair, (1, 1), (0, 2, 2))


def test_fiber_feasible_matches_rational_membership(ex2_system):
    pair = subset_pair([1], [2, 3])
    assert fiber_feasible(ex2_system, pair, (1,), (0, 2, 2)).feasible
    assert not fiber_feasible(ex2_system, pair, (1,), (0, 5, 2)).feasible
    assert not fiber_feasible(ex2_system, pair, (-1,), (0, -2, -2)).feasible


def test_enumerate_integral_points_goldens(ex2_system):
    # Level-2 fiber over (2, (3, 5, 2)): both generators forced once.
    f = fiber_polytope(ex2_system, subset_pair([1], [1, 2, 3]), (2,), (3, 5, 2), level=2)
    assert enumerate_integral_points(f) == [(1, 1)]
    # One restricted generator, scaled by 4: the single variable carries it all.
    f = fiber_polytope(ex2_system, subset_pair([1], [2, 3]), (4,), (0, 8, 8), level=4)
    assert enumerate_integral_points(f) == [(4,)]
    f = fiber_polytope(ex2_system, subset_pair([1], [2, 3]), (1,), (0, 1, 2))
    assert enumerate_integral_points(f) == []


@pytest.mark.parametrize("n, supports, B, C, t, v", [
    (3, [[(3, 3, 0), (0, 2, 2)]], [1], [1, 2, 3], (2,), (3, 5, 2)),
    (3, [[(3, 3, 0), (0, 2, 2)]], [1], [2, 3], (3,), (0, 6, 6)),
    (2, [[(3, 1), (1, 3)]], [1], [1, 2], (2,), (4, 4)),
    (2, [[(3, 1), (1, 3)]], [1], [1, 2], (4,), (8, 8)),
    (2, [[(2, 0), (1, 1), (0, 2)]], [1], [1, 2], (3,), (3, 3)),
    (2, [[(2, 0), (0, 1)], [(1, 1)]], [1, 2], [1, 2], (2, 1), (3, 2)),
])
def test_integral_points_match_naive_oracle(n, supports, B, C, t, v):
    system = support_system(n, supports)
    pair = subset_pair(B, C)
    f = fiber_polytope(system, pair, t, v)
    assert enumerate_integral_points(f) == naive_fiber_points(system, pair, t, v)


def test_enumerate_vertices_goldens(ex2_system, skew_system):
    f = fiber_polytope(skew_system, subset_pair([1], [1, 2]), (1,), (2, 2))
    vertices, dim = enumerate_vertices(f)
    assert vertices == [(Fraction(1, 2), Fraction(1, 2))]
    assert dim == 0
    f = fiber_polytope(ex2_system, subset_pair([1], [2, 3]), (1,), (0, 2, 2))
    vertices, dim = enumerate_vertices(f)
    assert vertices == [(Fraction(1),)]
    assert dim == 0
    f = fiber_polytope(ex2_system, subset_pair([1], [2, 3]), (1,), (0, 1, 2))
    vertices, dim = enumerate_vertices(f)
    assert vertices == []
    assert dim == -1


def test_vertices_are_feasible_and_extreme(ex2_system):
    # A one-dimensional fiber: level 2 over the doubled mixed target.
    f = fiber_polytope(ex2_system, subset_pair([1], [1, 2, 3]), (2,), (3, 5, 2), level=2)
    vertices, dim = enumerate_vertices(f)
    assert dim >= 0
    rows = [[Fraction(1) for _ in f.gens]]
    rhs = [Fraction(2)]
    for i in f.pair.C:
        rows.append([Fraction(g[i - 1]) for _, g in f.gens])
        rhs.append(Fraction(f.v[i - 1]))
    for vert in vertices:
        assert all(x >= 0 for x in vert)
        for row, b in zip(rows, rhs):
            assert sum(c * x for c, x in zip(row, vert)) == b
    # No vertex is the midpoint of two others.
    for i, a in enumerate(vertices):
        for j, b in enumerate(vertices):
            for k, c in enumerate(vertices):
                if i not in (j, k) and j < k:
                    mid = tuple((x + y) / 2 for x, y in zip(b, c))
                    assert mid != a
