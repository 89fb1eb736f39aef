"""Support systems, variety specs, subset pairs, and the JSON interchange."""

from __future__ import annotations

from fractions import Fraction

import pytest

from axdiv import (
    SpecError,
    enumerate_subset_pairs,
    parse_variety_spec,
    restrict_support,
    serialize_variety_spec,
    subset_pair,
    support_system,
    unit_variety,
    variety_spec,
    variety_spec_to_json,
)


def test_support_system_normalizes_and_sorts():
    s = support_system(3, [[(0, 2, 2), (3, 3, 0)]])
    assert s.supports == (((0, 2, 2), (3, 3, 0)),)
    assert s.r == 1
    assert s.degrees() == (6,)
    assert s.max_coordinate() == 3
    assert s.covered_variables() == frozenset({1, 2, 3})


def test_support_system_coefficient_key_order(ex2_system):
    # Keys follow the sorted support order, polynomial by polynomial.
    assert ex2_system.coefficient_keys() == ((1, (0, 2, 2)), (1, (3, 3, 0)))


@pytest.mark.parametrize("n, supports", [
    (0, [[(1,)]]),
    (2, []),
    (2, [[]]),
    (2, [[(1,)]]),
    (2, [[(1, -1)]]),
    (2, [[(1, 0), (1, 0)]]),
])
def test_support_system_rejects_bad_shapes(n, supports):
    with pytest.raises(ValueError):
        support_system(n, supports)


def test_variety_spec_coerces_and_validates(ex2_system):
    V = variety_spec(ex2_system, {(1, (3, 3, 0)): 2, (1, (0, 2, 2)): "1/3"})
    assert V.coefficients[(1, (3, 3, 0))] == Fraction(2)
    assert V.coefficients[(1, (0, 2, 2))] == Fraction(1, 3)
    with pytest.raises(ValueError):
        variety_spec(ex2_system, {(1, (3, 3, 0)): 1})  # missing key
    with pytest.raises(ValueError):
        variety_spec(ex2_system, {(1, (3, 3, 0)): 1, (1, (0, 2, 2)): 0})
    with pytest.raises(ValueError):
        variety_spec(ex2_system, {(1, (3, 3, 0)): 1, (1, (0, 2, 2)): 1,
                                  (1, (9, 9, 9)): 1})


def test_unit_variety(ex2_system):
    V = unit_variety(ex2_system)
    assert all(c == 1 for c in V.coefficients.values())
    assert set(V.coefficients) == set(ex2_system.coefficient_keys())


def test_subset_pair_sorts_and_validates():
    pair = subset_pair([2, 1], [3, 1])
    assert pair.B == (1, 2)
    assert pair.C == (1, 3)
    with pytest.raises(ValueError):
        subset_pair([], [1])
    with pytest.raises(ValueError):
        subset_pair([1], [0])


def test_restrict_support(ex2_system):
    # Vectors stay full length; only those supported inside C survive.
    assert restrict_support(ex2_system, 1, [1, 2]) == ((3, 3, 0),)
    assert restrict_support(ex2_system, 1, [2, 3]) == ((0, 2, 2),)
    assert restrict_support(ex2_system, 1, [1, 2, 3]) == ((0, 2, 2), (3, 3, 0))
    assert restrict_support(ex2_system, 1, [1]) == ()


def test_enumerate_subset_pairs_count_and_order():
    pairs = enumerate_subset_pairs(3, 2)
    assert len(pairs) == (2 ** 2 - 1) * (2 ** 3 - 1)
    assert pairs[0] == subset_pair([1], [1])
    # Within a fixed B the C subsets appear by size then lexicographically.
    first_b = [pair for pair in pairs if pair.B == (1,)]
    sizes = [len(pair.C) for pair in first_b]
    assert sizes == sorted(sizes)
    assert len(set(pairs)) == len(pairs)


def test_parse_serialize_round_trip(ex2_variety):
    doc = serialize_variety_spec(ex2_variety)
    assert parse_variety_spec(doc) == ex2_variety
    assert parse_variety_spec(variety_spec_to_json(ex2_variety)) == ex2_variety
    # Serialization is deterministic.
    assert variety_spec_to_json(ex2_variety) == variety_spec_to_json(
        parse_variety_spec(variety_spec_to_json(ex2_variety)))


@pytest.mark.parametrize("document, path", [
    ("[1]", "$"),
    ('{"n": 2}', "$"),
    ('{"n": 2, "polynomials": [], "extra": 1}', "$"),
    ('{"n": true, "polynomials": []}', "$.n"),
    ('{"n": 2, "polynomials": []}', "$.polynomials"),
    ('{"n": 2, "polynomials": [{"support": [[1, 0]]}]}', "$.polynomials[0]"),
    ('{"n": 2, "polynomials": [{"support": [[1]], "coefficients": ["1"]}]}',
     "$.polynomials[0].support[0]"),
    ('{"n": 2, "polynomials": [{"support": [[1, 0], [1, 0]],'
     ' "coefficients": ["1", "2"]}]}', "$.polynomials[0].support[1]"),
    ('{"n": 2, "polynomials": [{"support": [[1, 0]], "coefficients": ["0"]}]}',
     "$.polynomials[0].coefficients[0]"),
    ('{"n": 2, "polynomials": [{"support": [[1, 0]], "coefficients": [1]}]}',
     "$.polynomials[0].coefficients[0]"),
])
def test_parse_errors_name_the_offending_path(document, path):
    with pytest.raises(SpecError) as err:
        parse_variety_spec(document)
    assert str(err.value).startswith(path + ":")


def test_parse_accepts_fraction_strings():
    V = parse_variety_spec(
        '{"n": 1, "polynomials": [{"support": [[2]], "coefficients": ["-3/7"]}]}')
    assert V.coefficients[(1, (2,))] == Fraction(-3, 7)
