import math
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from oracles import cf_by_floors
from planar_resistance import (
    Decomposition,
    bounded_type_pool,
    cost_report,
    decompose_search,
    decompose_trivial,
    quotient_sum,
)
from planar_resistance.decompose import _splits, _splits_slow

targets = st.fractions(min_value=0, max_value=1, max_denominator=10**5).filter(lambda q: q < 1)


def floor_sum(q: Fraction) -> int:
    return sum(cf_by_floors(q))


def best_two_term(target: Fraction, max_den: int) -> int:
    """Cheapest ``q + r`` with ``|q|`` of denominator ``<= max_den``, by brute force."""
    best = floor_sum(target)
    for b in range(2, max_den + 1):
        for a in range(1, b):
            if gcd(a, b) != 1:
                continue
            for q in (Fraction(a, b), -Fraction(a, b)):
                r = target - q
                if 0 < abs(r) < 1:
                    best = min(best, floor_sum(abs(q)) + floor_sum(abs(r)))
    return best


@pytest.mark.parametrize(
    "target, parts, cost",
    [(Fraction(0), (), 0), (Fraction(1, 2), (Fraction(1, 2),), 2), (Fraction(4, 7), (Fraction(4, 7),), 5)],
)
def test_trivial_examples(target, parts, cost):
    d = decompose_trivial(target)
    assert d.parts == parts and d.cost == cost


def test_search_small_examples():
    assert decompose_search(Fraction(0)).parts == ()
    half = decompose_search(Fraction(1, 2))
    assert half.parts == (Fraction(1, 2),) and half.cost == 2
    assert best_two_term(Fraction(1, 2), 4) == 2


# 1/F for Fibonacci F: the cheapest two-term split with a part of
# denominator <= 16, found by brute force; the search matches it.
FIBONACCI_FIXTURES = {8: 7, 13: 10, 21: 8, 34: 12, 55: 12}


@pytest.mark.parametrize("F, cost", sorted(FIBONACCI_FIXTURES.items()))
def test_fibonacci_family(F, cost):
    target = Fraction(1, F)
    assert best_two_term(target, 16) == cost
    d = decompose_search(target)
    assert d.cost == cost < quotient_sum(target) == F


def test_budgets_and_domain():
    with pytest.raises(ValueError):
        decompose_search(Fraction(1))
    with pytest.raises(ValueError):
        decompose_search(Fraction(-1, 3))
    with pytest.raises(ValueError):
        decompose_search(Fraction(1, 3), max_den=0)
    assert decompose_search(Fraction(1, 89), max_terms=1).parts == (Fraction(1, 89),)


def test_decomposition_invariants():
    with pytest.raises(ValueError):
        Decomposition(Fraction(1, 2), (Fraction(1, 3),))
    with pytest.raises(ValueError):
        Decomposition(Fraction(1, 2), (Fraction(3, 2), Fraction(-1)))
    d = Decomposition(Fraction(1, 8), (Fraction(-1, 2), Fraction(5, 8)))
    assert d.cost == 2 + 5
    assert d.to_json() == {"target": "1/8", "parts": ["-1/2", "5/8"], "cost": 7}


def bounded(x: Fraction, m: int) -> bool:
    quotients = cf_by_floors(x)[1:]
    # the alternate form [..., a - 1, 1] counts as well
    alternate = quotients[:-1] + [quotients[-1] - 1, 1]
    return max(quotients) <= m or max(alternate) <= m


def test_pool_is_bounded_type():
    pool = bounded_type_pool(30, 3)
    brute = {
        Fraction(a, b)
        for b in range(2, 31)
        for a in range(1, b)
        if gcd(a, b) == 1 and bounded(Fraction(a, b), 3)
    }
    assert {x for x, _ in pool} == brute
    assert all(s == floor_sum(x) for x, s in pool)
    keys = [(s, x.denominator, x) for x, s in pool]
    assert keys == sorted(keys)


def test_fast_and_slow_splits_agree(rng):
    pool = bounded_type_pool(64, 4)
    for _ in range(60):
        c = rng.randint(2, 10**5)
        target = Fraction(rng.randint(0, c - 1), c)
        if target == 0:
            continue
        ceiling = quotient_sum(target)
        assert _splits(target, 64, 4, ceiling, 8) == _splits_slow(target, pool, ceiling, 8)


def test_cost_report():
    rep = cost_report([Fraction(0), Fraction(1, 2)])
    zero, half = rep["rows"]
    assert zero["skipped"] and zero["ratio"] is None
    assert half["cost"] == 2
    assert half["ratio"] == pytest.approx(2 / math.log(3))
    assert rep["summary"]["skipped"] == 1


@given(targets)
def test_validity_and_dominance(target):
    d = decompose_search(target)
    assert sum(d.parts, Fraction(0)) == target
    assert all(-1 < p < 1 for p in d.parts)
    assert d.cost == sum(floor_sum(abs(p)) for p in d.parts)
    assert d.cost <= decompose_trivial(target).cost
    assert decompose_search(target) == d
