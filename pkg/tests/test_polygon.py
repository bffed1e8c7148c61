import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from oracles import brute_lower_hull
from slopecalc.errors import DegenerateHullError, DimensionMismatchError, SchemaError
from slopecalc.polygon import (INF, SlopeMultiset, dsum, dual, is_symmetric, lies_on_or_above,
                               lower_hull, scale_mult, total_slope)

S = SlopeMultiset.from_pairs


def test_hull_examples():
    assert lower_hull([(0, 0), (1, 0), (2, 1)]) == S([(0, 1), (1, 1)])
    assert lower_hull([(0, 1), (1, INF), (2, 0)]) == S([(F(-1, 2), 2)])
    pts = [(0, 0), (1, 5), (2, 1), (3, 0), (4, 2)]
    expected = brute_lower_hull(pts)
    assert expected == [0, 0, 0, 2]
    assert lower_hull(pts) == S([(0, 3), (2, 1)])


def test_hull_rejects_infinite_endpoints():
    with pytest.raises(DegenerateHullError):
        lower_hull([(0, INF), (1, 0)])
    with pytest.raises(DegenerateHullError):
        lower_hull([(0, 0), (1, float("inf"))])


def test_hull_matches_brute_force_on_random_points():
    rng = random.Random(0)
    for _ in range(300):
        n = rng.randint(1, 7)
        vals = [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n + 1)]
        for i in range(1, n):
            if rng.random() < 0.25:
                vals[i] = None
        pts = list(enumerate(vals))
        got = lower_hull([(i, INF if v is None else v) for i, v in pts])
        assert got.slopes() == brute_lower_hull(pts)


def test_lies_on_or_above_examples():
    assert lies_on_or_above(S([(F(1, 2), 2)]), S([(0, 1), (1, 1)]))
    assert lies_on_or_above(S([(0, 1), (1, 1)]), S([(0, 1), (1, 1)]))
    assert not lies_on_or_above(S([(0, 2)]), S([(0, 1), (1, 1)]))
    with pytest.raises(DimensionMismatchError):
        lies_on_or_above(S([(0, 2)]), S([(0, 3)]))


def test_total_slope_examples():
    assert total_slope(S([(F(1, 4), 4)])) == 1
    assert total_slope(S([(0, 3), (1, 1)])) == 1
    assert total_slope(S([(F(1, 3), 3), (F(2, 3), 3)])) == F(1, 3) * 3 + F(2, 3) * 3 == 3


def test_symmetry_examples():
    assert is_symmetric(S([(0, 1), (F(1, 3), 3), (F(2, 3), 3), (1, 1)]))
    assert is_symmetric(S([(F(1, 2), 8)]))
    assert not is_symmetric(S([(0, 2), (1, 1)]))


def test_scale_dual_dsum():
    assert scale_mult(S([(F(1, 2), 2)]), 3) == S([(F(1, 2), 6)])
    assert dual(S([(0, 1), (1, 1)])) == S([(-1, 1), (0, 1)])
    assert dsum(S([(0, 1)]), S([(0, 2)])) == S([(0, 3)])


def test_invalid_multisets():
    with pytest.raises(ValueError):
        SlopeMultiset(((F(1), 1), (F(0), 1)))
    with pytest.raises(ValueError):
        SlopeMultiset(((F(0), 0),))
    with pytest.raises(ValueError):
        SlopeMultiset(())


def test_json_round_trip_and_schema():
    ms = S([(F(-1, 2), 2), (F(2, 3), 3)])
    doc = json.loads(json.dumps(ms.to_json()))
    assert doc == {"dim": 5, "slopes": [{"num": -1, "den": 2, "mult": 2},
                                        {"num": 2, "den": 3, "mult": 3}]}
    assert SlopeMultiset.from_json(doc) == ms
    bad = [
        {"dim": 2, "slopes": [{"num": 2, "den": 4, "mult": 2}]},
        {"dim": 2, "slopes": [{"num": 1, "den": -2, "mult": 2}]},
        {"dim": 3, "slopes": [{"num": 1, "den": 2, "mult": 2}]},
        {"dim": 2, "slopes": [{"num": 1, "den": 1, "mult": 1}, {"num": 0, "den": 1, "mult": 1}]},
        {"dim": 1, "slopes": [{"num": True, "den": 1, "mult": 1}]},
        {"slopes": []},
        [],
    ]
    for doc in bad:
        with pytest.raises(SchemaError):
            SlopeMultiset.from_json(doc)


slope_values = st.fractions(min_value=-3, max_value=3, max_denominator=6)
multisets = st.lists(st.tuples(slope_values, st.integers(1, 4)), min_size=1, max_size=5).map(S)


@given(multisets)
def test_dual_is_an_involution(a):
    assert dual(dual(a)) == a
    assert total_slope(dual(a)) == -total_slope(a)


@given(multisets)
def test_symmetric_implies_half_total(a):
    sym = dsum(a, S([(1 - s, m) for s, m in a.entries]))
    assert is_symmetric(sym)
    assert total_slope(sym) == F(sym.dim, 2)


@given(st.lists(st.one_of(st.none(), st.fractions(-5, 5, max_denominator=4)), min_size=2, max_size=9),
       st.fractions(-5, 5, max_denominator=4), st.fractions(-5, 5, max_denominator=4))
def test_hull_is_convex_and_interpolates(middle, first, last):
    vals = [first] + middle[1:-1] + [last]
    pts = [(i, INF if v is None else v) for i, v in enumerate(vals)]
    hull = lower_hull(pts)
    assert all(a[0] < b[0] for a, b in zip(hull.entries, hull.entries[1:]))
    assert hull.dim == len(vals) - 1
    assert hull.evaluate(0, first) == first
    assert hull.evaluate(hull.dim, first) == last
    for i, v in enumerate(vals):
        if v is not None:
            assert hull.evaluate(i, first) <= v


def raise_polygon(ms, rng):
    """Average two slopes: the result lies on or above ``ms`` with the same endpoints."""
    xs = ms.slopes()
    if len(xs) < 2:
        return ms
    i, j = sorted(rng.sample(range(len(xs)), 2))
    mean = (xs[i] + xs[j]) / 2
    xs[i] = xs[j] = mean
    return SlopeMultiset.from_slopes(xs)


@given(st.integers(1, 6).flatmap(lambda n: st.lists(slope_values, min_size=n, max_size=n)),
       st.randoms(use_true_random=False))
def test_dominance_reflexive_and_transitive(xs, rng):
    c = SlopeMultiset.from_slopes(xs)
    b = raise_polygon(c, rng)
    a = raise_polygon(b, rng)
    assert lies_on_or_above(c, c)
    assert lies_on_or_above(b, c) and lies_on_or_above(a, b)
    assert lies_on_or_above(a, c)
