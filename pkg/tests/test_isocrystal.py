from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from oracles import binomial_row, pairwise_sums
from slopecalc.errors import IndivisibleMultiplicityError, LevelMismatchError
from slopecalc.isocrystal import (SlopeData, dsum, induce_from_power, power_slopes, root_slopes,
                                  sigma_conjugate, split_factors, tensor, tensor_power, total_slope)
from slopecalc.polygon import SlopeMultiset

SD = SlopeData.from_pairs
ORD = SD([(0, 1), (1, 1)])


def test_tensor_examples():
    t = tensor(ORD, ORD)
    assert t.slopes.slopes() == pairwise_sums([0, 1], [0, 1]) == [0, 1, 1, 2]
    assert t == SD([(0, 1), (1, 2), (2, 1)])
    a = SD([(F(1, 3), 2), (F(5, 2), 1)])
    assert tensor(a, SD([(0, 1)])) == a
    assert tensor(SD([(F(1, 2), 2)]), SD([(F(1, 2), 2)])) == SD([(1, 4)])


def test_tensor_level_mismatch():
    with pytest.raises(LevelMismatchError):
        tensor(ORD, SD([(0, 1)], level=2))


def test_power_slopes_examples():
    for r in (1, 2, 5):
        assert power_slopes(SD([(F(1, 2 * r), 2 * r)]), r) == SD([(F(1, 2), 2 * r)], level=r)
    assert power_slopes(SD([(0, 4)]), 3) == SD([(0, 4)], level=3)
    assert power_slopes(SD([(F(1, 3), 3)]), 3) == SD([(1, 3)], level=3)


def test_induce_from_power_examples():
    assert induce_from_power(SD([(1, 1)], level=2), 2) == SD([(F(1, 2), 2)])
    assert induce_from_power(SD([(0, 3)], level=4), 4) == SD([(0, 12)])
    assert induce_from_power(SD([(1, 1), (2, 1)], level=3), 3) == SD([(F(1, 3), 3), (F(2, 3), 3)])
    with pytest.raises(LevelMismatchError):
        induce_from_power(SD([(1, 1)], level=2), 3)


def test_sigma_conjugate_is_identity():
    for a in (SD([(F(1, 2), 2)]), ORD, SD([(F(7, 3), 5)], level=4)):
        assert sigma_conjugate(a) == a


def test_split_factors_examples():
    for r in (1, 2, 3, 6):
        assert split_factors(SD([(0, r), (F(1, r), r)]), r) == SD([(0, 1), (1, 1)], level=r)
        assert split_factors(SD([(F(1, 2 * r), 2 * r)]), r) == SD([(F(1, 2), 2)], level=r)
    with pytest.raises(IndivisibleMultiplicityError):
        split_factors(ORD, 2)


@pytest.mark.parametrize("r", range(1, 13))
def test_binomial_convolution(r):
    t = tensor_power(SD([(0, 1), (1, 1)], level=r), r)
    assert t.level == r
    assert [t.slopes.mult(k) for k in range(r + 1)] == binomial_row(r)


def test_root_slopes_inverts_power_slopes():
    a = SD([(F(1, 5), 2), (F(3, 4), 1)])
    assert root_slopes(power_slopes(a, 4)) == a


slope = st.fractions(min_value=-2, max_value=2, max_denominator=5)
pairs = st.lists(st.tuples(slope, st.integers(1, 3)), min_size=1, max_size=4)
level1 = pairs.map(SD)


@given(level1, level1)
def test_tensor_total_slope_additivity(a, b):
    t = tensor(a, b)
    assert t.dim == a.dim * b.dim
    assert total_slope(t) == b.dim * total_slope(a) + a.dim * total_slope(b)


@given(level1, level1, level1)
def test_tensor_commutative_associative(a, b, c):
    assert tensor(a, b) == tensor(b, a)
    assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))


@given(level1, level1)
def test_dsum_dimension(a, b):
    assert dsum(a, b).dim == a.dim + b.dim


@given(pairs, st.integers(1, 6))
def test_split_then_induce_round_trip(ps, r):
    a = SD([(s, m * r) for s, m in ps])
    assert induce_from_power(split_factors(a, r), r) == a


@given(pairs, st.integers(1, 6))
def test_power_of_induced(ps, r):
    d = SD(ps, level=r)
    back = power_slopes(induce_from_power(d, r), r)
    assert back.slopes == SlopeMultiset(tuple((s, m * r) for s, m in d.entries))
