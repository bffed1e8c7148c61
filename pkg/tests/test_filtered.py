from fractions import Fraction as F

import pytest

from slopecalc.errors import DimensionMismatchError, SearchSpaceError
from slopecalc.filtered import (FilteredData, admissible_necessary, brute_enumerate,
                                enumerate_v1_newton, hodge_from_filtration, two_slope_shape,
                                v1_hodge)
from slopecalc.isocrystal import SlopeData
from slopecalc.polygon import SlopeMultiset

S = SlopeMultiset.from_pairs
SD = SlopeData.from_pairs


def test_hodge_from_filtration():
    assert hodge_from_filtration({0: 3, 1: 1}) == S([(0, 3), (1, 1)]) == v1_hodge(2)
    assert hodge_from_filtration({0: 5}) == S([(0, 5)])
    assert hodge_from_filtration({1: 1, 0: 1}) == S([(0, 1), (1, 1)])
    with pytest.raises(ValueError):
        hodge_from_filtration({0: 0})


def test_admissible_examples():
    h = S([(0, 1), (1, 1)])
    assert admissible_necessary(FilteredData(SD([(F(1, 2), 2)]), h))
    assert admissible_necessary(FilteredData(SD([(0, 1), (1, 1)]), h))
    assert not admissible_necessary(FilteredData(SD([(0, 2)]), h))
    with pytest.raises(DimensionMismatchError):
        FilteredData(SD([(0, 3)]), h)
    with pytest.raises(ValueError):
        FilteredData(SD([(0, 2)]), S([(F(1, 2), 2)]))


def test_enumerate_examples():
    assert enumerate_v1_newton(1) == [SD([(F(1, 2), 2)]), SD([(0, 1), (1, 1)])]
    assert enumerate_v1_newton(2) == [SD([(F(1, 4), 4)]), SD([(0, 2), (F(1, 2), 2)])]
    assert enumerate_v1_newton(3) == [SD([(F(1, 6), 6)]), SD([(0, 3), (F(1, 3), 3)])]


@pytest.mark.parametrize("r", range(1, 9))
def test_enumerate_has_two_cases(r):
    out = enumerate_v1_newton(r)
    assert out == [SD([(F(1, 2 * r), 2 * r)]), SD([(0, r), (F(1, r), r)])]
    assert all(admissible_necessary(FilteredData(sd, v1_hodge(r))) for sd in out)


def test_brute_examples():
    assert brute_enumerate(2, S([(0, 1), (1, 1)]), 2) == [SD([(0, 1), (1, 1)]), SD([(F(1, 2), 2)])]
    assert brute_enumerate(2, S([(0, 2)]), 2) == [SD([(0, 2)])]
    found = brute_enumerate(4, S([(0, 3), (1, 1)]), 4)
    shaped = sorted((sd for sd in found if two_slope_shape(sd, 2)), key=lambda sd: sd.slopes.mult(0))
    assert shaped == enumerate_v1_newton(2)


def test_brute_reports_shapes_outside_the_two_slope_form():
    found = brute_enumerate(4, v1_hodge(2), 4)
    outside = [sd for sd in found if not two_slope_shape(sd, 2)]
    assert SD([(0, 2), (F(1, 3), 1), (F(2, 3), 1)]) in outside
    assert all(admissible_necessary(FilteredData(sd, v1_hodge(2))) for sd in found)


def test_brute_matches_exhaustive_listing():
    # plain itertools enumeration, no pruning
    from itertools import combinations_with_replacement
    grid = sorted({F(n, d) for d in range(1, 4) for n in range(d + 1)})
    hodge = S([(0, 2), (1, 1)])
    want = [seq for seq in combinations_with_replacement(grid, 3)
            if admissible_necessary(FilteredData(SlopeData(SlopeMultiset.from_slopes(seq)), hodge))]
    got = brute_enumerate(3, hodge, 3)
    assert [tuple(sd.slopes.slopes()) for sd in got] == sorted(want)


def test_brute_ceilings():
    with pytest.raises(SearchSpaceError):
        brute_enumerate(2, S([(0, 1), (1, 1)]), 100)
    with pytest.raises(SearchSpaceError):
        brute_enumerate(12, S([(0, 6), (1, 6)]), 12, max_nodes=1000)
