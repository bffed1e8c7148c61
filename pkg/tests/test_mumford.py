from fractions import Fraction as F

import pytest

from oracles import binomial_row
from slopecalc.errors import InvalidDatumError
from slopecalc.isocrystal import SlopeData
from slopecalc.mumford import (MumfordDatum, classify, decomposition_shape, epsilon_from_b,
                               v_polygon_from_factors, v_polygons, verify_classification)
from slopecalc.polygon import is_symmetric, lies_on_or_above, total_slope

SD = SlopeData.from_pairs
MUMFORD_SS = SD([(F(1, 2), 8)])
MUMFORD_ORD = SD([(0, 1), (F(1, 3), 3), (F(2, 3), 3), (1, 1)])


def test_epsilon():
    assert epsilon_from_b(1) == 0
    assert epsilon_from_b(-1) == 1
    assert epsilon_from_b(5) == 1
    for bad in (0, 4, -12):
        with pytest.raises(ValueError):
            epsilon_from_b(bad)


def test_decomposition_shape():
    assert decomposition_shape(MumfordDatum(3, 3, 0)) == (8, 8, 1, 1)
    assert decomposition_shape(MumfordDatum(1, 1, 0)) == (2, 2, 1, 1)
    assert decomposition_shape(MumfordDatum(2, 1, 1)) == (8, 2, 2, 2)


@pytest.mark.parametrize("d,r,eps", [(2, 3, 0), (0, 0, 0), (3, 1, 2), (3, 0, 1)])
def test_invalid_datum(d, r, eps):
    with pytest.raises(InvalidDatumError):
        MumfordDatum(d, r, eps)


def test_v_polygons():
    assert v_polygons(1) == (SD([(F(1, 2), 2)]), SD([(0, 1), (1, 1)]))
    assert v_polygons(2) == (SD([(F(1, 2), 4)]), SD([(0, 1), (F(1, 2), 2), (1, 1)]))
    assert v_polygons(3) == (MUMFORD_SS, MUMFORD_ORD)


@pytest.mark.parametrize("r", range(1, 13))
def test_tensor_construction_agrees(r):
    ss, ordinary = v_polygons(r)
    assert v_polygon_from_factors(r, "supersingular") == ss
    assert v_polygon_from_factors(r, "ordinary_type") == ordinary


def test_classify_examples():
    assert classify(MumfordDatum(3, 3, 0)) == (MUMFORD_SS, MUMFORD_ORD)
    assert classify(MumfordDatum(2, 1, 1)) == (SD([(F(1, 2), 8)]), SD([(0, 4), (1, 4)]))
    assert classify(MumfordDatum(4, 2, 0)) == (SD([(F(1, 2), 16)]),
                                               SD([(0, 4), (F(1, 2), 8), (1, 4)]))


def test_classify_sweep():
    for d in range(1, 9):
        for r in range(1, d + 1):
            for eps in (0, 1):
                ss, mu = classify(MumfordDatum(d, r, eps))
                scale = 2 ** (d - r + eps)
                for poly in (ss, mu):
                    assert is_symmetric(poly.slopes)
                    assert poly.dim == 2 ** (d + eps)
                    assert total_slope(poly.slopes) == 2 ** (d + eps - 1)
                    # vertices at slope changes are lattice points
                    assert all(y.denominator == 1 for _, y in poly.slopes.vertices())
                assert [mu.slopes.mult(F(i, r)) for i in range(r + 1)] == \
                    [scale * c for c in binomial_row(r)]
                assert lies_on_or_above(ss.slopes, mu.slopes)


def test_verify_report():
    rep = verify_classification(MumfordDatum(3, 3, 0))
    assert rep.ok and len(rep.checks) == 9
    assert verify_classification(MumfordDatum(1, 1, 0)).ok
    with pytest.raises(InvalidDatumError):
        verify_classification(MumfordDatum(1, 2, 0))
