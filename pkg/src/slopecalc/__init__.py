"""Slope calculus of filtered phi-modules over unramified p-adic fields.

Newton and Hodge polygons, tensor and induction operations on slope data,
a dominance test for admissibility, sigma-linear matrices over Q_{p^r},
and the Newton polygon classification for abelian varieties of Mumford's
type.
"""

from .isocrystal import SlopeData
from .mumford import MumfordDatum, classify
from .polygon import INF, SlopeMultiset, lower_hull

__version__ = "0.1.0"

__all__ = ["INF", "MumfordDatum", "SlopeData", "SlopeMultiset", "classify", "lower_hull"]
