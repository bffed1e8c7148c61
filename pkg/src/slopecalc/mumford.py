"""Newton polygons of abelian varieties of Mumford's type.

The invariants are ``d = [F:Q]``, the local degree ``r = [F_p:Q_p]`` and
``eps``, which is 0 when the corestriction of the quaternion algebra is a
full matrix algebra over Q and 1 otherwise.  H^1 decomposes as
``(V (x) U)^{2^eps}`` with ``dim V = 2^r`` and ``dim U = 2^{d-r}``; U is
unramified, so it only scales multiplicities.  After extending scalars to
Q_{p^r}, V is the tensor product of the r sigma-conjugates of a
two-dimensional V_1, whose Newton slopes are one of two shapes
(:func:`slopecalc.filtered.enumerate_v1_newton`).

Results assume good reduction at a prime p not dividing the relevant
discriminants; those hypotheses are not checked here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import isocrystal
from .errors import InvalidDatumError
from .filtered import enumerate_v1_newton
from .isocrystal import SlopeData
from .polygon import SlopeMultiset, is_symmetric, lies_on_or_above, scale_mult, total_slope

SUPERSINGULAR = "supersingular"
ORDINARY_TYPE = "ordinary_type"
CASES = (SUPERSINGULAR, ORDINARY_TYPE)


@dataclass(frozen=True)
class MumfordDatum:
    d: int
    r: int
    eps: int

    def __post_init__(self):
        for name in ("d", "r", "eps"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise InvalidDatumError(f"{name} must be an integer")
        if self.d < 1:
            raise InvalidDatumError("d must be at least 1")
        if not 1 <= self.r <= self.d:
            raise InvalidDatumError(f"need 1 <= r <= d, got r = {self.r}, d = {self.d}")
        if self.eps not in (0, 1):
            raise InvalidDatumError(f"eps must be 0 or 1, got {self.eps}")

    @property
    def dim(self) -> int:
        return 2 ** (self.d + self.eps)

    def to_json(self) -> dict:
        return {"d": self.d, "r": self.r, "eps": self.eps}


def _is_squarefree(b: int) -> bool:
    b = abs(b)
    q = 2
    while q * q <= b:
        if b % (q * q) == 0:
            return False
        q += 1
    return True


def epsilon_from_b(b: int) -> int:
    """0 when the squarefree invariant b is 1, else 1."""
    if b == 0 or not _is_squarefree(b):
        raise ValueError(f"b must be a nonzero squarefree integer, got {b}")
    return 0 if b == 1 else 1


def decomposition_shape(datum: MumfordDatum) -> tuple[int, int, int, int]:
    """``(dim H, dim V, dim U, copies)`` for ``H = (V (x) U)^copies``."""
    dim_v = 2 ** datum.r
    dim_u = 2 ** (datum.d - datum.r)
    copies = 2 ** datum.eps
    return dim_v * dim_u * copies, dim_v, dim_u, copies


def v_polygons(r: int) -> tuple[SlopeData, SlopeData]:
    """The two possible Newton polygons of V, by closed formula."""
    if r < 1:
        raise ValueError("r must be positive")
    supersingular = SlopeData.from_pairs([(Fraction(1, 2), 2 ** r)])
    ordinary = SlopeData.from_pairs((Fraction(i, r), math.comb(r, i)) for i in range(r + 1))
    return supersingular, ordinary


def v_polygon_from_factors(r: int, case: str) -> SlopeData:
    """Newton polygon of V rebuilt through the tensor engine.

    The factor datum of V_1 over phi^r is tensored with itself r times (one
    copy per sigma-conjugate) and the slopes are divided by r.
    """
    if case not in CASES:
        raise ValueError(f"case must be one of {CASES}")
    shapes = enumerate_v1_newton(r)
    v1 = next(sd for sd in shapes if (sd.slopes.mult(0) == 0) == (case == SUPERSINGULAR))
    factor = isocrystal.split_factors(v1, r)
    return isocrystal.root_slopes(isocrystal.tensor_power(factor, r))


def classify(datum: MumfordDatum) -> tuple[SlopeData, SlopeData]:
    """``(supersingular, mu_ordinary)`` Newton polygons for the datum."""
    k = 2 ** (datum.d - datum.r + datum.eps)
    ss, ordinary = v_polygons(datum.r)
    return (SlopeData(scale_mult(ss.slopes, k)), SlopeData(scale_mult(ordinary.slopes, k)))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    datum: MumfordDatum
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append(Check(name, bool(passed), detail))


def verify_classification(datum: MumfordDatum) -> VerificationReport:
    report = VerificationReport(datum)
    k = 2 ** (datum.d - datum.r + datum.eps)
    polys = classify(datum)
    for case, label, poly in zip(CASES, ("supersingular", "mu_ordinary"), polys):
        ms = poly.slopes
        report.add(f"{label}: symmetric", is_symmetric(ms), str(ms))
        report.add(f"{label}: dim = 2^(d+eps)", ms.dim == datum.dim, f"{ms.dim} vs {datum.dim}")
        report.add(f"{label}: total slope = dim/2", total_slope(ms) == Fraction(datum.dim, 2),
                   str(total_slope(ms)))
        rebuilt = scale_mult(v_polygon_from_factors(datum.r, case).slopes, k)
        report.add(f"{label}: agrees with tensor construction", rebuilt == ms, str(rebuilt))
    report.add("supersingular lies on or above mu-ordinary",
               lies_on_or_above(polys[0].slopes, polys[1].slopes))
    return report
