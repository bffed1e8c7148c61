"""Slope calculus of phi-modules.

Only the Dieudonne-Manin shadow of a phi-module is modelled: its Newton
slopes with multiplicities.  Each :class:`SlopeData` carries a *level*
``s`` recording that slopes are measured against ``phi**s``; operations
refuse to mix levels.

Conjugating a Q_{p^r}-representation by a power of sigma changes the
filtered phi^r-module factor it lands in but not the slopes, so the
conjugate factors ``D^(m)`` of a decomposition all share one slope datum.
This is why :func:`sigma_conjugate` is the identity and :func:`split_factors`
returns a single representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import polygon
from .errors import IndivisibleMultiplicityError, LevelMismatchError, SchemaError
from .polygon import SlopeMultiset


@dataclass(frozen=True)
class SlopeData:
    slopes: SlopeMultiset
    level: int = 1

    def __post_init__(self):
        if not isinstance(self.level, int) or self.level < 1:
            raise ValueError("level must be a positive integer")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple], level: int = 1) -> "SlopeData":
        return cls(SlopeMultiset.from_pairs(pairs), level)

    @property
    def dim(self) -> int:
        return self.slopes.dim

    @property
    def entries(self):
        return self.slopes.entries

    def to_json(self) -> dict:
        doc = self.slopes.to_json()
        doc["level"] = self.level
        return doc

    @classmethod
    def from_json(cls, doc) -> "SlopeData":
        level = doc.get("level", 1) if isinstance(doc, dict) else None
        if not isinstance(level, int) or isinstance(level, bool) or level < 1:
            raise SchemaError("'level' must be a positive integer")
        return cls(SlopeMultiset.from_json(doc), level)

    def __str__(self):
        return str(self.slopes) if self.level == 1 else f"{self.slopes}@phi^{self.level}"


def _same_level(a: SlopeData, b: SlopeData):
    if a.level != b.level:
        raise LevelMismatchError(f"cannot combine level {a.level} with level {b.level}")


def tensor(a: SlopeData, b: SlopeData) -> SlopeData:
    """Slopes of a tensor product: all pairwise sums, multiplicities multiply."""
    _same_level(a, b)
    pairs = [(s + t, m * n) for s, m in a.entries for t, n in b.entries]
    return SlopeData(SlopeMultiset.from_pairs(pairs), a.level)


def tensor_power(a: SlopeData, k: int) -> SlopeData:
    if k < 1:
        raise ValueError("tensor power must be positive")
    out = a
    for _ in range(k - 1):
        out = tensor(out, a)
    return out


def dsum(a: SlopeData, b: SlopeData) -> SlopeData:
    _same_level(a, b)
    return SlopeData(polygon.dsum(a.slopes, b.slopes), a.level)


def power_slopes(a: SlopeData, s: int) -> SlopeData:
    """Pass from phi to the linear map phi**s: slopes scale by ``s``."""
    if a.level != 1:
        raise LevelMismatchError("power_slopes expects phi-slopes (level 1)")
    if s < 1:
        raise ValueError("power must be positive")
    return SlopeData(SlopeMultiset(tuple((x * s, m) for x, m in a.entries)), s)


def root_slopes(a: SlopeData) -> SlopeData:
    """Inverse of :func:`power_slopes`: divide level-s slopes by s."""
    s = a.level
    return SlopeData(SlopeMultiset(tuple((x / s, m) for x, m in a.entries)), 1)


def induce_from_power(delta: SlopeData, r: int) -> SlopeData:
    """Slopes of the phi-module ``Q_p[t] (x)_{Q_p[t^r]} delta`` with ``t^r`` acting as psi.

    Each phi^r-slope ``s`` of multiplicity ``m`` becomes the phi-slope
    ``s/r`` with multiplicity ``r*m``.
    """
    if delta.level != r:
        raise LevelMismatchError(f"expected phi^{r}-slopes, got level {delta.level}")
    return SlopeData(SlopeMultiset(tuple((x / r, m * r) for x, m in delta.entries)), 1)


def sigma_conjugate(a: SlopeData) -> SlopeData:
    return a


def split_factors(a: SlopeData, r: int) -> SlopeData:
    """Common phi^r slope datum of the r cyclically permuted factors.

    Raises :class:`IndivisibleMultiplicityError` when some multiplicity is
    not divisible by ``r``: no cyclic r-factor structure is then possible.
    """
    if a.level != 1:
        raise LevelMismatchError("split_factors expects phi-slopes (level 1)")
    if r < 1:
        raise ValueError("r must be positive")
    bad = [(x, m) for x, m in a.entries if m % r]
    if bad:
        raise IndivisibleMultiplicityError(
            f"multiplicities {[m for _, m in bad]} are not divisible by r = {r}")
    return SlopeData(SlopeMultiset(tuple((x * r, m // r) for x, m in a.entries)), r)


def total_slope(a: SlopeData) -> Fraction:
    return polygon.total_slope(a.slopes)
