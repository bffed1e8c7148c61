"""Newton and Hodge polygons as exact slope multisets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateHullError, DimensionMismatchError, SchemaError


class Infinity:
    """Valuation of zero.  Never lies on a lower hull."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = __repr__


INF = Infinity()


def is_infinite(v) -> bool:
    return v is INF or (isinstance(v, float) and math.isinf(v) and v > 0)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class SlopeMultiset:
    """Slopes with multiplicities, strictly increasing in slope.

    >>> SlopeMultiset.from_slopes([1, 0, Fraction(1, 2), Fraction(1, 2)])
    SlopeMultiset({0 x1, 1/2 x2, 1 x1})
    """

    entries: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        entries = tuple((Fraction(s), m) for s, m in self.entries)
        if not entries:
            raise ValueError("a slope multiset needs at least one slope")
        for (s, m) in entries:
            if not isinstance(m, int) or isinstance(m, bool) or m < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {m!r}")
        for (s, _), (t, _) in zip(entries, entries[1:]):
            if not s < t:
                raise ValueError("slopes must be strictly increasing")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple]) -> "SlopeMultiset":
        """Build from (slope, mult) pairs in any order, merging repeated slopes."""
        acc: dict[Fraction, int] = {}
        for s, m in pairs:
            s = Fraction(s)
            acc[s] = acc.get(s, 0) + m
        return cls(tuple(sorted(acc.items())))

    @classmethod
    def from_slopes(cls, slopes: Iterable) -> "SlopeMultiset":
        return cls.from_pairs((s, 1) for s in slopes)

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.entries)

    def slopes(self) -> list[Fraction]:
        """All slopes in increasing order, repeated by multiplicity."""
        return [s for s, m in self.entries for _ in range(m)]

    def mult(self, slope) -> int:
        slope = Fraction(slope)
        for s, m in self.entries:
            if s == slope:
                return m
        return 0

    def vertices(self, start=(0, 0)) -> list[tuple[Fraction, Fraction]]:
        """Break points of the polygon, from ``start`` to the far endpoint."""
        x, y = Fraction(start[0]), Fraction(start[1])
        out = [(x, y)]
        for s, m in self.entries:
            x += m
            y += s * m
            out.append((x, y))
        return out

    def evaluate(self, x, y0=0) -> Fraction:
        """Height of the polygon at abscissa ``x`` (0 <= x <= dim), starting at ``y0``."""
        x = Fraction(x)
        if not 0 <= x <= self.dim:
            raise ValueError("abscissa outside the polygon")
        y, pos = Fraction(y0), Fraction(0)
        for s, m in self.entries:
            step = min(Fraction(m), x - pos)
            if step <= 0:
                break
            y += s * step
            pos += step
        return y

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "slopes": [{"num": s.numerator, "den": s.denominator, "mult": m} for s, m in self.entries],
        }

    @classmethod
    def from_json(cls, doc) -> "SlopeMultiset":
        return cls(_parse_entries(doc))

    def __str__(self):
        return "{" + ", ".join(f"{_fmt(s)} x{m}" for s, m in self.entries) + "}"

    def __repr__(self):
        return f"SlopeMultiset({self})"


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _parse_entries(doc) -> tuple:
    if not isinstance(doc, dict):
        raise SchemaError("slope document must be a JSON object")
    if "slopes" not in doc or not isinstance(doc["slopes"], list):
        raise SchemaError("slope document needs a 'slopes' list")
    entries = []
    for item in doc["slopes"]:
        if not isinstance(item, dict) or set(item) != {"num", "den", "mult"}:
            raise SchemaError(f"bad slope entry {item!r}")
        num, den, mult = item["num"], item["den"], item["mult"]
        if not (_is_int(num) and _is_int(den) and _is_int(mult)):
            raise SchemaError(f"slope entry fields must be integers: {item!r}")
        if den <= 0 or math.gcd(num, den) != 1 or mult < 1:
            raise SchemaError(f"slope entry is not in reduced form: {item!r}")
        entries.append((Fraction(num, den), mult))
    if not entries:
        raise SchemaError("slope list is empty")
    if any(not a[0] < b[0] for a, b in zip(entries, entries[1:])):
        raise SchemaError("slopes must be sorted strictly ascending")
    dim = doc.get("dim")
    if not _is_int(dim) or dim != sum(m for _, m in entries):
        raise SchemaError("'dim' is missing or disagrees with the multiplicities")
    return tuple(entries)


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[tuple]) -> SlopeMultiset:
    """Slopes of the lower convex hull of ``(index, value)`` points.

    Values may be :data:`INF`; such points are skipped.  The first and last
    points must be finite.
    """
    if len(points) < 2:
        raise ValueError("need at least two points")
    idx = [i for i, _ in points]
    if any(not _is_int(i) for i in idx):
        raise ValueError("indices must be integers")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError("indices must be strictly increasing")
    if is_infinite(points[0][1]) or is_infinite(points[-1][1]):
        raise DegenerateHullError("endpoint of the polygon has infinite value")

    hull: list[tuple[Fraction, Fraction]] = []
    for i, v in points:
        if is_infinite(v):
            continue
        pt = (Fraction(i), Fraction(v))
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)

    return SlopeMultiset.from_pairs(
        ((b[1] - a[1]) / (b[0] - a[0]), int(b[0] - a[0])) for a, b in zip(hull, hull[1:])
    )


def lies_on_or_above(a: SlopeMultiset, b: SlopeMultiset) -> bool:
    """Whether polygon ``a`` lies on or above ``b`` with the same endpoints."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimensions differ: {a.dim} vs {b.dim}")
    sa = sb = Fraction(0)
    for x, y in zip(a.slopes(), b.slopes()):
        sa += x
        sb += y
        if sa < sb:
            return False
    return sa == sb


def total_slope(a: SlopeMultiset) -> Fraction:
    return sum((s * m for s, m in a.entries), Fraction(0))


def is_symmetric(a: SlopeMultiset) -> bool:
    """Whether slopes s and 1 - s occur with equal multiplicity."""
    return all(a.mult(1 - s) == m for s, m in a.entries)


def scale_mult(a: SlopeMultiset, k: int) -> SlopeMultiset:
    if k < 1:
        raise ValueError("scale factor must be positive")
    return SlopeMultiset(tuple((s, m * k) for s, m in a.entries))


def dual(a: SlopeMultiset) -> SlopeMultiset:
    return SlopeMultiset(tuple((-s, m) for s, m in reversed(a.entries)))


def dsum(a: SlopeMultiset, b: SlopeMultiset) -> SlopeMultiset:
    return SlopeMultiset.from_pairs(a.entries + b.entries)


merge = dsum
