"""Filtered phi-modules at the level of slopes.

Admissibility is tested through polygon dominance only: the Newton polygon
must lie on or above the Hodge polygon with the same endpoint.  This is a
necessary condition for weak admissibility; the full condition quantifies
over phi-stable subobjects and needs filtration data the slope model does
not carry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import DimensionMismatchError, SearchSpaceError
from .isocrystal import SlopeData
from .polygon import SlopeMultiset, lies_on_or_above, total_slope

MAX_DENOMINATOR = 24
MAX_SEARCH_NODES = 5_000_000


@dataclass(frozen=True)
class FilteredData:
    newton: SlopeData
    hodge: SlopeMultiset

    def __post_init__(self):
        if self.newton.level != 1:
            raise ValueError("Newton data of a filtered phi-module must be phi-slopes")
        if self.newton.dim != self.hodge.dim:
            raise DimensionMismatchError(
                f"Newton dimension {self.newton.dim} != Hodge dimension {self.hodge.dim}")
        if any(s.denominator != 1 for s, _ in self.hodge.entries):
            raise ValueError("Hodge slopes must be integers")

    @property
    def dim(self) -> int:
        return self.hodge.dim


def hodge_from_filtration(jumps: Mapping[int, int]) -> SlopeMultiset:
    """Hodge polygon from the graded dimensions ``{degree: dim gr^degree}``."""
    if any(d < 1 for d in jumps.values()):
        raise ValueError("graded dimensions must be positive")
    return SlopeMultiset.from_pairs((int(i), d) for i, d in jumps.items())


def admissible_necessary(fd: FilteredData) -> bool:
    newton = fd.newton.slopes
    return total_slope(newton) == total_slope(fd.hodge) and lies_on_or_above(newton, fd.hodge)


def v1_hodge(r: int) -> SlopeMultiset:
    """Hodge polygon of the two-dimensional factor: one jump of weight one."""
    return SlopeMultiset.from_pairs([(0, 2 * r - 1), (1, 1)])


def enumerate_v1_newton(r: int) -> list[SlopeData]:
    """Admissible Newton slopes ``{m1 x 0, m2 x 1/m2}`` of the 2-dim factor over Q_{p^r}.

    Candidates satisfy ``m1 + m2 = 2r``, ``m2 >= 1``, and ``r | m1, r | m2``
    (the phi^r factors must share slopes); survivors of the dominance test
    against :func:`v1_hodge` are returned in order of increasing ``m1``.
    """
    if r < 1:
        raise ValueError("r must be positive")
    hodge = v1_hodge(r)
    out = []
    for m1 in range(0, 2 * r):
        m2 = 2 * r - m1
        if m1 % r or m2 % r:
            continue
        pairs = [(Fraction(1, m2), m2)]
        if m1:
            pairs.append((Fraction(0), m1))
        cand = SlopeData.from_pairs(pairs)
        if admissible_necessary(FilteredData(cand, hodge)):
            out.append(cand)
    return out


def _farey(max_den: int, lo: Fraction, hi: Fraction) -> list[Fraction]:
    vals = {Fraction(n, d) for d in range(1, max_den + 1)
            for n in range(int(lo * d) - 1, int(hi * d) + 2)}
    return sorted(v for v in vals if lo <= v <= hi)


def brute_enumerate(dim: int, hodge: SlopeMultiset, max_den: int | None = None,
                    max_nodes: int = MAX_SEARCH_NODES) -> list[SlopeData]:
    """Every slope multiset in [0, 1] passing the dominance test against ``hodge``.

    Slopes range over fractions with denominator at most ``max_den``
    (default ``dim``).  Results are sorted lexicographically by their
    ascending slope sequence.  The depth-first search prunes on partial
    sums, which are exactly the prefix sums compared by dominance.
    """
    if max_den is None:
        max_den = min(dim, MAX_DENOMINATOR)
    if not 1 <= max_den <= MAX_DENOMINATOR:
        raise SearchSpaceError(f"max_den must lie in 1..{MAX_DENOMINATOR}, got {max_den}")
    if hodge.dim != dim:
        raise DimensionMismatchError(f"Hodge dimension {hodge.dim} != {dim}")

    grid = _farey(max_den, Fraction(0), Fraction(1))
    target = total_slope(hodge)
    hodge_prefix = [Fraction(0)]
    for s in hodge.slopes():
        hodge_prefix.append(hodge_prefix[-1] + s)

    results: list[tuple[Fraction, ...]] = []
    nodes = 0
    chosen: list[Fraction] = []

    def extend(start: int, partial: Fraction):
        nonlocal nodes
        k = len(chosen)
        if k == dim:
            if partial == target:
                results.append(tuple(chosen))
            return
        remaining = dim - k
        for j in range(start, len(grid)):
            s = grid[j]
            # every later slope is >= s, so the total can only grow from here
            if partial + remaining * s > target:
                break
            if partial + s + (remaining - 1) * grid[-1] < target:
                continue
            if partial + s < hodge_prefix[k + 1]:
                continue
            nodes += 1
            if nodes > max_nodes:
                raise SearchSpaceError(f"search exceeded {max_nodes} nodes")
            chosen.append(s)
            extend(j, partial + s)
            chosen.pop()

    extend(0, Fraction(0))
    results.sort()
    return [SlopeData(SlopeMultiset.from_slopes(seq)) for seq in results]


def two_slope_shape(sd: SlopeData, r: int) -> bool:
    """At most two distinct slopes, every multiplicity divisible by ``r``."""
    return len(sd.entries) <= 2 and all(m % r == 0 for _, m in sd.entries)
