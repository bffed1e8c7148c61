"""Concrete sigma-linear Frobenius maps over Q_{p^r}.

A :class:`PhiMatrix` with matrix ``A`` acts on coordinate vectors as
``x -> A * sigma(x)``.  Its r-th power is the linear map with matrix
``A * sigma(A) * ... * sigma^{r-1}(A)`` (:func:`linearize`); the Newton
slopes of phi are the valuations of the eigenvalues of that matrix divided
by r, read off the lower hull of the characteristic polynomial's
coefficient valuations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import arith
from .arith import PrecisionExhausted, UnramifiedContext, UnramifiedElement, frobenius, val
from .errors import DimensionMismatchError, PrecisionError, SchemaError
from .isocrystal import SlopeData
from .polygon import INF, SlopeMultiset, lower_hull

Matrix = list[list[UnramifiedElement]]


@dataclass(frozen=True)
class PhiMatrix:
    context: UnramifiedContext
    entries: tuple[tuple[UnramifiedElement, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise DimensionMismatchError("phi matrix must be square and non-empty")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        ctx = self.context
        return {
            "p": ctx.p, "r": ctx.r, "N": ctx.N,
            "entries": [[element_to_json(x) for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, doc, precision: int | None = None) -> "PhiMatrix":
        """Parse the matrix document; ``precision`` overrides its ``N``."""
        if not isinstance(doc, dict) or "entries" not in doc:
            raise SchemaError("matrix document needs 'p', 'r', 'N' and 'entries'")
        try:
            p, r = int(doc["p"]), int(doc["r"])
            N = int(precision if precision is not None else doc.get("N", arith.DEFAULT_PRECISION))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad matrix header: {exc}") from None
        try:
            ctx = arith.context_new(p, r, N)
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
        rows = doc["entries"]
        if not isinstance(rows, list) or not rows or any(not isinstance(row, list) for row in rows):
            raise SchemaError("'entries' must be a non-empty list of rows")
        if any(len(row) != len(rows) for row in rows):
            raise SchemaError("matrix must be square")
        return cls(ctx, tuple(tuple(element_from_json(ctx, x) for x in row) for row in rows))


def element_to_json(x: UnramifiedElement) -> dict:
    return {"coeffs": list(x.coeffs), "pshift": x.pshift}


def element_from_json(ctx: UnramifiedContext, doc) -> UnramifiedElement:
    if isinstance(doc, int) and not isinstance(doc, bool):
        return ctx.from_int(doc)
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise SchemaError(f"bad matrix entry {doc!r}")
    coeffs, pshift = doc["coeffs"], doc.get("pshift", 0)
    if (not isinstance(coeffs, list) or len(coeffs) > ctx.r
            or any(not isinstance(c, int) or isinstance(c, bool) for c in coeffs)
            or not isinstance(pshift, int) or isinstance(pshift, bool)):
        raise SchemaError(f"bad matrix entry {doc!r}")
    return ctx.element(coeffs, pshift)


# -- matrix helpers ----------------------------------------------------------

def identity(ctx: UnramifiedContext, n: int) -> Matrix:
    return [[ctx.one() if i == j else ctx.zero() for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[UnramifiedElement]], b: Sequence[Sequence[UnramifiedElement]]) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    if any(len(row) != k for row in a):
        raise DimensionMismatchError("inner dimensions differ")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_frobenius(a: Sequence[Sequence[UnramifiedElement]], times: int = 1) -> Matrix:
    return [[frobenius(x, times) for x in row] for row in a]


def from_ints(ctx: UnramifiedContext, rows: Sequence[Sequence[int]]) -> Matrix:
    return [[ctx.from_int(v) for v in row] for row in rows]


# -- the pipeline ------------------------------------------------------------

def linearize(phi: PhiMatrix) -> Matrix:
    """Matrix of phi^r, linear over Q_{p^r}: ``A sigma(A) ... sigma^{r-1}(A)``."""
    a = [list(row) for row in phi.entries]
    m = a
    for k in range(1, phi.context.r):
        m = matmul(m, mat_frobenius(a, k))
    return m


def charpoly(m: Sequence[Sequence[UnramifiedElement]]) -> list[UnramifiedElement]:
    """Coefficients ``a_0 .. a_n`` of ``det(x I - M)`` (Berkowitz, division free).

    The polynomial of the leading k x k block is grown one row and column at
    a time by multiplying with the Toeplitz matrix built from
    ``1, -a, -R S, -R A S, ..., -R A^{k-1} S``.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatchError("charpoly needs a square matrix")
    if n == 0:
        raise DimensionMismatchError("charpoly needs a non-empty matrix")
    ctx = m[0][0].context
    one = ctx.one()
    # highest degree first
    poly = [one, -m[0][0]]
    for k in range(1, n):
        row = [m[k][j] for j in range(k)]
        col = [m[i][k] for i in range(k)]
        toeplitz = [one, -m[k][k]]
        vec = col
        for _ in range(k):
            dot = row[0] * vec[0]
            for j in range(1, k):
                dot = dot + row[j] * vec[j]
            toeplitz.append(-dot)
            vec = [_dot(m[i][:k], vec) for i in range(k)]
        new = []
        for i in range(k + 2):
            acc = None
            for j in range(max(0, i - len(toeplitz) + 1), min(i, k) + 1):
                term = toeplitz[i - j] * poly[j]
                acc = term if acc is None else acc + term
            new.append(acc)
        poly = new
    return list(reversed(poly))


def _dot(u, v):
    acc = u[0] * v[0]
    for x, y in zip(u[1:], v[1:]):
        acc = acc + x * y
    return acc


def determinant(m: Sequence[Sequence[UnramifiedElement]]) -> UnramifiedElement:
    a0 = charpoly(m)[0]
    return a0 if len(m) % 2 == 0 else -a0


def hull_slopes(coeffs: Sequence[UnramifiedElement]) -> SlopeMultiset:
    """Valuations of the roots of a monic polynomial given low -> high.

    A coefficient that is zero to working precision only has a lower bound
    on its valuation.  It is left off the hull, and if that bound lies
    strictly below the hull at its position the hull is undetermined and
    :class:`PrecisionError` is raised.
    """
    n = len(coeffs) - 1
    ctx = coeffs[0].context
    vals = [val(coeffs[n - i]) for i in range(n + 1)]
    if isinstance(vals[-1], PrecisionExhausted):
        raise PrecisionError(
            f"constant coefficient vanishes to {vals[-1].lower_bound} digits; "
            "phi is not bijective or the precision is too low",
            suggested_precision=2 * ctx.N)
    points = [(i, INF if isinstance(v, PrecisionExhausted) else v) for i, v in enumerate(vals)]
    hull = lower_hull(points)
    y0 = points[0][1]
    for i, v in enumerate(vals):
        if isinstance(v, PrecisionExhausted) and v.lower_bound < hull.evaluate(i, y0):
            raise PrecisionError(
                f"coefficient of x^{n - i} is only known to have valuation {v}, "
                "which does not settle the Newton polygon",
                suggested_precision=2 * ctx.N)
    return hull


def newton_slopes(phi: PhiMatrix) -> SlopeData:
    """Newton slopes of phi: eigenvalue valuations of phi^r, divided by r."""
    r = phi.context.r
    hull = hull_slopes(charpoly(linearize(phi)))
    return SlopeData(SlopeMultiset(tuple((s / r, m) for s, m in hull.entries)), 1)


def block_phi_from_factors(factor_maps: Sequence[Sequence[Sequence[UnramifiedElement]]]) -> PhiMatrix:
    """Block matrix sending block ``m`` to block ``m+1 mod r`` through ``B_m``.

    Exactly r = [Q_{p^r}:Q_p] factors of size n are expected, giving an
    ``rn x rn`` matrix; the context is taken from the entries.
    """
    k = len(factor_maps)
    if k == 0:
        raise ValueError("need at least one factor")
    n = len(factor_maps[0])
    if any(len(b) != n or any(len(row) != n for row in b) for b in factor_maps):
        raise DimensionMismatchError("all factor maps must be square of the same size")
    ctx = factor_maps[0][0][0].context
    if k != ctx.r:
        raise DimensionMismatchError(f"expected {ctx.r} factor maps, got {k}")
    big = [[ctx.zero() for _ in range(k * n)] for _ in range(k * n)]
    for m, b in enumerate(factor_maps):
        dst = (m + 1) % k
        for i in range(n):
            for j in range(n):
                big[dst * n + i][m * n + j] = b[i][j]
    return PhiMatrix(ctx, tuple(tuple(row) for row in big))


# -- random test material ------------------------------------------------------

def random_unit(ctx: UnramifiedContext, rng) -> UnramifiedElement:
    m = ctx.p ** ctx.N
    while True:
        coeffs = [rng.randrange(m) for _ in range(ctx.r)]
        if any(c % ctx.p for c in coeffs):
            return ctx.element(coeffs)


def random_integral(ctx: UnramifiedContext, rng) -> UnramifiedElement:
    m = ctx.p ** ctx.N
    return ctx.element([rng.randrange(m) for _ in range(ctx.r)])


def random_unimodular(n: int, rng, steps: int | None = None) -> tuple[list[list[int]], list[list[int]]]:
    """Integer matrix of determinant 1 and its inverse, from elementary moves."""
    w = [[int(i == j) for j in range(n)] for i in range(n)]
    winv = [row[:] for row in w]
    for _ in range(steps if steps is not None else 2 * n * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-3, 3)
        # w <- w * (I + c e_ij), winv <- (I - c e_ij) * winv
        for k in range(n):
            w[k][j] += c * w[k][i]
        for k in range(n):
            winv[i][k] -= c * winv[j][k]
    return w, winv


def random_block_factors(ctx: UnramifiedContext, n: int, rng, max_exp: int = 2):
    """``r`` factor maps of size n with a known phi^r slope datum.

    Each ``B_m`` is upper triangular with diagonal ``p^e * unit`` and then
    conjugated by one shared unimodular integer matrix, which sigma fixes.
    The cyclic product is therefore similar to an upper triangular matrix
    whose i-th diagonal valuation is the sum over m of the exponents.
    Returns ``(factors, SlopeData at level r)``.
    """
    r = ctx.r
    w_int, winv_int = random_unimodular(n, rng)
    w, winv = from_ints(ctx, w_int), from_ints(ctx, winv_int)
    exps = [[rng.randint(0, max_exp) for _ in range(n)] for _ in range(r)]
    factors = []
    for m in range(r):
        b = [[ctx.zero() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            b[i][i] = random_unit(ctx, rng) * ctx.from_int(ctx.p ** exps[m][i])
            for j in range(i + 1, n):
                b[i][j] = random_integral(ctx, rng)
        factors.append(matmul(matmul(winv, b), w))
    sums = [sum(exps[m][i] for m in range(r)) for i in range(n)]
    return factors, SlopeData.from_pairs(((s, 1) for s in sums), level=r)
