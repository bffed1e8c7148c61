"""Exact rationals and fixed-precision arithmetic in unramified extensions of Q_p.

An element of Q_{p^r} is stored as ``p**pshift * sum(c_i * g**i)`` where
``g`` is the class of ``x`` in ``Z[x]/(f)`` for a monic ``f`` of degree r
that is irreducible mod p.  The coefficients ``c_i`` are known modulo
``p**prec`` (``prec <= N``), so an element is determined modulo
``p**(pshift + prec)``.

The Frobenius automorphism is realised by the unique root of ``f`` in the
ring congruent to ``g**p`` mod p, found by Newton iteration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import PrecisionError

Rational = Fraction

DEFAULT_PRECISION = 64
MAX_PRECISION = 4096

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed base set (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def vp(n: int, p: int, cap: int | None = None) -> int | None:
    """p-adic valuation of an integer; ``None`` for zero.

    With ``cap`` set the count stops there, which keeps the loop short for
    coefficients that are only known modulo ``p**cap``.
    """
    if n == 0:
        return cap
    k = 0
    while n % p == 0:
        n //= p
        k += 1
        if cap is not None and k >= cap:
            return cap
    return k


# ---------------------------------------------------------------------------
# Polynomials over F_p, coefficient lists low -> high, no trailing zeros.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return _trim(q), a


def _fp_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _fp_divmod(prod, f, p)[1]


def _fp_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _fp_divmod(a, f, p)[1]
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, f, p)
        base = _fp_mulmod(base, base, f, p)
        e >>= 1
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return a


def _fp_inverse_mod(a: list[int], f: list[int], p: int) -> list[int]:
    """Inverse of ``a`` in F_p[x]/(f) by the extended Euclidean algorithm."""
    r0, r1 = _trim([c % p for c in f]), _trim([c % p for c in a])
    s0, s1 = [], [1]
    while r1:
        q, rem = _fp_divmod(r0, r1, p)
        qs = [0] * (len(q) + len(s1))
        for i, x in enumerate(q):
            for j, y in enumerate(s1):
                qs[i + j] += x * y
        n = max(len(s0), len(qs))
        s_next = [((s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)) % p
                  for i in range(n)]
        r0, r1 = r1, rem
        s0, s1 = s1, _trim(s_next)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo p")
    c = pow(r0[0], -1, p)
    return [x * c % p for x in s0]


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial (low -> high coefficients)."""
    f = _trim([c % p for c in f])
    r = len(f) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    x = [0, 1]

    def frob_iter(k):
        h = x
        for _ in range(k):
            h = _fp_powmod(h, p, f, p)
        return h

    if _trim([(a - b) % p for a, b in itertools.zip_longest(frob_iter(r), x, fillvalue=0)]):
        return False
    for q in _prime_factors(r):
        h = frob_iter(r // q)
        diff = _trim([(a - b) % p for a, b in itertools.zip_longest(h, x, fillvalue=0)])
        if len(_fp_gcd(diff, f, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree r over F_p.

    Polynomials are compared by their coefficient vectors read from the
    leading term down, i.e. ``x^r + a_{r-1} x^{r-1} + ... + a_0`` is keyed
    by ``(a_{r-1}, ..., a_0)``.  Returned low -> high including the 1.
    """
    for tail in itertools.product(range(p), repeat=r):
        f = list(reversed(tail)) + [1]
        if is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# Arithmetic in (Z/p^k)[x]/(f), coefficient lists of length r.

def _ring_mul(a: Sequence[int], b: Sequence[int], f: Sequence[int], m: int) -> list[int]:
    r = len(f) - 1
    prod = [0] * (2 * r - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for i in range(2 * r - 2, r - 1, -1):
        c = prod[i]
        if c:
            for j in range(r):
                prod[i - r + j] -= c * f[j]
    return [c % m for c in prod[:r]]


def _ring_eval(poly: Sequence[int], x: Sequence[int], f: Sequence[int], m: int) -> list[int]:
    """Evaluate an integer polynomial (low -> high) at a ring element by Horner."""
    r = len(f) - 1
    acc = [0] * r
    for c in reversed(poly):
        acc = _ring_mul(acc, x, f, m)
        acc[0] = (acc[0] + c) % m
    return acc


def _ring_unit_inverse(u: Sequence[int], f: Sequence[int], p: int, k: int) -> list[int]:
    """Inverse of a unit of (Z/p^k)[x]/(f) by Newton lifting from mod p."""
    r = len(f) - 1
    y = _fp_inverse_mod(list(u), list(f), p)
    y = y + [0] * (r - len(y))
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        m = p ** prec
        uy = _ring_mul(u, y, f, m)
        two_minus = [(-c) % m for c in uy]
        two_minus[0] = (two_minus[0] + 2) % m
        y = _ring_mul(y, two_minus, f, m)
    return [c % p ** k for c in y]


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrecisionExhausted:
    """Returned by :func:`val` when an element is zero to working precision.

    The true valuation is at least ``lower_bound``.
    """

    lower_bound: int

    def __str__(self):
        return f">={self.lower_bound}"


@dataclass(frozen=True)
class UnramifiedContext:
    """The field Q_{p^r} modelled at ``N`` p-adic digits."""

    p: int
    r: int
    N: int
    modulus: tuple[int, ...]
    frob_gen: tuple[int, ...]

    @cached_property
    def _frob_powers(self) -> list[list[int]]:
        m = self.p ** self.N
        powers = [[1] + [0] * (self.r - 1)]
        for _ in range(1, self.r):
            powers.append(_ring_mul(powers[-1], self.frob_gen, self.modulus, m))
        if self.r == 1:
            powers = [[1]]
        return powers

    def element(self, coeffs: Sequence[int], pshift: int = 0, prec: int | None = None) -> "UnramifiedElement":
        coeffs = list(coeffs)
        if len(coeffs) > self.r:
            raise ValueError(f"expected at most {self.r} coefficients, got {len(coeffs)}")
        coeffs += [0] * (self.r - len(coeffs))
        return UnramifiedElement(self, tuple(coeffs), pshift, self.N if prec is None else prec)

    def zero(self) -> "UnramifiedElement":
        return self.element([0])

    def one(self) -> "UnramifiedElement":
        return self.element([1])

    def gen(self) -> "UnramifiedElement":
        if self.r == 1:
            return self.element([(-self.modulus[0]) % self.p ** self.N])
        return self.element([0, 1])

    def from_int(self, n: int) -> "UnramifiedElement":
        if n == 0:
            return self.zero()
        v = vp(n, self.p)
        return self.element([n // self.p ** v], pshift=v)

    def from_rational(self, x) -> "UnramifiedElement":
        x = Fraction(x)
        num = self.from_int(x.numerator)
        if x.denominator == 1:
            return num
        return num * self.from_int(x.denominator).inverse()


def context_new(p: int, r: int, N: int = DEFAULT_PRECISION, max_precision: int = MAX_PRECISION) -> UnramifiedContext:
    """Build Q_{p^r} at precision ``N`` with an explicit Frobenius lift."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if r < 1:
        raise ValueError("residue degree r must be positive")
    if N < 1:
        raise ValueError("precision N must be positive")
    if N > max_precision:
        raise ValueError(f"precision N = {N} exceeds the ceiling of {max_precision} digits")

    f = smallest_irreducible(p, r)
    if r == 1:
        root = [(-f[0]) % p ** N]
        return UnramifiedContext(p, r, N, f, tuple(root))

    fprime = [i * c for i, c in enumerate(f)][1:]
    rho = _fp_powmod([0, 1], p, list(f), p)
    rho = rho + [0] * (r - len(rho))
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        m = p ** prec
        num = _ring_eval(f, rho, f, m)
        den = _ring_eval(fprime, rho, f, m)
        step = _ring_mul(num, _ring_unit_inverse(den, f, p, prec), f, m)
        rho = [(a - b) % m for a, b in zip(rho, step)]
    return UnramifiedContext(p, r, N, f, tuple(c % p ** N for c in rho))


@dataclass(frozen=True, eq=False)
class UnramifiedElement:
    """``p**pshift * sum(coeffs[i] * g**i)`` with coefficients known mod ``p**prec``.

    Instances are immutable. ``==`` means "equal to the precision both sides carry".
    """

    context: UnramifiedContext
    coeffs: tuple[int, ...]
    pshift: int = 0
    prec: int = DEFAULT_PRECISION

    def __post_init__(self):
        ctx = self.context
        if len(self.coeffs) != ctx.r:
            raise ValueError("coefficient vector has the wrong length")
        prec = min(self.prec, ctx.N)
        if prec < 0:
            prec = 0
        m = ctx.p ** prec
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "coeffs", tuple(c % m for c in self.coeffs))

    # -- helpers -------------------------------------------------------------

    def _coerce(self, other) -> "UnramifiedElement":
        if isinstance(other, UnramifiedElement):
            if other.context is not self.context and other.context != self.context:
                raise ValueError("elements belong to different contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.from_rational(other)
        return NotImplemented

    def _relval(self) -> int:
        """Valuation of the coefficient vector, capped at ``prec``."""
        p = self.context.p
        return min(vp(c, p, self.prec) for c in self.coeffs) if self.prec else 0

    @property
    def absolute_precision(self) -> int:
        return self.pshift + self.prec

    def is_exhausted(self) -> bool:
        return self._relval() >= self.prec

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.context.p
        s = min(self.pshift, other.pshift)
        absprec = min(self.absolute_precision, other.absolute_precision)
        a = p ** (self.pshift - s)
        b = p ** (other.pshift - s)
        coeffs = [x * a + y * b for x, y in zip(self.coeffs, other.coeffs)]
        return UnramifiedElement(self.context, tuple(coeffs), s, absprec - s)

    __radd__ = __add__

    def __neg__(self):
        return UnramifiedElement(self.context, tuple(-c for c in self.coeffs), self.pshift, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ctx = self.context
        prec = min(self.prec + other._relval(), other.prec + self._relval())
        m = ctx.p ** min(prec, ctx.N)
        coeffs = _ring_mul(self.coeffs, other.coeffs, ctx.modulus, m)
        return UnramifiedElement(ctx, tuple(coeffs), self.pshift + other.pshift, prec)

    __rmul__ = __mul__

    def normalize(self) -> "UnramifiedElement":
        """Move the common power of p out of the coefficients into ``pshift``.

        Exhausted elements are returned unchanged.  Absolute precision is kept.
        """
        k = self._relval()
        if k == 0 or k >= self.prec:
            return self
        q = self.context.p ** k
        return UnramifiedElement(self.context, tuple(c // q for c in self.coeffs),
                                 self.pshift + k, self.prec - k)

    def inverse(self) -> "UnramifiedElement":
        """Multiplicative inverse.

        The result carries ``prec - val`` relative digits: inverting an
        element stored as ``p**v * unit`` at ``prec`` digits loses ``v``.
        """
        x = self.normalize()
        if x.is_exhausted():
            raise PrecisionError("cannot invert an element that is zero to working precision",
                                 suggested_precision=2 * self.context.N)
        ctx = self.context
        inv = _ring_unit_inverse(x.coeffs, ctx.modulus, ctx.p, x.prec)
        return UnramifiedElement(ctx, tuple(inv), -x.pshift, x.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_exhausted()

    __hash__ = None

    def __repr__(self):
        return f"UnramifiedElement(coeffs={list(self.coeffs)}, pshift={self.pshift}, prec={self.prec})"


def val(x: UnramifiedElement) -> Fraction | PrecisionExhausted:
    """p-adic valuation (an integer, returned as a Fraction) or the exhausted flag."""
    k = x._relval()
    if k >= x.prec:
        return PrecisionExhausted(x.pshift + x.prec)
    return Fraction(x.pshift + k)


def frobenius(x: UnramifiedElement, times: int = 1) -> UnramifiedElement:
    """Apply sigma ``times`` times by substituting the Frobenius root for g."""
    ctx = x.context
    times %= ctx.r
    if times == 0 or ctx.r == 1:
        return x
    m = ctx.p ** ctx.N
    powers = ctx._frob_powers
    for _ in range(times):
        out = [0] * ctx.r
        for c, pw in zip(x.coeffs, powers):
            if c:
                for j, w in enumerate(pw):
                    out[j] += c * w
        x = UnramifiedElement(ctx, tuple(v % m for v in out), x.pshift, x.prec)
    return x


def normalize(x: UnramifiedElement) -> UnramifiedElement:
    return x.normalize()


def add(x, y):
    return x + y


def mul(x, y):
    return x * y


def negate(x):
    return -x


def invert(x):
    return x.inverse()
