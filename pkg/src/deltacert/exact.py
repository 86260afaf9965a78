"""Exact rational substrate: polynomials, piecewise polynomials, linear solves.

Scalars are :class:`fractions.Fraction` throughout.  Floats are rejected at
every entry point so that nothing downstream can silently lose precision.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction, str]

#: Pieces above this degree almost certainly indicate a modelling mistake.
DEGREE_WARN = 4


class DomainError(ValueError):
    """Evaluation or integration outside a piecewise function's domain."""


class SingularMatrixError(ArithmeticError):
    """Raised by :func:`solve_linear` when the system has no unique solution."""


def q(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction; accepts ints, Fractions and ``"p/q"`` strings."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE"):
            raise ValueError(f"not an exact rational literal: {x!r}")
        return Fraction(s)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def fmt(x: Fraction) -> str:
    """Canonical ``"p/q"`` form; the denominator is always written."""
    x = q(x)
    return f"{x.numerator}/{x.denominator}"


def fmt_short(x: Fraction) -> str:
    """Human form: integers without ``/1``."""
    x = q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial with rational coefficients, constant term first."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [q(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c: RationalLike) -> "Poly":
        return cls((q(c),))

    @classmethod
    def linear(cls, c0: RationalLike, c1: RationalLike) -> "Poly":
        return cls((q(c0), q(c1)))

    @classmethod
    def var(cls) -> "Poly":
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, t: RationalLike) -> Fraction:
        t = q(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def _lift(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly.const(other)

    def __add__(self, other) -> "Poly":
        o = self._lift(other)
        m = max(len(self.coeffs), len(o.coeffs))
        return Poly(tuple(self.coeff(k) + o.coeff(k) for k in range(m)))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.degree
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            c = rem[-1] / other.lead
            quo[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(tuple(quo)), Poly(tuple(rem))

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def antiderivative(self) -> "Poly":
        return Poly((Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(self.coeffs)))

    def integrate(self, lo: RationalLike, hi: RationalLike) -> Fraction:
        F = self.antiderivative()
        return F(hi) - F(lo)

    def monic(self) -> "Poly":
        return self * (1 / self.lead) if self.coeffs else self

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(fmt_short(c) + ("" if k == 0 else "*t" if k == 1 else f"*t^{k}"))
        return "Poly(" + " + ".join(terms) + ")"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootIsolation:
    """Roots of a polynomial in a closed interval.

    ``rational`` lists the exact rational roots; each entry of ``irrational``
    is an open interval ``(a, b)`` with rational ends holding exactly one
    irrational root.
    """

    rational: tuple[Fraction, ...]
    irrational: tuple[tuple[Fraction, Fraction], ...]


def _divisors(m: int) -> list[int]:
    m = abs(m)
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def _rational_roots(p: Poly) -> list[Fraction]:
    """All distinct rational roots of ``p``."""
    if p.degree <= 0:
        return []
    if p.degree == 1:
        return [-p.coeffs[0] / p.coeffs[1]]
    if p.degree == 2:
        c, b, a = p.coeffs
        disc = b * b - 4 * a * c
        if disc < 0:
            return []
        rn, rd = math.isqrt(disc.numerator), math.isqrt(disc.denominator)
        if rn * rn != disc.numerator or rd * rd != disc.denominator:
            return []
        r = Fraction(rn, rd)
        return sorted({(-b - r) / (2 * a), (-b + r) / (2 * a)})
    roots = []
    if p.coeffs[0] == 0:
        roots.append(Fraction(0))
        k = next(i for i, c in enumerate(p.coeffs) if c)
        p = Poly(p.coeffs[k:])
    lcm = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * lcm) for c in p.coeffs]
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and p(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def _sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        chain.append(-chain[-2].divmod(chain[-1])[1])
    return chain[:-1]


def _sign_changes(chain: list[Poly], t: Fraction) -> int:
    signs = [s for s in ((f(t) > 0) - (f(t) < 0) for f in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def isolate_roots(p: Poly, lo: RationalLike, hi: RationalLike) -> RootIsolation:
    """Exact rational roots and isolating intervals for irrational ones in ``[lo, hi]``."""
    lo, hi = q(lo), q(hi)
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    rational = [r for r in _rational_roots(p) if lo <= r <= hi]
    # strip every rational root so the remainder has only irrational ones
    rest = p
    for r in _rational_roots(p):
        lin = Poly.linear(-r, 1)
        while True:
            quo, rem = rest.divmod(lin)
            if not rem.is_zero():
                break
            rest = quo
    irrational: list[tuple[Fraction, Fraction]] = []
    if rest.degree >= 2 and lo < hi:
        sqfree = rest.divmod(poly_gcd(rest, rest.derivative()))[0]
        chain = _sturm_chain(sqfree)
        stack = [(lo, hi)]
        while stack:
            a, b = stack.pop()
            count = _sign_changes(chain, a) - _sign_changes(chain, b)
            if count == 1:
                irrational.append((a, b))
            elif count > 1:
                mid = (a + b) / 2
                stack += [(a, mid), (mid, b)]
        irrational.sort()
    return RootIsolation(tuple(sorted(rational)), tuple(irrational))


def roots_in_interval(p: Poly, lo: RationalLike, hi: RationalLike) -> list[Fraction]:
    """Sorted rational roots of ``p`` in the closed interval ``[lo, hi]``."""
    return list(isolate_roots(p, lo, hi).rational)


# ---------------------------------------------------------------------------
# Piecewise polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PiecewisePoly:
    """Polynomial pieces on closed intervals ``[t_i, t_{i+1}]``.

    Neighbouring pieces share their endpoint.  With ``zero_tail`` the function
    is taken to be zero to the right of the last breakpoint.
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Poly, ...]
    zero_tail: bool = False
    continuous: bool = True

    def __post_init__(self):
        bps = tuple(q(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if len(bps) < 2 or len(self.pieces) != len(bps) - 1:
            raise ValueError("need k+1 breakpoints for k pieces")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if self.continuous:
            for i in range(1, len(bps) - 1):
                if self.pieces[i - 1](bps[i]) != self.pieces[i](bps[i]):
                    raise ValueError(f"pieces disagree at breakpoint {fmt(bps[i])}")
        if __debug__ and max(p.degree for p in self.pieces) > DEGREE_WARN:
            warnings.warn("piece of degree > 4: probable modelling error", stacklevel=2)

    @property
    def lo(self) -> Fraction:
        return self.breakpoints[0]

    @property
    def hi(self) -> Fraction:
        return self.breakpoints[-1]

    def __call__(self, t: RationalLike) -> Fraction:
        t = q(t)
        if t < self.lo or (t > self.hi and not self.zero_tail):
            raise DomainError(f"t = {fmt(t)} outside [{fmt(self.lo)}, {fmt(self.hi)}]")
        if t > self.hi:
            return Fraction(0)
        for i, p in enumerate(self.pieces):
            if t <= self.breakpoints[i + 1]:
                return p(t)
        raise AssertionError("unreachable")

    def segments(self) -> Iterable[tuple[Fraction, Fraction, Poly]]:
        for i, p in enumerate(self.pieces):
            yield self.breakpoints[i], self.breakpoints[i + 1], p


def integrate(f: PiecewisePoly, lo: RationalLike, hi: RationalLike) -> Fraction:
    """Exact integral of ``f`` over ``[lo, hi]``."""
    lo, hi = q(lo), q(hi)
    if lo > hi:
        raise ValueError("integration bounds reversed")
    if lo < f.lo or (hi > f.hi and not f.zero_tail):
        raise DomainError(f"[{fmt(lo)}, {fmt(hi)}] leaves the domain of f")
    total = Fraction(0)
    for a, b, p in f.segments():
        a, b = max(a, lo), min(b, hi)
        if a < b:
            total += p.integrate(a, b)
    return total


# ---------------------------------------------------------------------------
# Linear algebra
# ---------------------------------------------------------------------------

Matrix = Sequence[Sequence[RationalLike]]


def solve_linear(M: Matrix, b: Sequence[RationalLike]) -> list[Fraction]:
    """Solve ``M x = b`` exactly by Gauss-Jordan elimination."""
    n = len(M)
    if any(len(row) != n for row in M) or len(b) != n:
        raise ValueError("solve_linear needs a square system")
    A = [[q(v) for v in row] + [q(bi)] for row, bi in zip(M, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [v - f * w for v, w in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def determinant(M: Matrix) -> Fraction:
    A = [[q(v) for v in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        for r in range(col + 1, n):
            f = A[r][col] / A[col][col]
            if f:
                A[r] = [v - f * w for v, w in zip(A[r], A[col])]
    return det


def is_negative_definite(M: Matrix) -> bool:
    """Sylvester's criterion: leading minors alternate in sign, starting negative."""
    n = len(M)
    for k in range(1, n + 1):
        minor = determinant([row[:k] for row in M[:k]])
        if minor == 0 or (minor < 0) != (k % 2 == 1):
            return False
    return True


def matvec(M: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((q(a) * b for a, b in zip(row, v)), Fraction(0)) for row in M]
