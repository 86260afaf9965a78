"""Zariski decomposition of ``A - tC`` on a tracked-curve model.

Two independent routes are provided.  :func:`decompose_at` runs Fujita's
iterative algorithm at one rational ``t``.  :func:`decompose_family` solves
the same linear systems with coefficients affine in ``t`` and walks from
``t = 0`` to the pseudoeffective threshold, locating every breakpoint exactly.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Poly, RationalLike, fmt, is_negative_definite, isolate_roots, q, solve_linear
from .surface import DivisorClass, LogDelPezzo


class ZariskiError(ArithmeticError):
    pass


class NotPseudoEffective(ZariskiError):
    pass


class NonConvergence(ZariskiError):
    pass


@dataclass(frozen=True)
class ZariskiPoint:
    t: Fraction
    positive: DivisorClass
    negative: DivisorClass
    support: tuple[str, ...]


@dataclass(frozen=True)
class ZariskiSegment:
    """``P`` and ``N`` on ``[lo, hi]``, one affine polynomial per basis curve."""

    lo: Fraction
    hi: Fraction
    support: tuple[str, ...]
    positive: tuple[Poly, ...]
    negative: tuple[Poly, ...]

    def contains(self, t: Fraction) -> bool:
        return self.lo <= t <= self.hi

    def positive_at(self, t: RationalLike) -> DivisorClass:
        return DivisorClass(tuple(p(t) for p in self.positive))

    def negative_at(self, t: RationalLike) -> DivisorClass:
        return DivisorClass(tuple(p(t) for p in self.negative))


@dataclass(frozen=True)
class ZariskiFamily:
    curve: str
    tau: Fraction
    segments: tuple[ZariskiSegment, ...]

    @property
    def breakpoints(self) -> list[Fraction]:
        return [self.segments[0].lo] + [s.hi for s in self.segments]

    def segment_at(self, t: RationalLike) -> ZariskiSegment:
        t = q(t)
        for s in self.segments:
            if s.contains(t):
                return s
        raise NotPseudoEffective(f"t = {fmt(t)} outside [0, tau = {fmt(self.tau)}]")

    def at(self, t: RationalLike) -> ZariskiPoint:
        t = q(t)
        s = self.segment_at(t)
        return ZariskiPoint(t, s.positive_at(t), s.negative_at(t), s.support)


# ---------------------------------------------------------------------------


def _gram_block(surface: LogDelPezzo, idx: Sequence[int]) -> list[list[Fraction]]:
    g = surface.lattice.gram
    return [[g[i][j] for j in idx] for i in idx]


def _check_support(surface: LogDelPezzo, idx: Sequence[int]) -> None:
    names = surface.lattice.names
    for i in idx:
        if surface.lattice.gram[i][i] >= 0:
            raise NotPseudoEffective(
                f"curve {names[i]} with non-negative self-intersection would enter N"
            )
    if not is_negative_definite(_gram_block(surface, idx)):
        raise NotPseudoEffective(
            "support " + ",".join(names[i] for i in idx) + " is not negative definite"
        )


def decompose_at(surface: LogDelPezzo, C: str, t: RationalLike) -> ZariskiPoint:
    """Zariski decomposition of ``A - tC`` at a single rational ``t``."""
    t = q(t)
    if t < 0:
        raise ValueError("t must be non-negative")
    lat = surface.lattice
    D = surface.polarization - lat.basis(C) * t
    basis = [lat.basis(nm) for nm in lat.names]
    support: list[int] = []
    for _ in range(lat.rank + 1):
        if support:
            rhs = [surface.dot(D, basis[j]) for j in support]
            x = solve_linear(_gram_block(surface, support), rhs)
        else:
            x = []
        N = lat.zero()
        for i, xi in zip(support, x):
            N = N + basis[i] * xi
        P = D - N
        bad = [k for k in range(lat.rank) if k not in support and surface.dot(P, basis[k]) < 0]
        if not bad:
            break
        support = sorted(support + bad)
        _check_support(surface, support)
    else:
        raise NonConvergence(f"support exhausted without nef positive part for {C}")

    if any(xi < 0 for xi in x):
        raise NotPseudoEffective(f"negative part of A - {fmt(t)}*{C} has a negative coefficient")
    if surface.dot(P, P) < 0 or surface.dot(P, surface.polarization) < 0:
        raise NotPseudoEffective(f"A - {fmt(t)}*{C} is not pseudoeffective")
    return ZariskiPoint(t, P, N, tuple(lat.names[i] for i in support))


# ---------------------------------------------------------------------------
# family


def poly_dot(u: Sequence[Poly], v: Sequence[Poly], surface: LogDelPezzo) -> Poly:
    g = surface.lattice.gram
    total = Poly()
    for i, a in enumerate(u):
        if a.is_zero():
            continue
        for j, b in enumerate(v):
            if g[i][j] and not b.is_zero():
                total = total + a * b * g[i][j]
    return total


def _affine_solve(surface: LogDelPezzo, C: str, support: Sequence[int]) -> tuple[list[Poly], list[Poly]]:
    """Coefficients of N and P, affine in t, for a fixed support."""
    lat = surface.lattice
    c = lat.curve(C).index
    n = lat.rank
    D = [Poly.linear(a, -1 if i == c else 0) for i, a in enumerate(surface.polarization.coeffs)]
    x = [Poly()] * n
    if support:
        M = _gram_block(surface, support)
        const = [sum((lat.gram[j][i] * a for i, a in enumerate(surface.polarization.coeffs)), Fraction(0)) for j in support]
        slope = [-lat.gram[j][c] for j in support]
        x0 = solve_linear(M, const)
        x1 = solve_linear(M, slope)
        for i, a, b in zip(support, x0, x1):
            x[i] = Poly.linear(a, b)
    P = [d - xi for d, xi in zip(D, x)]
    return x, P


def _right_sign(f: Poly, t0: Fraction) -> int:
    """Sign of the affine ``f`` just to the right of ``t0``."""
    v = f(t0)
    if v:
        return 1 if v > 0 else -1
    s = f.coeff(1)
    return (s > 0) - (s < 0)


def _support_right_of(surface: LogDelPezzo, C: str, t0: Fraction) -> list[int]:
    lat = surface.lattice
    unit = [[Poly.const(1) if i == k else Poly() for i in range(lat.rank)] for k in range(lat.rank)]
    support: list[int] = []
    for _ in range(lat.rank + 1):
        _, P = _affine_solve(surface, C, support)
        bad = [
            k for k in range(lat.rank)
            if k not in support and _right_sign(poly_dot(P, unit[k], surface), t0) < 0
        ]
        if not bad:
            return support
        support = sorted(support + bad)
        _check_support(surface, support)
    raise NonConvergence(f"support exhausted without nef positive part for {C}")


def _roots_after(p: Poly, t0: Fraction) -> tuple[list[Fraction], list[Fraction]]:
    """Rational roots ``> t0`` and lower ends of isolating intervals of irrational ones."""
    if p.is_zero() or p.degree == 0:
        return [], []
    # Cauchy-style bound; every root lies below it
    bound = t0 + 1 + sum(abs(c) for c in p.coeffs) / abs(p.lead)
    iso = isolate_roots(p, t0, bound)
    return [r for r in iso.rational if r > t0], [a for a, _ in iso.irrational]


def _family(surface: LogDelPezzo, C: str) -> ZariskiFamily:
    lat = surface.lattice
    n = lat.rank
    unit = [[Poly.const(1) if i == k else Poly() for i in range(n)] for k in range(n)]
    A = [Poly.const(a) for a in surface.polarization.coeffs]
    segments: list[ZariskiSegment] = []
    t0 = Fraction(0)
    for _ in range(4 * n + 4):
        support = _support_right_of(surface, C, t0)
        x, P = _affine_solve(surface, C, support)
        if any(_right_sign(x[i], t0) < 0 for i in support):
            raise NotPseudoEffective(f"negative part of A - t*{C} turns negative at {fmt(t0)}")
        vol = poly_dot(P, P, surface)
        if _right_sign(vol, t0) <= 0 or _right_sign(poly_dot(P, A, surface), t0) < 0:
            raise NotPseudoEffective(f"A - t*{C} is not big right of t = {fmt(t0)}")
        walls = []
        for k in range(n):
            if k not in support:
                walls += _roots_after(poly_dot(P, unit[k], surface), t0)[0]
            else:
                walls += _roots_after(x[k], t0)[0]
        ends, irrational = _roots_after(vol, t0)
        t1 = min(walls + ends, default=None)
        if t1 is None or (irrational and isolate_roots(vol, t0, t1).irrational):
            raise ZariskiError(f"no rational pseudoeffective threshold for {C} (irrational or unbounded)")
        tau_here = ends[0] if ends else None
        seg = ZariskiSegment(t0, t1, tuple(lat.names[i] for i in support), tuple(P), tuple(x))
        if segments and segments[-1].support == seg.support:
            prev = segments[-1]
            seg = ZariskiSegment(prev.lo, t1, seg.support, seg.positive, seg.negative)
            segments[-1] = seg
        else:
            segments.append(seg)
        if t1 == tau_here:
            return ZariskiFamily(C, t1, tuple(segments))
        t0 = t1
    raise NonConvergence(f"too many breakpoints for {C}")


@functools.lru_cache(maxsize=512)
def decompose_family(surface: LogDelPezzo, C: str) -> ZariskiFamily:
    """Piecewise-affine Zariski decomposition of ``A - tC`` on ``[0, tau]``."""
    surface.lattice.curve(C)
    return _family(surface, C)


def pseff_threshold(surface: LogDelPezzo, C: str) -> Fraction:
    """Largest ``t`` with ``A - tC`` pseudoeffective (within the tracked cone)."""
    return decompose_family(surface, C).tau
