"""Numerical model of a log del Pezzo surface.

A surface is described only through what the certification consumes: a
finite list of tracked curves with their intersection matrix, the boundary
and polarization as rational combinations of those curves, and a set of
annotated points carrying their local data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import RationalLike, q


@dataclass(frozen=True)
class CurveClass:
    name: str
    index: int


@dataclass(frozen=True)
class DivisorClass:
    """Rational combination of the tracked curves of one lattice."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(q(c) for c in self.coeffs))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _same_len(self, other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _same_len(self, other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, c: RationalLike) -> "DivisorClass":
        c = q(c)
        return DivisorClass(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __neg__(self) -> "DivisorClass":
        return self * -1

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _same_len(a: DivisorClass, b: DivisorClass) -> None:
    if len(a.coeffs) != len(b.coeffs):
        raise ValueError(f"dimension mismatch: {len(a.coeffs)} vs {len(b.coeffs)}")


@dataclass(frozen=True)
class IntersectionLattice:
    names: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "gram", tuple(tuple(q(v) for v in row) for row in self.gram))

    @classmethod
    def from_pairs(
        cls, names: Sequence[str], pairs: Mapping[tuple[str, str], RationalLike]
    ) -> "IntersectionLattice":
        """Build a symmetric lattice from ``{(a, b): value}``; missing pairs are 0."""
        idx = {nm: i for i, nm in enumerate(names)}
        g = [[Fraction(0)] * len(names) for _ in names]
        for (a, b), v in pairs.items():
            g[idx[a]][idx[b]] = g[idx[b]][idx[a]] = q(v)
        return cls(tuple(names), tuple(map(tuple, g)))

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def curves(self) -> tuple[CurveClass, ...]:
        return tuple(CurveClass(nm, i) for i, nm in enumerate(self.names))

    def curve(self, name: str) -> CurveClass:
        try:
            return CurveClass(name, self.names.index(name))
        except ValueError:
            raise KeyError(f"no curve named {name!r} in lattice") from None

    def basis(self, name: str) -> DivisorClass:
        return self.divisor({name: 1})

    def divisor(self, coeffs: Mapping[str, RationalLike]) -> DivisorClass:
        v = [Fraction(0)] * self.rank
        for nm, c in coeffs.items():
            v[self.curve(nm).index] = q(c)
        return DivisorClass(tuple(v))

    def zero(self) -> DivisorClass:
        return DivisorClass((Fraction(0),) * self.rank)

    def pair(self, a: str, b: str) -> Fraction:
        return self.gram[self.curve(a).index][self.curve(b).index]

    def as_dict(self, d: DivisorClass) -> dict[str, Fraction]:
        return {nm: c for nm, c in zip(self.names, d.coeffs) if c}


def intersect(d1: DivisorClass, d2: DivisorClass, lattice: IntersectionLattice) -> Fraction:
    """Intersection number ``d1ᵀ · gram · d2``."""
    n = lattice.rank
    if len(d1.coeffs) != n or len(d2.coeffs) != n:
        raise ValueError(f"dimension mismatch: lattice has rank {n}")
    total = Fraction(0)
    for i, a in enumerate(d1.coeffs):
        if a:
            row = lattice.gram[i]
            total += a * sum((row[j] * b for j, b in enumerate(d2.coeffs) if b), Fraction(0))
    return total


def numerically_equal(d1: DivisorClass, d2: DivisorClass, lattice: IntersectionLattice) -> bool:
    diff = d1 - d2
    return all(intersect(diff, lattice.basis(nm), lattice) == 0 for nm in lattice.names)


@dataclass(frozen=True)
class QuotientSingularity:
    """Cyclic quotient singularity of type 1/r(a, b); ``r == 1`` is a smooth point."""

    r: int = 1
    a: int = 1
    b: int = 1

    @property
    def smooth(self) -> bool:
        return self.r == 1


SMOOTH = QuotientSingularity()


@dataclass(frozen=True)
class PointOnCurve:
    """A point ``p`` on a host curve ``C`` with the local data the flags need.

    ``boundary_local`` is the local intersection (Ω·C)_p.  ``negative_support``
    maps curve names to their local intersection with the host at ``p``; it
    feeds ord_p(N|_C).
    """

    name: str
    host: str
    sing: QuotientSingularity = SMOOTH
    boundary_local: Fraction = Fraction(0)
    negative_support: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "boundary_local", q(self.boundary_local))
        object.__setattr__(
            self,
            "negative_support",
            dict(sorted((k, q(v)) for k, v in dict(self.negative_support).items())),
        )

    def __hash__(self):
        return hash((self.name, self.host))


@dataclass(frozen=True)
class LogDelPezzo:
    name: str
    lattice: IntersectionLattice
    boundary: DivisorClass
    polarization: DivisorClass
    points: tuple[PointOnCurve, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))

    @property
    def volume_A2(self) -> Fraction:
        return intersect(self.polarization, self.polarization, self.lattice)

    def curve(self, name: str) -> CurveClass:
        return self.lattice.curve(name)

    def point(self, host: str, name: str) -> PointOnCurve:
        for p in self.points:
            if p.host == host and p.name == name:
                return p
        raise KeyError(f"no point {name!r} on curve {host!r}")

    def dot(self, d1: DivisorClass, d2: DivisorClass) -> Fraction:
        return intersect(d1, d2, self.lattice)


def validate(surface: LogDelPezzo) -> list[str]:
    """Return a list of violations; empty means the surface is usable."""
    out: list[str] = []
    lat = surface.lattice
    n = lat.rank
    if len(lat.gram) != n or any(len(row) != n for row in lat.gram):
        out.append("gram dimensions do not match curve count")
        return out
    if any(lat.gram[i][j] != lat.gram[j][i] for i in range(n) for j in range(i)):
        out.append("gram not symmetric")
    if len(set(lat.names)) != n:
        out.append("curve names not unique")
    for label, d in (("boundary", surface.boundary), ("polarization", surface.polarization)):
        if len(d.coeffs) != n:
            out.append(f"{label} has {len(d.coeffs)} coefficients, lattice has {n}")
    if out:
        return out
    for nm, c in zip(lat.names, surface.boundary.coeffs):
        if not 0 <= c < 1:
            out.append(f"boundary coefficient out of [0,1) on {nm}: {c}")
    if surface.volume_A2 <= 0:
        out.append("polarization is not big: A^2 <= 0")
    seen = set()
    for p in surface.points:
        key = (p.host, p.name)
        if key in seen:
            out.append(f"duplicate point {p.name} on {p.host}")
        seen.add(key)
        if p.host not in lat.names:
            out.append(f"point {p.name}: unknown host curve {p.host}")
        for nm in p.negative_support:
            if nm not in lat.names:
                out.append(f"point {p.name}: unknown curve {nm} in negative_support")
        if p.boundary_local < 0:
            out.append(f"point {p.name}: negative boundary_local")
        s = p.sing
        if s.r < 1:
            out.append(f"point {p.name}: singularity order must be >= 1")
        elif math.gcd(s.a, s.r) != 1 or math.gcd(s.b, s.r) != 1:
            out.append(f"point {p.name}: weights not coprime to order {s.r}")
    return out
