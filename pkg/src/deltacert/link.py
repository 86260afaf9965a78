"""Smale-type data of the link of the affine cone over the degree 4(2n+1)
hypersurface in P(2, 4, 4n, 4n+1).

b₂ comes from the Milnor–Orlik divisor calculus, cross-checked against the
Poincaré polynomial of the Milnor algebra.  Torsion of H₂ is (Z/m)^{2g} for
the branch curve of genus g with multiplicity m.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence


class LinkError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedHypersurface:
    weights: tuple[int, ...]
    degree: int
    branch_multiplicity: int = 1


def family_hypersurface(n: int) -> WeightedHypersurface:
    return WeightedHypersurface((2, 4, 4 * n, 4 * n + 1), 4 * (2 * n + 1), 2)


# ---------------------------------------------------------------------------
# genus by adjoint monomials


def monomials(weights: Sequence[int], degree: int) -> set[tuple[int, ...]]:
    """Exponent vectors of all monomials of the given weighted degree."""
    if degree < 0:
        return set()
    if not weights:
        return {()} if degree == 0 else set()
    w, rest = weights[0], weights[1:]
    out = set()
    for e in range(degree // w + 1):
        out |= {(e,) + tail for tail in monomials(rest, degree - e * w)}
    return out


def count_monomials(weights: Sequence[int], degree: int) -> int:
    """Number of monomials of the given weighted degree (coin-change count)."""
    if degree < 0:
        return 0
    ways = [1] + [0] * degree
    for w in weights:
        for k in range(w, degree + 1):
            ways[k] += ways[k - w]
    return ways[degree]


def genus_weighted_curve(weights: Sequence[int], degree: int) -> int:
    """Genus of a quasi-smooth curve of ``degree`` in P(weights): h⁰ of degree ``d - Σw``."""
    return count_monomials(weights, degree - sum(weights))


def genus_branch_curve(n: int) -> int:
    """Genus of W, a smooth curve of degree 2n+1 in P(1, 1, n)."""
    if n < 1:
        raise LinkError("n must be positive")
    return genus_weighted_curve((1, 1, n), 2 * n + 1)


def torsion_h2(n: int, m: int = 2) -> dict[int, int]:
    """``{m: k}``: H₂ torsion is k copies of Z/m ⊕ Z/m, with k the branch genus."""
    if m < 1:
        raise LinkError("multiplicity must be positive")
    if m == 1:
        return {}
    g = genus_branch_curve(n)
    return {m: g} if g else {}


def is_quasi_smooth(weights: Sequence[int], degree: int) -> bool:
    """Combinatorial test for a general hypersurface of ``degree`` in P(weights).

    For every nonempty subset I of variables either some monomial in x_I has
    degree d, or there are |I| distinct j outside I with a monomial
    x_I^M · x_j of degree d.
    """
    k = len(weights)
    for size in range(1, k + 1):
        for I in itertools.combinations(range(k), size):
            wI = tuple(weights[i] for i in I)
            if count_monomials(wI, degree):
                continue
            partners = [j for j in range(k) if j not in I and count_monomials(wI, degree - weights[j])]
            if len(partners) < size:
                return False
    return True


# ---------------------------------------------------------------------------
# Milnor–Orlik divisor calculus

Divisor = dict[int, Fraction]


def _lam_mul(x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Divisor:
    out: Divisor = {}
    for a, ca in x.items():
        for b, cb in y.items():
            k = a * b // math.gcd(a, b)
            out[k] = out.get(k, Fraction(0)) + ca * cb * math.gcd(a, b)
    return {k: c for k, c in out.items() if c}


def milnor_orlik_divisor(weights: Sequence[int], degree: int) -> Divisor:
    """Divisor of the monodromy characteristic polynomial as ``{k: c_k}`` over Λ_k.

    Λ_k is the divisor of t^k - 1 and Λ_1 is the unit.
    """
    div: Divisor = {1: Fraction(1)}
    for w in weights:
        r = Fraction(degree, w)
        u, v = r.numerator, r.denominator
        factor: Divisor = {1: Fraction(-1)}
        factor[u] = factor.get(u, Fraction(0)) + Fraction(1, v)
        div = _lam_mul(div, {k: c for k, c in factor.items() if c})
    return div


def _divisors(k: int) -> set[int]:
    out = set()
    for e in range(1, math.isqrt(k) + 1):
        if k % e == 0:
            out |= {e, k // e}
    return out


def root_multiplicities(div: Mapping[int, Fraction]) -> dict[int, Fraction]:
    """Multiplicity of a primitive e-th root of unity for each order e."""
    orders: set[int] = set()
    for k in div:
        orders |= _divisors(k)
    return {e: sum((c for k, c in div.items() if k % e == 0), Fraction(0)) for e in sorted(orders)}


def b2_link(weights: Sequence[int], degree: int) -> int:
    """Second Betti number of the 5-dimensional link (four weights)."""
    if len(weights) != 4:
        raise LinkError("b2_link expects a surface, i.e. four weights")
    if degree in weights:
        return 0  # linear germ: smooth, link S^5
    if not is_quasi_smooth(weights, degree):
        raise LinkError(f"weights {tuple(weights)} with degree {degree} are not quasi-smooth")
    mult = root_multiplicities(milnor_orlik_divisor(weights, degree))
    if any(c < 0 or c.denominator != 1 for c in mult.values()):
        raise LinkError(f"weights {tuple(weights)} with degree {degree} do not give an isolated singularity")
    return int(mult.get(1, 0))


def milnor_algebra_poincare(weights: Sequence[int], degree: int) -> list[int]:
    """Coefficients of ∏ (1 - t^{d-w}) / (1 - t^w); raises unless it is a polynomial."""
    if degree in weights:
        return []  # a linear variable: smooth germ, Milnor algebra is zero
    top = sum(degree - 2 * w for w in weights)
    if top < 0:
        raise LinkError("degree too small for an isolated singularity")
    size = top + max(weights) + degree + 1
    series = [0] * size
    series[0] = 1
    for w in weights:
        num = [0] * size
        for i, c in enumerate(series):
            if c:
                num[i] += c
                if i + degree - w < size:
                    num[i + degree - w] -= c
        # divide by (1 - t^w)
        for i in range(w, size):
            num[i] += num[i - w]
        series = num
    if any(series[top + 1:]):
        raise LinkError(f"weights {tuple(weights)} with degree {degree} are not quasi-smooth")
    return series[: top + 1]


def b2_link_spectrum(weights: Sequence[int], degree: int) -> int:
    """Eigenvalue-1 count from the Milnor algebra: monomials with d | (deg + Σw)."""
    poin = milnor_algebra_poincare(weights, degree)
    s = sum(weights)
    return sum(c for e, c in enumerate(poin) if (e + s) % degree == 0)


# ---------------------------------------------------------------------------

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def smale_label(b2: int, torsion: Mapping[int, int]) -> str:
    parts = []
    if b2:
        parts.append("M∞" if b2 == 1 else f"{b2}M∞")
    for m in sorted(torsion):
        if torsion[m]:
            parts.append(f"{torsion[m]} M{str(m).translate(_SUB)}")
    return " # ".join(parts) if parts else "S⁵"


@dataclass(frozen=True)
class SmaleType:
    """Smale data ``b2 M∞ # k₁ M_{m₁} # ...``; ``torsion_rank_m[m]`` counts Z/m ⊕ Z/m summands."""

    b2: int
    torsion_rank_m: Mapping[int, int] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        if self.b2 < 0 or any(m < 2 or k < 0 for m, k in self.torsion_rank_m.items()):
            raise LinkError("invalid Smale data")
        expected = smale_label(self.b2, self.torsion_rank_m)
        if not self.label:
            object.__setattr__(self, "label", expected)
        elif self.label != expected:
            raise LinkError(f"label {self.label!r} disagrees with the data ({expected!r})")


def classify_smale(n: int, *, allow_n1: bool = False) -> SmaleType:
    """Smale data of the link of the degree 4(2n+1) surface in P(2, 4, 4n, 4n+1)."""
    if n < 1 or (n == 1 and not allow_n1):
        raise LinkError(f"n = {n} outside the family (n >= 2)")
    h = family_hypersurface(n)
    return SmaleType(b2_link(h.weights, h.degree), torsion_h2(n, h.branch_multiplicity))


# used by the tests to confirm monomial counting ignores variable order
def genus_all_orders(weights: Sequence[int], degree: int) -> set[int]:
    d = degree - sum(weights)
    return {len(monomials(p, d)) for p in itertools.permutations(weights)}
