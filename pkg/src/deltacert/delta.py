"""Volumes, expected vanishing orders and local delta lower bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import PiecewisePoly, Poly, integrate
from .surface import LogDelPezzo, PointOnCurve
from .zariski import poly_dot, decompose_family

#: Default slack added to expected vanishing orders in multiplicity bounds.
DEFAULT_EPSILON = Fraction(1, 10**6)


class FlagError(ValueError):
    pass


@dataclass(frozen=True)
class FlagReport:
    curve: str
    point: str
    S_curve: Fraction
    S_flag: Fraction
    A_log: Fraction
    delta_bound: Fraction
    #: True when ord_p(N(u)|_C) vanishes for every u, i.e. p avoids the negative part.
    off_negative_support: bool = True


def volume_function(surface: LogDelPezzo, C: str) -> PiecewisePoly:
    """``vol(A - tC) = P(t)^2`` on ``[0, tau]``, zero afterwards."""
    fam = decompose_family(surface, C)
    pieces = [poly_dot(s.positive, s.positive, surface) for s in fam.segments]
    return PiecewisePoly(tuple(fam.breakpoints), tuple(pieces), zero_tail=True)


def s_invariant(surface: LogDelPezzo, C: str) -> Fraction:
    """Expected vanishing order ``(1/A^2) ∫ vol(A - tC) dt``."""
    vol = volume_function(surface, C)
    return integrate(vol, 0, vol.hi) / surface.volume_A2


def _restricted_degree(surface: LogDelPezzo, C: str) -> list[Poly]:
    """``P(u)·C`` per segment, affine in ``u``."""
    fam = decompose_family(surface, C)
    unit = [Poly.const(1) if nm == C else Poly() for nm in surface.lattice.names]
    return [poly_dot(s.positive, unit, surface) for s in fam.segments]


def _ord_on_curve(surface: LogDelPezzo, C: str, p: PointOnCurve) -> list[Poly]:
    """``ord_p(N(u)|_C)`` per segment from the point's local intersection data."""
    fam = decompose_family(surface, C)
    idx = {nm: i for i, nm in enumerate(surface.lattice.names)}
    out = []
    for s in fam.segments:
        acc = Poly()
        for nm, local in p.negative_support.items():
            acc = acc + s.negative[idx[nm]] * local
        out.append(acc)
    return out


def _check_host(surface: LogDelPezzo, C: str, p: PointOnCurve) -> None:
    surface.lattice.curve(C)
    if p.host != C:
        raise FlagError(f"point {p.name} lies on {p.host}, not on {C}")


def h_function(surface: LogDelPezzo, C: str, p: PointOnCurve) -> PiecewisePoly:
    """``h(u) = (P·C)·ord_p(N|_C) + ½(P·C)^2`` on ``[0, tau]``.

    The restricted volume on ``C`` is taken as ``max(P·C - v, 0)``, so its
    integral over ``v`` is ``½(P·C)^2``; quotient-singular corrections enter
    only through the log discrepancy.
    """
    _check_host(surface, C, p)
    fam = decompose_family(surface, C)
    pieces = [
        deg * ordp + deg * deg * Fraction(1, 2)
        for deg, ordp in zip(_restricted_degree(surface, C), _ord_on_curve(surface, C, p))
    ]
    return PiecewisePoly(tuple(fam.breakpoints), tuple(pieces), zero_tail=True)


def s_flag(surface: LogDelPezzo, C: str, p: PointOnCurve) -> Fraction:
    """``S(W^C; p) = (2/A^2) ∫_0^tau h(u) du``."""
    h = h_function(surface, C, p)
    return 2 * integrate(h, 0, h.hi) / surface.volume_A2


def log_discrepancy(surface: LogDelPezzo, C: str, p: PointOnCurve) -> Fraction:
    """``A_{C,Δ}(p) = 1/r - (Ω·C)_p``."""
    _check_host(surface, C, p)
    a = Fraction(1, p.sing.r) - p.boundary_local
    if a < 0:
        raise FlagError(f"negative log discrepancy at {p.name} on {C}: pair is not plt there")
    return a


def combine_bound(S_curve: Fraction, S_flag_: Fraction, A_log: Fraction) -> Fraction:
    """``min(1/S(C), A/S(W^C;p))``; a vanishing flag invariant drops its term."""
    if S_curve <= 0:
        raise FlagError("S(C) must be positive")
    first = 1 / S_curve
    return first if S_flag_ == 0 else min(first, A_log / S_flag_)


def local_delta_bound(surface: LogDelPezzo, C: str, p: PointOnCurve) -> FlagReport:
    S_c = s_invariant(surface, C)
    S_f = s_flag(surface, C, p)
    A = log_discrepancy(surface, C, p)
    off = all(o.is_zero() for o in _ord_on_curve(surface, C, p))
    return FlagReport(C, p.name, S_c, S_f, A, combine_bound(S_c, S_f, A), off)


def fujita_mult_bound(surface: LogDelPezzo, C: str, epsilon: Optional[Fraction] = None) -> Fraction:
    """Asymptotic bound on ``ord_C`` of basis-type divisors: ``S(C)`` (+ ``epsilon`` if given)."""
    S = s_invariant(surface, C)
    return S if epsilon is None else S + epsilon
