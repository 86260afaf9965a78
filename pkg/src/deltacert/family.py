"""The surfaces S_n = (S_n, ½W) of degree 2(2n+1) in P(1, 2, 2n, 4n+1).

Three numerical models are built per ``n``:

``base``
    curves W, L_xy, R_0, R_1 (C_x = L_xy + R_0 + R_1, W ≡ (4n+1)·C_x);
``enlarged``
    the base plus the residual curve R of the pencil y = γx² (generic γ);
``blowup``
    the weighted (1, n) blow-up at O_w with exceptional curve F and the
    proper transforms of L_xy, R_0, R_1.

The polarization is ``A = -(K + ½W) ≡ (3/2)·C_x`` (pulled back on the blow-up).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Fr

from .delta import local_delta_bound, s_flag, s_invariant
from .surface import IntersectionLattice, LogDelPezzo, PointOnCurve, QuotientSingularity

CURVES_BASE = ("W", "L_xy", "R_0", "R_1")
CURVES_ENLARGED = CURVES_BASE + ("R",)
CURVES_BLOWUP = ("F", "L_hat", "R_hat_0", "R_hat_1")


class FamilyError(ValueError):
    pass


def lam(n: int) -> Fr:
    """Target lower bound λ = (20n+5)/(20n+4) for every local delta invariant."""
    return Fr(20 * n + 5, 20 * n + 4)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("n must be an integer")
    if n < 2:
        raise FamilyError(
            f"n = {n} is outside the family: n >= 2 required "
            "(the n = 1 manifold 2M∞#M₂ is covered by earlier work of Boyer-Nakamaye)"
        )


@dataclass(frozen=True)
class FamilyInstance:
    n: int
    base: LogDelPezzo
    enlarged: LogDelPezzo
    blowup: LogDelPezzo
    lam: Fr
    #: coefficient c in K_blowup = φ*K - c·F
    blowup_discrepancy: Fr


def _pairs_base(n: int) -> dict[tuple[str, str], Fr]:
    m = 4 * n + 1
    return {
        ("L_xy", "L_xy"): Fr(-(4 * n - 1), 2 * n * m),
        ("R_0", "R_0"): Fr(-(2 * n + 1), 2 * m),
        ("R_1", "R_1"): Fr(-(2 * n + 1), 2 * m),
        ("L_xy", "R_0"): Fr(1, m),
        ("L_xy", "R_1"): Fr(1, m),
        ("R_0", "R_1"): Fr(n, m),
        # W ≡ (4n+1)·C_x
        ("W", "W"): Fr(m * (2 * n + 1), 2 * n),
        ("W", "L_xy"): Fr(1, 2 * n),
        ("W", "R_0"): Fr(1, 2),
        ("W", "R_1"): Fr(1, 2),
    }


def _points_base(n: int) -> list[PointOnCurve]:
    m = 4 * n + 1
    O_w = QuotientSingularity(m, 1, n)
    half = QuotientSingularity(2, 1, 1)
    return [
        PointOnCurve("p", "L_xy"),
        PointOnCurve("p", "R_0"),
        PointOnCurve("p", "R_1"),
        # (½W·L_xy) at O_z is ½·1/(2n)
        PointOnCurve("O_z", "L_xy", QuotientSingularity(2 * n, 1, 1), Fr(1, 4 * n)),
        # (½W·R_i) at O_i is ½·½
        PointOnCurve("O_0", "R_0", half, Fr(1, 4)),
        PointOnCurve("O_1", "R_1", half, Fr(1, 4)),
        PointOnCurve("O_w", "L_xy", O_w, 0, {"R_0": Fr(1, m), "R_1": Fr(1, m)}),
        PointOnCurve("O_w", "R_0", O_w, 0, {"L_xy": Fr(1, m), "R_1": Fr(n, m)}),
        PointOnCurve("O_w", "R_1", O_w, 0, {"L_xy": Fr(1, m), "R_0": Fr(n, m)}),
    ]


def _three_halves(lattice: IntersectionLattice):
    return lattice.divisor({"L_xy": Fr(3, 2), "R_0": Fr(3, 2), "R_1": Fr(3, 2)})


def build_base(n: int) -> LogDelPezzo:
    _check_n(n)
    lat = IntersectionLattice.from_pairs(CURVES_BASE, _pairs_base(n))
    return LogDelPezzo(
        f"S_{n}", lat, lat.divisor({"W": Fr(1, 2)}), _three_halves(lat), tuple(_points_base(n))
    )


def build_enlarged(n: int) -> LogDelPezzo:
    _check_n(n)
    pairs = _pairs_base(n)
    pairs.update({
        ("R", "R"): Fr(1, 2 * n),
        ("L_xy", "R"): Fr(1, 2 * n),
        ("W", "R"): 2 + Fr(1, 2 * n),
        ("R_0", "R"): Fr(0),
        ("R_1", "R"): Fr(0),
    })
    lat = IntersectionLattice.from_pairs(CURVES_ENLARGED, pairs)
    points = _points_base(n) + [
        PointOnCurve("p", "R"),
        # L_xy ∩ R = {O_z}; W meets R there with local number 1/(2n)
        PointOnCurve("O_z", "R", QuotientSingularity(2 * n, 1, 1), Fr(1, 4 * n), {"L_xy": Fr(1, 2 * n)}),
    ]
    return LogDelPezzo(
        f"S_{n}+R", lat, lat.divisor({"W": Fr(1, 2)}), _three_halves(lat), tuple(points)
    )


def build_blowup_ow(n: int) -> LogDelPezzo:
    """Weighted (1, n) blow-up of O_w.

    The boundary ½W is disjoint from O_w and W is not tracked here, so the
    boundary vector is zero.
    """
    _check_n(n)
    m = 4 * n + 1
    lat = IntersectionLattice.from_pairs(CURVES_BLOWUP, {
        ("F", "F"): Fr(-m, n),
        ("L_hat", "L_hat"): Fr(-1, 2 * n),
        ("R_hat_0", "R_hat_0"): Fr(-1, 2),
        ("R_hat_1", "R_hat_1"): Fr(-1, 2),
        ("L_hat", "F"): Fr(1, n),
        ("R_hat_0", "F"): Fr(1),
        ("R_hat_1", "F"): Fr(1),
    })
    pol = lat.divisor({
        "L_hat": Fr(3, 2), "R_hat_0": Fr(3, 2), "R_hat_1": Fr(3, 2),
        "F": Fr(3 * (2 * n + 1), 2 * m),
    })
    points = (
        PointOnCurve("p", "F"),
        PointOnCurve("q_L", "F", QuotientSingularity(n, -1, 1), 0, {"L_hat": Fr(1, n)}),
        PointOnCurve("q_0", "F", negative_support={"R_hat_0": Fr(1)}),
        PointOnCurve("q_1", "F", negative_support={"R_hat_1": Fr(1)}),
    )
    return LogDelPezzo(f"S_{n} blown up at O_w", lat, lat.zero(), pol, points)


def build_sn(n: int) -> FamilyInstance:
    _check_n(n)
    return FamilyInstance(
        n=n,
        base=build_base(n),
        enlarged=build_enlarged(n),
        blowup=build_blowup_ow(n),
        lam=lam(n),
        blowup_discrepancy=Fr(3 * n, 4 * n + 1),
    )


# ---------------------------------------------------------------------------
# closed forms and their engine counterparts

CLOSED_FORM_KEYS = (
    "A^2",
    "lambda",
    "S(L_xy)",
    "S(W^L_xy;p)",
    "S(R_0)",
    "S(R_1)",
    "S(W^R_0;p)",
    "S(W^R_1;p)",
    "S(R)",
    "S(W)",
    "S(F)",
    "delta(O_z)",
    "delta(O_0)",
    "delta(O_1)",
)


def closed_forms(n: int) -> dict[str, Fr]:
    """Published closed forms at a concrete ``n``."""
    _check_n(n)
    S_L = Fr(3 * n + 1, 2 * (2 * n + 1))
    Sf_L = Fr(4 * n * n + 3 * n + 1, 4 * n * (2 * n + 1) * (4 * n + 1))
    S_Ri = Fr(4 * n * n + 3 * n + 1, 4 * n * (2 * n + 1))
    Sf_Ri = Fr(8 * n * n + 7 * n + 1, 8 * n * (2 * n + 1) * (4 * n + 1))
    d_Oz = min(Fr(2 * (2 * n + 1), 3 * n + 1), Fr((2 * n + 1) * (4 * n + 1), 4 * n * n + 3 * n + 1))
    d_Oi = min(
        Fr(4 * n * (2 * n + 1), 4 * n * n + 3 * n + 1),
        Fr(2 * n * (2 * n + 1) * (4 * n + 1), 8 * n * n + 7 * n + 1),
    )
    return {
        "A^2": Fr(9 * (2 * n + 1), 8 * n * (4 * n + 1)),
        "lambda": lam(n),
        "S(L_xy)": S_L,
        "S(W^L_xy;p)": Sf_L,
        "S(R_0)": S_Ri,
        "S(R_1)": S_Ri,
        "S(W^R_0;p)": Sf_Ri,
        "S(W^R_1;p)": Sf_Ri,
        "S(R)": Fr(16 * n**3 + 16 * n**2 + 7 * n + 1, 2 * (2 * n + 1) * (4 * n + 1) ** 2),
        "S(W)": Fr(1, 2 * (4 * n + 1)),
        "S(F)": Fr(4 * n + 3, 4 * (4 * n + 1)),
        "delta(O_z)": d_Oz,
        "delta(O_0)": d_Oi,
        "delta(O_1)": d_Oi,
    }


SINGULAR_FLAGS = (("L_xy", "O_z"), ("R_0", "O_0"), ("R_1", "O_1"))


def computed_values(inst: FamilyInstance) -> dict[str, Fr]:
    """Engine-computed counterparts of :func:`closed_forms`."""
    b = inst.base
    out = {
        "A^2": b.volume_A2,
        "lambda": inst.lam,
        "S(L_xy)": s_invariant(b, "L_xy"),
        "S(W^L_xy;p)": s_flag(b, "L_xy", b.point("L_xy", "p")),
        "S(R_0)": s_invariant(b, "R_0"),
        "S(R_1)": s_invariant(b, "R_1"),
        "S(W^R_0;p)": s_flag(b, "R_0", b.point("R_0", "p")),
        "S(W^R_1;p)": s_flag(b, "R_1", b.point("R_1", "p")),
        "S(R)": s_invariant(inst.enlarged, "R"),
        "S(W)": s_invariant(b, "W"),
        "S(F)": s_invariant(inst.blowup, "F"),
    }
    for curve, pt in SINGULAR_FLAGS:
        out[f"delta({pt})"] = local_delta_bound(b, curve, b.point(curve, pt)).delta_bound
    return out
