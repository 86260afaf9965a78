"""Audited arithmetic of the log-canonicity arguments for S_n.

Each entry is one displayed inequality (or identity) of the argument with its
bounded variables already set to their worst case.  Every expression is
affine in each bounded variable, so the documented corner is the maximiser.
Sides may carry a multiple of the global slack ``ε`` from the multiplicity
bound ``ord_C(D) ≤ S(C) + ε``; the entry records how large ``ε`` may be.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction as Fr
from typing import Optional

from .delta import DEFAULT_EPSILON, s_invariant
from .exact import Poly
from .family import FamilyInstance, build_sn
from .surface import DivisorClass

_OPS = {"<": operator.lt, "<=": operator.le, "==": operator.eq}


@dataclass(frozen=True)
class LedgerEntry:
    id: str
    group: str
    description: str
    lhs: Fr
    rhs: Fr
    relation: str = "<"
    lhs_eps: Fr = Fr(0)
    rhs_eps: Fr = Fr(0)
    note: str = ""

    @property
    def strict(self) -> bool:
        return self.relation == "<"

    def sides(self, epsilon: Fr) -> tuple[Fr, Fr]:
        return self.lhs + self.lhs_eps * epsilon, self.rhs + self.rhs_eps * epsilon

    def holds(self, epsilon: Fr) -> bool:
        return _OPS[self.relation](*self.sides(epsilon))

    def epsilon_limit(self) -> Optional[Fr]:
        """Supremum of admissible ``ε ≥ 0``; ``None`` when ``ε`` never hurts."""
        k = self.lhs_eps - self.rhs_eps
        if self.relation == "==" or k <= 0:
            return None if self.holds(Fr(0)) else Fr(0)
        return max(self.rhs - self.lhs, Fr(0)) / k


@dataclass(frozen=True)
class LedgerResult:
    entry: LedgerEntry
    epsilon: Fr
    lhs: Fr
    rhs: Fr
    passed: bool
    epsilon_limit: Optional[Fr]


def evaluate(entry: LedgerEntry, epsilon: Fr) -> LedgerResult:
    lhs, rhs = entry.sides(epsilon)
    return LedgerResult(entry, epsilon, lhs, rhs, entry.holds(epsilon), entry.epsilon_limit())


# ---------------------------------------------------------------------------


def _vanishing_order_entries(n: int, S: dict[str, Fr]) -> list[LedgerEntry]:
    g = "vanishing-order bounds"
    tau_W = Fr(3, 2 * (4 * n + 1))
    w_integral = (Poly.linear(1, Fr(-2 * (4 * n + 1), 3)) ** 2).integrate(0, tau_W)
    b_max = Fr(3 * n + 2, 2 * (2 * n + 1))
    bi_max = Fr(8 * n * n + 6 * n + 3, 8 * n * (2 * n + 1))
    out = [
        LedgerEntry("ab.W-integral", g, "S(W) equals ∫(1 - 2(4n+1)t/3)^2 dt over [0, 3/(2(4n+1))]",
                    S["W"], w_integral, "==", note="volume of D - tW is (1 - 2(4n+1)t/3)^2 · D^2"),
        LedgerEntry("ab.a", g, "a ≤ S(W) + ε < 1/(8n)", S["W"], Fr(1, 8 * n), lhs_eps=Fr(1),
                    note="a = multiplicity of W in D"),
        LedgerEntry("ab.b", g, "b ≤ S(L_xy) + ε < (3n+2)/(2(2n+1))", S["L_xy"], b_max, lhs_eps=Fr(1),
                    note="b = multiplicity of L_xy in D"),
    ]
    for i in (0, 1):
        out.append(LedgerEntry(
            f"ab.b{i}", g, f"b_{i} ≤ S(R_{i}) + ε < (8n^2+6n+3)/(8n(2n+1))",
            S[f"R_{i}"], bi_max, lhs_eps=Fr(1), note=f"b_{i} = multiplicity of R_{i} in D"))
    out.append(LedgerEntry("ab.c", g, "c ≤ S(R) + ε < 3/10", S["R"], Fr(3, 10), lhs_eps=Fr(1),
                           note="c = multiplicity of R in D"))
    return out


def _smooth_point_entries(inst: FamilyInstance) -> list[LedgerEntry]:
    g = "smooth points"
    n, lam = inst.n, inst.lam
    base, enl = inst.base, inst.enlarged
    A = base.polarization
    L = base.lattice.basis("L_xy")
    R0 = base.lattice.basis("R_0")
    a, b, bi, c = Fr(1, 8 * n), Fr(4, 5), Fr(3, 5), Fr(3, 10)
    mp = Fr(3, 4 * n)
    sub = "a ↦ 1/(8n), c ↦ 3/10, mult_p(Ω) ↦ 3/(4n)"
    b_max = Fr(3 * n + 2, 2 * (2 * n + 1))
    bi_max = Fr(8 * n * n + 6 * n + 3, 8 * n * (2 * n + 1))
    DL_formula = Fr(3 + 2 * b * (4 * n - 1), 4 * n * (4 * n + 1))
    DR_i = base.dot(A, R0) - base.dot(R0, R0)
    DR = enl.dot(enl.polarization, enl.lattice.basis("R"))
    return [
        LedgerEntry("sm.b", g, "(3n+2)/(2(2n+1)) ≤ 4/5", b_max, b, "<="),
        LedgerEntry("sm.bi", g, "(8n^2+6n+3)/(8n(2n+1)) ≤ 3/5", bi_max, bi, "<="),
        LedgerEntry("sm.lambda-b", g, "λ·b ≤ 1", lam * b, Fr(1), "<=", note="b ↦ 4/5"),
        LedgerEntry("sm.lambda-bi", g, "λ·b_i ≤ 1", lam * bi, Fr(1), "<=", note="b_i ↦ 3/5"),
        LedgerEntry("sm.L-identity", g, "(D - bL_xy)·L_xy = (3+2b(4n-1))/(4n(4n+1))",
                    base.dot(A - L * b, L), DL_formula, "==", note="b ↦ 4/5; left side from the lattice"),
        LedgerEntry("sm.L", g, "Δ·L_xy ≤ (3+2b(4n-1))/(4n(4n+1)) < 1/λ", DL_formula, 1 / lam,
                    note="b ↦ 4/5"),
        LedgerEntry("sm.Ri-identity", g, "D·R_i - R_i^2 = (4n+5)/(4(4n+1))",
                    DR_i, Fr(4 * n + 5, 4 * (4 * n + 1)), "==", note="left side from the lattice"),
        LedgerEntry("sm.Ri", g, "Δ·R_i ≤ D·R_i - R_i^2 < 1/λ", Fr(4 * n + 5, 4 * (4 * n + 1)), 1 / lam),
        LedgerEntry("sm.lambda-c", g, "λ·c ≤ 1", lam * c, Fr(1), "<=", note="c ↦ 3/10"),
        LedgerEntry("sm.DR-identity", g, "D·R = 3/(4n)", DR, mp, "==", note="left side from the lattice"),
        LedgerEntry("sm.off-W", g, "Ω·R ≤ D·R ≤ 1/λ (p off W)", DR, 1 / lam, "<="),
        LedgerEntry("sm.transversal", g, "R meets W transversally: 1/2 + λ·3/(4n) < 1",
                    Fr(1, 2) + lam * mp, Fr(1)),
        LedgerEntry("sm.d", g, "d = λ(a+c) + λ·mult_p(Ω) - 1/2 ≤ 1",
                    lam * (a + c) + lam * mp - Fr(1, 2), Fr(1), "<=", note=sub),
        LedgerEntry("sm.lambda-mult", g, "λ·mult_p(Ω) ≤ 1", lam * mp, Fr(1), "<=", note=sub),
        LedgerEntry("sm.e", g, "e ≤ 2λ(a + c + mult_p(Ω)) - 1 ≤ 1",
                    2 * lam * (a + c + mp) - 1, Fr(1), "<=", note=sub + ", mult_q ↦ mult_p"),
        LedgerEntry("sm.F-Omega", g, "λ·Ω̄·F ≤ 3λ/(4n) < 1", 3 * lam / (4 * n), Fr(1), note=sub),
        LedgerEntry("sm.F-W", g, "(1/2 + λa) + 3λ/(4n) < 1",
                    Fr(1, 2) + lam * a + 3 * lam / (4 * n), Fr(1), note=sub),
        LedgerEntry("sm.F-R", g, "λc + 3λ/(4n) < 1", lam * c + 3 * lam / (4 * n), Fr(1), note=sub),
        LedgerEntry("sm.F-E", g, "d + λ·Ω̄·F = λ(a+c) + 2λ·mult_p(Ω) - 1/2 < 1",
                    lam * (a + c) + 2 * lam * mp - Fr(1, 2), Fr(1), note=sub),
    ]


def _ow_entries(inst: FamilyInstance, S_F: Fr) -> list[LedgerEntry]:
    g = "point O_w"
    n, lam = inst.n, inst.lam
    m = 4 * n + 1
    bl = inst.blowup
    lat = bl.lattice
    F = lat.basis("F")
    bi_max = Fr(8 * n * n + 6 * n + 3, 8 * n * (2 * n + 1))
    b_max = Fr(3 * n + 2, 2 * (2 * n + 1))

    def lam_hat(b, bi, bj, mu) -> DivisorClass:
        # proper transform of Λ = D - bL - b_iR_i - b_jR_j, using φ*C = Ĉ + (mult/(4n+1))F
        return (bl.polarization
                - (lat.basis("L_hat") + F * Fr(1, m)) * b
                - (lat.basis("R_hat_0") + F * Fr(n, m)) * bi
                - (lat.basis("R_hat_1") + F * Fr(n, m)) * bj
                - F * (Fr(mu) / m))

    R0 = lat.basis("R_hat_0")
    const = bl.dot(lam_hat(0, 0, 0, 0), R0)
    coeff = {
        "b": bl.dot(lam_hat(1, 0, 0, 0), R0) - const,
        "b_i": bl.dot(lam_hat(0, 1, 0, 0), R0) - const,
        "b_j": bl.dot(lam_hat(0, 0, 1, 0), R0) - const,
        "mu": bl.dot(lam_hat(0, 0, 0, 1), R0) - const,
    }
    expected = {
        "b": Fr(-1, m), "b_i": Fr(2 * n + 1, 2 * m), "b_j": Fr(-n, m), "mu": Fr(-1, m),
    }
    out = [
        LedgerEntry("ow.LambdaF-identity", g, "Λ̂·F = μ/n (coefficient -F^2/(4n+1) = 1/n)",
                    -bl.dot(F, F) / m, Fr(1, n), "=="),
        LedgerEntry("ow.LambdaR-const", g, "Λ̂·R̂_i constant term = 3/(4(4n+1))",
                    const, Fr(3, 4 * m), "==", note="from the blow-up lattice"),
    ]
    for k in ("b", "b_i", "b_j", "mu"):
        out.append(LedgerEntry(f"ow.LambdaR-{k}", g, f"Λ̂·R̂_i coefficient of {k}",
                               coeff[k], expected[k], "==", note="from the blow-up lattice"))
    bj_low = (1 / lam - Fr(3, 4 * n)) * Fr(2 * n, 2 * n + 1)
    out += [
        LedgerEntry("ow.theta", g, "3n/(4n+1) + λθ < 1 with θ < S(F) + ε",
                    Fr(3 * n, m) + lam * S_F, Fr(1), lhs_eps=lam, note="θ ↦ S(F) + ε"),
        LedgerEntry("ow.generic", g, "μ ≤ 3/4 + b_i/2 < n/λ (q off the transforms)",
                    Fr(3, 4) + bi_max / 2, n / lam, note="b_i ↦ (8n^2+6n+3)/(8n(2n+1))"),
        LedgerEntry("ow.bj-identity", g, "(1/λ - 3/(4n))·2n/(2n+1) = (80n^2-44n-15)/(10(2n+1)(4n+1))",
                    bj_low, Fr(80 * n * n - 44 * n - 15, 10 * (2 * n + 1) * m), "=="),
        LedgerEntry("ow.bj-sum-identity", g, "1/λ + (80n^2-44n-15)/(10(2n+1)(4n+1)) = (40n-7)/(20n+10)",
                    1 / lam + bj_low, Fr(40 * n - 7, 20 * n + 10), "=="),
        LedgerEntry("ow.Ri-case", g, "(4n+3)/(4n) + ε' ≤ (40n-7)/(20n+10) (q = F ∩ R̂_i)",
                    Fr(4 * n + 3, 4 * n), Fr(40 * n - 7, 20 * n + 10), "<=", lhs_eps=Fr(m, n),
                    note="ε' = ε(4n+1)/n: θ bound multiplied by (4n+1)/n"),
        LedgerEntry("ow.L-identity", g, "b/(4n+1) + n(4(b+μ)-3)/(4n+1) + μ/(4n+1) = (b+μ) - 3n/(4n+1)",
                    (b_max + n * (4 * (b_max + Fr(3, 4)) - 3) + Fr(3, 4)) / m,
                    b_max + Fr(3, 4) - Fr(3 * n, m), "==", note="checked at b ↦ (3n+2)/(2(2n+1)), μ ↦ 3/4"),
        LedgerEntry("ow.L-case", g, "b + μ ≤ (16n+3)/(16n+4) + ε ≤ 1/λ (q = F ∩ L̂_xy)",
                    Fr(16 * n + 3, 16 * n + 4), 1 / lam, "<=", lhs_eps=Fr(1)),
    ]
    return out


def ledger_inputs(inst: FamilyInstance) -> dict[str, Fr]:
    b = inst.base
    return {
        "W": s_invariant(b, "W"),
        "L_xy": s_invariant(b, "L_xy"),
        "R_0": s_invariant(b, "R_0"),
        "R_1": s_invariant(b, "R_1"),
        "R": s_invariant(inst.enlarged, "R"),
        "F": s_invariant(inst.blowup, "F"),
    }


def ledger_entries(inst: FamilyInstance) -> list[LedgerEntry]:
    S = ledger_inputs(inst)
    return (_vanishing_order_entries(inst.n, S)
            + _smooth_point_entries(inst)
            + _ow_entries(inst, S["F"]))


def inequality_ledger(n: int, epsilon: Fr = DEFAULT_EPSILON) -> list[LedgerResult]:
    """Evaluate every ledger entry for ``S_n`` at slack ``epsilon``."""
    inst = build_sn(n)
    return [evaluate(e, epsilon) for e in ledger_entries(inst)]
