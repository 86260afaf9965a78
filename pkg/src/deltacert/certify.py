"""Per-n certification reports and their canonical serializations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .delta import DEFAULT_EPSILON, FlagReport, local_delta_bound, s_invariant
from .exact import fmt, fmt_short
from .family import SINGULAR_FLAGS, build_sn, closed_forms, computed_values
from .ledger import LedgerResult, evaluate, ledger_entries
from .link import SmaleType, classify_smale, smale_label
from .surface import LogDelPezzo
from .zariski import ZariskiError, decompose_family


@dataclass(frozen=True)
class ClosedFormCheck:
    key: str
    closed: Fraction
    computed: Fraction

    @property
    def equal(self) -> bool:
        return self.closed == self.computed


@dataclass(frozen=True)
class CertificationReport:
    n: int
    surface: str
    epsilon: Fraction
    lam: Fraction
    flags: tuple[FlagReport, ...]
    closed_forms: tuple[ClosedFormCheck, ...]
    ledger: tuple[LedgerResult, ...]
    link: SmaleType
    expected_link: str

    def failures(self) -> list[str]:
        out = [f"flag {f.curve}:{f.point} bound {fmt_short(f.delta_bound)} <= lambda"
               for f in self.flags if not f.delta_bound > self.lam]
        out += [f"closed form {c.key}: computed {fmt_short(c.computed)} != {fmt_short(c.closed)}"
                for c in self.closed_forms if not c.equal]
        out += [f"ledger {r.entry.id}: {fmt_short(r.lhs)} {r.entry.relation} {fmt_short(r.rhs)} fails"
                for r in self.ledger if not r.passed]
        if self.link.label != self.expected_link:
            out.append(f"link {self.link.label} != {self.expected_link}")
        return out

    @property
    def certified(self) -> bool:
        return not self.failures()

    @property
    def verdict(self) -> str:
        return "certified" if self.certified else "failed"

    @property
    def first_failure(self) -> Optional[str]:
        f = self.failures()
        return f[0] if f else None

    @property
    def ledger_epsilon_limit(self) -> Optional[Fraction]:
        """Largest slack every ledger entry tolerates (``None``: unbounded)."""
        lims = [r.epsilon_limit for r in self.ledger if r.epsilon_limit is not None]
        return min(lims) if lims else None

    def to_dict(self) -> dict[str, Any]:
        lim = self.ledger_epsilon_limit
        return {
            "n": self.n,
            "surface": self.surface,
            "epsilon": fmt(self.epsilon),
            "lambda": fmt(self.lam),
            "flags": [
                {
                    "curve": f.curve,
                    "point": f.point,
                    "S_curve": fmt(f.S_curve),
                    "S_flag": fmt(f.S_flag),
                    "A_log": fmt(f.A_log),
                    "delta_bound": fmt(f.delta_bound),
                    "exceeds_lambda": f.delta_bound > self.lam,
                }
                for f in self.flags
            ],
            "closed_forms": {
                c.key: {"closed": fmt(c.closed), "computed": fmt(c.computed), "equal": c.equal}
                for c in self.closed_forms
            },
            "ledger": [
                {
                    "id": r.entry.id,
                    "group": r.entry.group,
                    "relation": r.entry.relation,
                    "lhs": fmt(r.lhs),
                    "rhs": fmt(r.rhs),
                    "passed": r.passed,
                    "epsilon_limit": None if r.epsilon_limit is None else fmt(r.epsilon_limit),
                }
                for r in self.ledger
            ],
            "ledger_epsilon_limit": None if lim is None else fmt(lim),
            "link": {
                "b2": self.link.b2,
                "torsion": {str(m): k for m, k in self.link.torsion_rank_m.items()},
                "label": self.link.label,
                "expected": self.expected_link,
            },
            "verdict": self.verdict,
            "first_failure": self.first_failure,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)


def certify_n(n: int, epsilon: Fraction = DEFAULT_EPSILON) -> CertificationReport:
    """Run every check for ``S_n`` and collect the results."""
    inst = build_sn(n)
    b = inst.base
    flags = tuple(local_delta_bound(b, c, b.point(c, p)) for c, p in SINGULAR_FLAGS)
    closed, computed = closed_forms(n), computed_values(inst)
    checks = tuple(ClosedFormCheck(k, closed[k], computed[k]) for k in closed)
    ledger = tuple(evaluate(e, epsilon) for e in ledger_entries(inst))
    return CertificationReport(
        n=n,
        surface=b.name,
        epsilon=epsilon,
        lam=inst.lam,
        flags=flags,
        closed_forms=checks,
        ledger=ledger,
        link=classify_smale(n),
        expected_link=smale_label(2, {2: n}),
    )


def markdown_summary(reports: list[CertificationReport]) -> str:
    lines = [
        "| n | verdict | min δ-bound | λ | ledger failures | ε limit | link |",
        "|---|---|---|---|---|---|---|",
    ]
    for r in reports:
        lim = r.ledger_epsilon_limit
        lines.append(
            f"| {r.n} | {r.verdict} | {fmt_short(min(f.delta_bound for f in r.flags))} | "
            f"{fmt_short(r.lam)} | {sum(not x.passed for x in r.ledger)} | "
            f"{'-' if lim is None else fmt_short(lim)} | {r.link.label} |"
        )
    ok = sum(r.certified for r in reports)
    lines += ["", f"{ok}/{len(reports)} certified."]
    failed = [r for r in reports if not r.certified]
    if failed:
        lines += ["", "First failures:", ""]
        lines += [f"- n = {r.n}: {r.first_failure}" for r in failed]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# arbitrary surfaces


def zariski_table(surface: LogDelPezzo, C: str) -> dict[str, Any]:
    fam = decompose_family(surface, C)
    names = surface.lattice.names
    return {
        "curve": C,
        "tau": fmt(fam.tau),
        "breakpoints": [fmt(t) for t in fam.breakpoints],
        "segments": [
            {
                "lo": fmt(s.lo),
                "hi": fmt(s.hi),
                "support": list(s.support),
                "P": {nm: [fmt(c) for c in p.coeffs] for nm, p in zip(names, s.positive) if p.coeffs},
                "N": {nm: [fmt(c) for c in p.coeffs] for nm, p in zip(names, s.negative) if p.coeffs},
            }
            for s in fam.segments
        ],
    }


def surface_report(surface: LogDelPezzo, flags: list[tuple[str, str]]) -> dict[str, Any]:
    """S-invariants and Zariski tables of every tracked curve plus requested flags."""
    S: dict[str, Any] = {}
    tables: dict[str, Any] = {}
    for C in surface.lattice.names:
        try:
            S[C] = fmt(s_invariant(surface, C))
            tables[C] = zariski_table(surface, C)
        except ZariskiError as e:
            S[C] = None
            tables[C] = {"curve": C, "error": str(e)}
    out_flags = []
    for C, P in flags:
        f = local_delta_bound(surface, C, surface.point(C, P))
        out_flags.append({
            "curve": C, "point": P, "S_curve": fmt(f.S_curve), "S_flag": fmt(f.S_flag),
            "A_log": fmt(f.A_log), "delta_bound": fmt(f.delta_bound),
        })
    return {
        "surface": surface.name,
        "A^2": fmt(surface.volume_A2),
        "S": S,
        "zariski": tables,
        "flags": out_flags,
    }
