"""Command-line driver.

Exit codes: 0 success, 1 a certification failed, 2 usage, I/O or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial
from pathlib import Path
from typing import Optional, Sequence

from .certify import CertificationReport, certify_n, markdown_summary, surface_report
from .delta import DEFAULT_EPSILON, FlagError
from .exact import fmt, q
from .family import build_base
from .io import SurfaceFormatError, dump_surface, load_surface
from .link import LinkError, classify_smale
from .zariski import ZariskiError

log = logging.getLogger("deltacert")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_N_ENV = "DELTACERT_MAX_N"
DEFAULT_MAX_N = 1000


class UsageError(Exception):
    pass


def parse_range(text: str) -> range:
    """``"A..B"`` (inclusive) or a single ``"A"``."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}: expected A..B or A") from None
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return range(lo, hi + 1)


def parse_epsilon(text: str) -> Fraction:
    try:
        eps = q(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad epsilon {text!r}: expected p/q") from None
    if eps < 0:
        raise UsageError("epsilon must be non-negative")
    return eps


def max_n() -> int:
    raw = os.environ.get(MAX_N_ENV)
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{MAX_N_ENV}={raw!r} is not an integer") from None


def _check_family_range(ns: range) -> None:
    cap = max_n()
    if ns.start < 2:
        raise UsageError(f"n = {ns.start} outside the family: n >= 2 required")
    if ns.stop - 1 > cap:
        raise UsageError(f"n = {ns.stop - 1} exceeds {MAX_N_ENV} = {cap}")


# ---------------------------------------------------------------------------


def run_certify(ns: range, epsilon: Fraction, jobs: int = 1) -> list[CertificationReport]:
    work = partial(certify_n, epsilon=epsilon)
    if jobs <= 1:
        out = []
        for n in ns:
            out.append(work(n))
            log.info("n = %d done", n)
        return out
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        out = list(ex.map(work, ns, chunksize=max(1, len(ns) // (4 * jobs))))
    log.info("%d values of n done on %d workers", len(out), jobs)
    return out


def jsonl(reports: Sequence[CertificationReport]) -> str:
    return "".join(r.to_json() + "\n" for r in reports)


def cmd_certify(args) -> int:
    ns = parse_range(args.n)
    _check_family_range(ns)
    eps = parse_epsilon(args.epsilon)
    reports = run_certify(ns, eps, args.jobs)
    if args.out:
        out = Path(args.out)
        out.write_text(jsonl(reports), encoding="utf-8")
        out.with_suffix(".md").write_text(markdown_summary(reports), encoding="utf-8")
        log.info("wrote %s and %s", out, out.with_suffix(".md"))
    else:
        sys.stdout.write(jsonl(reports) if args.format == "json" else markdown_summary(reports))
    bad = [r for r in reports if not r.certified]
    if bad:
        log.warning("%d of %d values of n failed; first n = %d: %s",
                    len(bad), len(reports), bad[0].n, bad[0].first_failure)
    return EXIT_FAIL if bad else EXIT_OK


def _parse_flag(text: str) -> tuple[str, str]:
    curve, sep, point = text.partition(":")
    if not sep or not curve or not point:
        raise UsageError(f"bad flag {text!r}: expected CURVE:POINT")
    return curve, point


def cmd_surface(args) -> int:
    if (args.file is None) == (args.sn is None):
        raise UsageError("give exactly one of FILE or --sn N")
    surface = load_surface(args.file) if args.file else build_base(args.sn)
    if args.export:
        dump_surface(surface, args.export)
        log.info("exported %s to %s", surface.name, args.export)
    flags = [_parse_flag(f) for f in args.flag]
    try:
        rep = surface_report(surface, flags)
    except KeyError as e:
        raise UsageError(str(e).strip("'\"")) from None
    if args.format == "json":
        sys.stdout.write(json.dumps(rep, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(_surface_md(rep))
    return EXIT_OK


def _short(s: Optional[str]) -> str:
    if s is None:
        return "-"
    return s[:-2] if s.endswith("/1") else s


def _surface_md(rep: dict) -> str:
    lines = [f"# {rep['surface']}", "", f"A^2 = {_short(rep['A^2'])}", "", "| curve | S | tau | breakpoints |",
             "|---|---|---|---|"]
    for C, S in rep["S"].items():
        t = rep["zariski"][C]
        if "error" in t:
            lines.append(f"| {C} | - | - | {t['error']} |")
        else:
            bps = ", ".join(_short(b) for b in t["breakpoints"])
            lines.append(f"| {C} | {_short(S)} | {_short(t['tau'])} | {bps} |")
    if rep["flags"]:
        lines += ["", "| flag | S(C) | S(W^C;p) | A | delta bound |", "|---|---|---|---|---|"]
        for f in rep["flags"]:
            lines.append(f"| {f['curve']}:{f['point']} | {_short(f['S_curve'])} | {_short(f['S_flag'])} | "
                         f"{_short(f['A_log'])} | {_short(f['delta_bound'])} |")
    return "\n".join(lines) + "\n"


def cmd_link(args) -> int:
    ns = parse_range(args.n)
    if ns.start < 1:
        raise UsageError(f"n = {ns.start}: n must be positive")
    if ns.stop - 1 > max_n():
        raise UsageError(f"n = {ns.stop - 1} exceeds {MAX_N_ENV} = {max_n()}")
    rows = []
    for n in ns:
        st = classify_smale(n, allow_n1=True)
        if n == 1:
            print("note: n = 1 is outside the family (n >= 2); the link 2M∞ # M₂ was "
                  "treated by earlier work (Boyer-Nakamaye). Data shown for reference only.",
                  file=sys.stderr)
        rows.append({"n": n, "b2": st.b2, "torsion": {str(m): k for m, k in st.torsion_rank_m.items()},
                     "label": st.label, "in_family": n >= 2})
    for row in rows:
        if args.format == "json":
            print(json.dumps(row, sort_keys=True, ensure_ascii=False))
        else:
            print(row["label"] if len(rows) == 1 else f"n = {row['n']}: {row['label']}")
    return EXIT_OK


def cmd_report(args) -> int:
    """Summarise a JSONL file written by ``certify --out``."""
    rows = [json.loads(line) for line in Path(args.path).read_text(encoding="utf-8").splitlines() if line]
    if args.format == "json":
        summary = {
            "count": len(rows),
            "certified": sum(r["verdict"] == "certified" for r in rows),
            "failures": {str(r["n"]): r["first_failure"] for r in rows if r["verdict"] != "certified"},
        }
        print(json.dumps(summary, sort_keys=True, ensure_ascii=False))
    else:
        print("| n | verdict | first failure |\n|---|---|---|")
        for r in rows:
            print(f"| {r['n']} | {r['verdict']} | {r['first_failure'] or '-'} |")
    return EXIT_OK if all(r["verdict"] == "certified" for r in rows) else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="deltacert", description="Exact delta-invariant certification for S_n.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("certify", help="certify a range of n")
    c.add_argument("--n", required=True, help="A..B or A")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--epsilon", default=fmt(DEFAULT_EPSILON), help="ledger slack p/q")
    c.add_argument("--out", help="JSONL path; a .md summary is written beside it")
    c.add_argument("--format", choices=("json", "md"), default="json")
    c.set_defaults(func=cmd_certify)

    s = sub.add_parser("surface", help="analyse a surface file or a family member")
    s.add_argument("file", nargs="?")
    s.add_argument("--sn", type=int, help="use the built-in S_n instead of a file")
    s.add_argument("--flag", action="append", default=[], metavar="CURVE:POINT")
    s.add_argument("--export", help="write the surface JSON here")
    s.add_argument("--format", choices=("json", "md"), default="md")
    s.set_defaults(func=cmd_surface)

    k = sub.add_parser("link", help="Smale type of the link")
    k.add_argument("--n", required=True)
    k.add_argument("--format", choices=("json", "md"), default="md")
    k.set_defaults(func=cmd_link)

    r = sub.add_parser("report", help="summarise a certify JSONL file")
    r.add_argument("path")
    r.add_argument("--format", choices=("json", "md"), default="md")
    r.set_defaults(func=cmd_report)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, SurfaceFormatError, LinkError, FlagError, ZariskiError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
