"""Largest admissible slack eps per n, and which ledger entry sets it.

Writes a CSV (n, eps_limit, binding_entry, n^2 * eps_limit) to stdout or --out.
The last column levels off when the binding margin decays like 1/n^2.

    python3 scripts/epsilon_sensitivity.py --n 2..1000 --every 25
"""

from __future__ import annotations

import argparse
import csv
import sys

from deltacert.cli import parse_range
from deltacert.exact import fmt
from deltacert.family import build_sn
from deltacert.ledger import ledger_entries


def binding(n: int):
    best = None
    for e in ledger_entries(build_sn(n)):
        lim = e.epsilon_limit()
        if lim is not None and (best is None or lim < best[0]):
            best = (lim, e.id)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="2..1000")
    ap.add_argument("--every", type=int, default=1, help="sample every k-th n")
    ap.add_argument("--out")
    args = ap.parse_args(argv)

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh)
    w.writerow(["n", "eps_limit", "binding_entry", "n2_times_limit"])
    for n in list(parse_range(args.n))[:: args.every]:
        lim, eid = binding(n)
        w.writerow([n, fmt(lim), eid, f"{float(lim * n * n):.6f}"])
    if args.out:
        fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
