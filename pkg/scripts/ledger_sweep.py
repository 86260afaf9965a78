"""Evaluate the inequality ledger over a range of n and report failing entries.

    python3 scripts/ledger_sweep.py --n 2..1000 --epsilon 1/1000000
"""

from __future__ import annotations

import argparse
import sys
import time
from collections import defaultdict

from deltacert.cli import parse_epsilon, parse_range
from deltacert.exact import fmt_short
from deltacert.family import build_sn
from deltacert.ledger import evaluate, ledger_entries


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="2..1000")
    ap.add_argument("--epsilon", default="1/1000000")
    args = ap.parse_args(argv)
    ns, eps = parse_range(args.n), parse_epsilon(args.epsilon)

    start = time.perf_counter()
    failures: dict[str, list[int]] = defaultdict(list)
    total = 0
    for n in ns:
        for e in ledger_entries(build_sn(n)):
            total += 1
            if not evaluate(e, eps).passed:
                failures[e.id].append(n)
    elapsed = time.perf_counter() - start

    print(f"{total} entry evaluations over n = {ns.start}..{ns.stop - 1} at eps = {fmt_short(eps)} "
          f"in {elapsed:.1f}s")
    if not failures:
        print("all entries pass")
        return 0
    print("| entry | failing n | first failing n |")
    print("|---|---|---|")
    for k in sorted(failures):
        print(f"| {k} | {len(failures[k])} | {failures[k][0]} |")
    return 1


if __name__ == "__main__":
    sys.exit(main())
