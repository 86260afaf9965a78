"""Write the three numerical models of S_n as surface JSON files.

    python3 scripts/export_surfaces.py --n 2 --dir data/
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from deltacert.family import build_sn
from deltacert.io import dump_surface


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--dir", default=".")
    args = ap.parse_args(argv)
    out = Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    inst = build_sn(args.n)
    for tag, s in (("base", inst.base), ("enlarged", inst.enlarged), ("blowup", inst.blowup)):
        path = out / f"s{args.n}_{tag}.json"
        dump_surface(s, path)
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
