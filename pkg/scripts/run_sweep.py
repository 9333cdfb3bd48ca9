#!/usr/bin/env python3
"""Run a randomized sweep family and print one line per report plus a tally.

    python scripts/run_sweep.py mit --count 100 --seed 7 --out reports.jsonl
"""

import argparse
import collections
import sys

from perfcx.cli import SWEEP_FAMILIES, sweep_reports
from perfcx.textfmt import parse_ring
from perfcx.theorems import DEFAULT_SEED, SENSATION


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("family", choices=SWEEP_FAMILIES)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--ring", default=None)
    p.add_argument("--out", help="write JSON lines here (wallTimeMs kept)")
    args = p.parse_args(argv)

    ring = parse_ring(args.ring) if args.ring else None
    reports = sweep_reports(args.family, args.count, args.seed, ring)
    tally = collections.Counter(r.status for r in reports)
    for i, r in enumerate(reports):
        print(f"{i:4d}  {r.status:13s} {r.wallTimeMs:6d} ms  {r.instance}")
    print("tally:", dict(sorted(tally.items())))
    if args.out:
        with open(args.out, "w") as fh:
            for r in reports:
                fh.write(r.to_json() + "\n")
    return 4 if tally[SENSATION] else 0


if __name__ == "__main__":
    sys.exit(main())
