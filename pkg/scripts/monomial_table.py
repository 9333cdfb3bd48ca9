#!/usr/bin/env python3
"""Table of membership verdicts for (y1...yd)^n in (y1^(n+1), ..., yd^(n+1)).

Besides the variables themselves, each row also tries a linear change of
coordinates y_i -> y_i + y_{i+1} (still a system of parameters).
"""

import argparse
import time

from perfcx.ring import GF, QQ, Ring
from perfcx.theorems import check_monomial


def sops(ring):
    ys = ring.gens
    yield "variables", ys
    yield "sheared", [y + ys[i + 1] if i + 1 < len(ys) else y for i, y in enumerate(ys)]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--dmax", type=int, default=3)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--primes", default="2,5")
    args = p.parse_args(argv)

    fields = [QQ] + [GF(int(q)) for q in args.primes.split(",") if q]
    print(f"{'field':6s} {'d':>2s} {'n':>2s} {'sop':10s} {'verdict':11s} {'ms':>6s}")
    for fld in fields:
        for d in range(1, args.dmax + 1):
            R = Ring([f"y{i + 1}" for i in range(d)], fld)
            for n in range(1, args.nmax + 1):
                for label, ys in sops(R):
                    t0 = time.perf_counter()
                    r = check_monomial(ys, n)
                    ms = (time.perf_counter() - t0) * 1000
                    w = r.conclusion["witness"] or {}
                    print(f"{str(fld):6s} {d:2d} {n:2d} {label:10s} {w.get('verdict', r.status):11s} {ms:6.1f}")


if __name__ == "__main__":
    main()
