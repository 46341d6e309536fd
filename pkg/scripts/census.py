#!/usr/bin/env python3
"""Census of max-unimodal cyclic patterns by period: how many there are,
how many are over-twists, and whether those are exactly the gammas."""
import argparse
from math import gcd
import time

from overrot.patterns import enumerate_unimodal_patterns, gamma, is_overtwist


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-period", type=int, default=9)
    ap.add_argument("--phi", choices=("indicator", "crossing"), default="indicator")
    args = ap.parse_args()

    print("n,patterns,overtwists,equals_gammas,seconds")
    for n in range(2, args.max_period + 1):
        t = time.perf_counter()
        pats = enumerate_unimodal_patterns(n)
        ot = {P.images for P in pats if is_overtwist(P, args.phi)}
        want = {gamma(p, n).images for p in range(1, n // 2 + 1) if gcd(p, n) == 1}
        print(f"{n},{len(pats)},{len(ot)},{str(ot == want).lower()},{time.perf_counter() - t:.3f}")


if __name__ == "__main__":
    main()
