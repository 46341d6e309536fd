#!/usr/bin/env python3
"""Left endpoint of the over-rotation interval along the logistic family
nu x (1 - x).  Writes CSV; with --plot also saves a step plot."""
import argparse
from fractions import Fraction
import sys

from overrot.families import FamilySpec, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=Fraction, default=Fraction(7, 2))
    ap.add_argument("--hi", type=Fraction, default=Fraction(4))
    ap.add_argument("--steps", type=int, default=50)
    ap.add_argument("--tol", type=Fraction, default=Fraction(1, 1000))
    ap.add_argument("--out", default="-")
    ap.add_argument("--plot")
    args = ap.parse_args()

    rep = sweep(FamilySpec("quadratic", args.lo, args.hi, args.steps), args.tol)
    body = rep.csv()
    if args.out == "-":
        sys.stdout.write(body)
    else:
        with open(args.out, "w") as fh:
            fh.write(body)
    print(f"# monotone={rep.monotone} violations={len(rep.violations)} hypotheses={rep.hypotheses}", file=sys.stderr)
    if rep.note:
        print(f"# {rep.note}", file=sys.stderr)

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        rows = [r for r in rep.rows if r.interval is not None and not r.interval.trivial]
        xs = [float(r.nu) for r in rows]
        plt.step(xs, [float(r.lo) for r in rows], where="mid", label="rho lo")
        plt.step(xs, [float(r.hi) for r in rows], where="mid", label="rho hi", alpha=0.5)
        plt.xlabel("nu")
        plt.ylabel("left endpoint")
        plt.legend()
        plt.savefig(args.plot, dpi=120)


if __name__ == "__main__":
    main()
