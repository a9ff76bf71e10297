"""Decide deg = 0 for n points and all lines through them, n = 1..N.

Usage: python3 scripts/theorem3_sweep.py [--n-max 30] [--raw]
"""

import argparse
import time
from fractions import Fraction
from math import comb

from blowchow.linear_feasibility import forces_zero
from blowchow.theorem3 import DEG, build_constraints, decide_deg_zero


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=30)
    ap.add_argument("--raw", action="store_true", help="per-6-subset constraints for 6 <= n <= 9")
    args = ap.parse_args()

    print(f"{'n':>3}  {'case':>10}  {'sum b/deg':>9}  {'bound only':>9}  {'forced':>6}  {'ms':>7}")
    for n in range(1, args.n_max + 1):
        t0 = time.perf_counter()
        dec = decide_deg_zero(n, raw_constraints=args.raw)
        ms = 1000 * (time.perf_counter() - t0)
        if n >= 2:
            ratio = str(Fraction(6 + comb(n, 2), n - 1))
            only_bound = "yes" if forces_zero(build_constraints(n), DEG) else "no"
        else:
            ratio, only_bound = "-", "-"
        print(f"{n:>3}  {dec.case:>10}  {ratio:>9}  {only_bound:>9}  {str(dec.forced):>6}  {ms:7.1f}")


if __name__ == "__main__":
    main()
