"""Tabulate c2 of complete-intersection threefolds and check positivity.

Usage: python3 scripts/ci_sweep.py [--n-max 8] [--d-max 6]
"""

import argparse
import itertools

from blowchow.ci_chern import CISpec, chern_classes_ci, first_bracket, g_value, verify_c2_positive
from blowchow.rational import fmt


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--d-max", type=int, default=6)
    args = ap.parse_args()

    print(f"{'n':>2}  {'degrees':<16} {'c1':>4} {'c2':>6} {'bracket':>10} {'g':>10}")
    for n in range(4, args.n_max + 1):
        for ds in itertools.combinations_with_replacement(range(1, min(args.d_max, 3) + 1), n - 3):
            spec = CISpec(n, ds)
            c1, c2 = chern_classes_ci(spec)
            print(f"{n:>2}  {','.join(map(str, ds)):<16} {c1:>4} {c2:>6} "
                  f"{fmt(first_bracket(spec)):>10} {fmt(g_value(n, sum(ds))):>10}")
    res = verify_c2_positive(args.n_max, args.d_max)
    print(f"\nchecked {res.checked} tuples, min c2 = {res.min_c2}, ok = {res.ok}")
    if not res.ok:
        print("counterexample:", res.counterexample)


if __name__ == "__main__":
    main()
