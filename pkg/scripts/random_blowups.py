"""Random blowup sequences from P^3: check c1.c2 = 24 and report Property A data.

Usage: python3 scripts/random_blowups.py [--count 200] [--depth 5] [--seed 0]
"""

import argparse
import random
from collections import Counter

from blowchow.chow_core import CurveCenterSpec, blow_up_curve, blow_up_point, intersect, p3_model
from blowchow.property_a import property_a_report, theorem1_check


def random_center(model, rng):
    coeffs = {name: rng.randint(-2, 2) for name in model.curve_basis}
    coeffs[model.curve_basis[0]] = rng.randint(1, 3)
    return CurveCenterSpec(model.curve(coeffs), genus=rng.randint(0, 3), decomposable=rng.random() < 0.5)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--depth", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    bad = 0
    reasons = Counter()
    for _ in range(args.count):
        m = p3_model()
        for _ in range(rng.randint(0, args.depth)):
            if rng.random() < 0.5:
                reasons[theorem1_check(m, "point").reason.value] += 1
                m = blow_up_point(m)
            else:
                c = random_center(m, rng)
                reasons[theorem1_check(m, c).reason.value] += 1
                m = blow_up_curve(m, c)
        if intersect(m, m.c1, m.c2) != 24:
            bad += 1
            print("c1.c2 != 24 on", m.name)
        zeta = m.divisor({n: rng.randint(-2, 2) for n in m.divisor_basis})
        rep = property_a_report(m, zeta)
        if rep.hypotheses_met and not zeta.is_zero():
            print(f"{m.name}: {zeta} satisfies the numerical hypotheses")
    print(f"{args.count} models, {bad} with c1.c2 != 24")
    for reason, k in sorted(reasons.items()):
        print(f"  blowup step verdicts {reason}: {k}")


if __name__ == "__main__":
    main()
