"""n points in P^3 in general position and all lines through pairs of them.

Write a nef class on the final blowup as
``zeta = pi2^*(pi1^*(deg*H) - sum b_l E_l) - sum a_ij F_ij``.  Asking
zeta.c2 = 0 and zeta.c1^2 = 0 gives two linear equations in deg, the b_l
and the sum of the a_ij; together with sign constraints and inequalities from
effective curves (lines, twisted cubics) they force deg = 0.  The decision is
made by Fourier-Motzkin elimination.

Variables: ``deg``, ``b1..bn`` and ``S_alpha`` (the sum of the a_ij), or
``a_i_j`` per pair when ``raw_alpha`` is set.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .chow_core import (
    CurveCenterSpec,
    ThreefoldModel,
    blow_up_curve,
    blow_up_point,
    intersect,
    p3_model,
    pullback,
    strict_transform,
)
from .linear_feasibility import (
    ConstraintSystem,
    LinExpr,
    eq,
    forces_zero,
    ge,
)
from .trace import DeductionTrace

# xi.c2(X1) = C2_P3 * deg because c2(X1) = pi1^*(6L)
C2_P3 = 6
DEG = "deg"
S_ALPHA = "S_alpha"


def beta(l: int) -> str:
    return f"b{l}"


def alpha_var(i: int, j: int) -> str:
    return f"a_{i}_{j}"


def _v(name: str) -> LinExpr:
    return LinExpr.var(name)


def _sum_beta(n: int) -> LinExpr:
    return LinExpr.of({beta(l): 1 for l in range(1, n + 1)})


def case_of(n: int) -> str:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n >= 10:
        return "1"
    if n >= 6:
        return "2"
    if n >= 4:
        return "3"
    if n >= 2:
        return "4"
    return "degenerate"


def build_constraints(n: int, raw_alpha: bool = False, with_sum_bound: bool = True) -> ConstraintSystem:
    """E1 (c2 condition), E2 (c1^2 condition), signs and the derived bound on sum b."""
    if n < 2:
        raise ValueError("build_constraints needs n >= 2")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    d, sb = _v(DEG), _sum_beta(n)
    if raw_alpha:
        s_alpha = LinExpr.of({alpha_var(i, j): 1 for i, j in pairs})
    else:
        s_alpha = _v(S_ALPHA)
    cons = [
        # (6 + n(n-1)/2) deg = (n-1) sum b
        eq(d * (C2_P3 + comb(n, 2)), sb * (n - 1)),
        # 22 deg = 4 sum b + 2 sum a
        eq(d * 22, sb * 4 + s_alpha * 2),
        ge(d),
    ]
    cons += [ge(_v(beta(l))) for l in range(1, n + 1)]
    if raw_alpha:
        cons += [ge(_v(alpha_var(i, j))) for i, j in pairs]
    else:
        cons.append(ge(s_alpha))
    if with_sum_bound:
        cons.append(ge(d * Fraction(11, 2), sb))
    return ConstraintSystem.of(cons)


def case_constraints(n: int, raw: bool = False) -> ConstraintSystem:
    """Bounds on sum b coming from effective curves through the points.

    ``raw`` emits, for 6 <= n <= 9, one constraint per 6-subset (a twisted
    cubic through six points gives 3 deg - b_{i1} - ... - b_{i6} >= 0)
    instead of their average.
    """
    case = case_of(n)
    d, sb = _v(DEG), _sum_beta(n)
    if case == "1":
        return ConstraintSystem()
    if case == "2":
        if raw:
            return ConstraintSystem.of(
                ge(d * 3, LinExpr.of({beta(i): 1 for i in six}))
                for six in itertools.combinations(range(1, n + 1), 6)
            )
        return ConstraintSystem.of([ge(d * Fraction(n, 2), sb)])
    if case == "3":
        return ConstraintSystem.of([ge(d * Fraction(n, 3), sb)])
    return ConstraintSystem.of([ge(d * n, sb)])


@dataclass
class Theorem3Decision:
    n: int
    forced: bool
    case: str
    system: ConstraintSystem
    trace: DeductionTrace


def decide_deg_zero(n: int, raw_constraints: bool = False) -> Theorem3Decision:
    if n < 1:
        raise ValueError("n must be at least 1")
    case = case_of(n)
    tr = DeductionTrace(f"{n} point(s), all lines through pairs: is deg forced to 0?")
    tr.notes.append(f"xi.c2(X1) = {C2_P3}*deg since c2(X1) = pi1^*c2(P3) = {C2_P3}*L")
    if n == 1:
        d = _v(DEG)
        system = ConstraintSystem.of([eq(d * C2_P3), ge(d), ge(_v(beta(1)))])
        tr.add("zeta.c2(X) with no lines", f"{C2_P3}*deg", "must vanish")
    else:
        system = build_constraints(n) + case_constraints(n, raw=raw_constraints)
        ratio = Fraction(C2_P3 + comb(n, 2), n - 1)
        tr.add("sum b / deg from E1", ratio)
        tr.add("bound from c1^2 condition", Fraction(11, 2), "sum b <= 11/2 deg")
        bound = {"1": None, "2": Fraction(n, 2), "3": Fraction(n, 3), "4": Fraction(n)}[case]
        if bound is not None:
            tr.add(f"case {case} bound", bound, "sum b <= bound*deg")
    forced = forces_zero(system, DEG)
    tr.add("case", case)
    tr.add("deg forced to 0", forced)
    tr.flags["forced"] = forced
    return Theorem3Decision(n, forced, case, system, tr)


# --------------------------------------------------------------------------
# the actual blowup model, for cross-checking the symbolic identities


@dataclass
class LineConfiguration:
    n: int
    x1: ThreefoldModel
    x2: ThreefoldModel
    lines: dict  # (i, j) -> CurveClass on X1
    exceptional: dict  # (i, j) -> DivisorClass on X2


def line_configuration(n: int, blow_up_lines: bool = True) -> LineConfiguration:
    """Blow up n points of P^3, then the strict transforms of all C(n,2) lines.

    Each strict transform is pi1^*L - l_i - l_j with c1-degree 0 and genus 0,
    so gamma = -2.  Lines through distinct pairs are disjoint on X1.
    """
    x1 = p3_model()
    for _ in range(n):
        x1 = blow_up_point(x1)
    L = pullback(x1, p3_model().curve("L")) if n else p3_model().curve("L")
    lines = {}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        lines[(i, j)] = L - x1.curve(f"l{i}") - x1.curve(f"l{j}")
    m = x1
    exc = {}
    if blow_up_lines:
        for key, D in lines.items():
            cls = D if m is x1 else pullback(m, D)
            m = blow_up_curve(m, CurveCenterSpec(cls, genus=0, decomposable=True))
            exc[key] = m.divisor(m.divisor_basis[-1])
        exc = {k: pullback(m, v) if v.basis != m.divisor_basis else v for k, v in exc.items()}
    return LineConfiguration(n, x1, m, lines, exc)


def zeta_numbers(
    conf: LineConfiguration,
    deg,
    betas: Sequence,
    alphas: Optional[dict] = None,
) -> tuple[Fraction, Fraction]:
    """(zeta.c2(X), zeta.c1(X)^2) evaluated with the intersection engine."""
    x1, x2 = conf.x1, conf.x2
    xi = x1.divisor(H=deg, **{f"E{l}": -b for l, b in enumerate(betas, 1)})
    zeta = pullback(x2, xi) if x2 is not x1 else xi
    for key, a in (alphas or {}).items():
        zeta = zeta - a * conf.exceptional[key]
    return intersect(x2, zeta, x2.c2), intersect(x2, zeta, x2.c1, x2.c1)


def random_solution(n: int, rng: random.Random) -> tuple[Fraction, list[Fraction], dict]:
    """Random rational (deg, b, a) satisfying E1 and E2 (a_ij may be negative)."""
    betas = [Fraction(rng.randint(0, 20), rng.randint(1, 5)) for _ in range(n)]
    if not any(betas):
        betas[0] = Fraction(1)
    deg = Fraction(n - 1) * sum(betas) / (C2_P3 + comb(n, 2))
    s_alpha = (22 * deg - 4 * sum(betas)) / 2
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    weights = [Fraction(rng.randint(1, 9)) for _ in pairs]
    total = sum(weights)
    alphas = {p: s_alpha * w / total for p, w in zip(pairs, weights)}
    return deg, betas, alphas


def remark2_inputs(n: int) -> dict:
    """Incidence data of the n-point / all-lines configuration computed on X1."""
    conf = line_configuration(n, blow_up_lines=False)
    x1 = conf.x1
    keys = list(conf.lines)
    incidence = [
        [int(intersect(x1, x1.divisor(f"E{l}"), conf.lines[k])) for k in keys]
        for l in range(1, n + 1)
    ]
    c1 = [intersect(x1, x1.c1, conf.lines[k]) for k in keys]
    return {
        "incidence": incidence,
        "degrees": [1] * len(keys),
        "genera": [0] * len(keys),
        "c1_degrees": c1,
        "lam": n - 1,
    }
