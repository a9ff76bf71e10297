"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction


def solve_particular(rows, rhs):
    """A particular solution of rows @ x = rhs (free variables set to 0), or None."""
    m = len(rows)
    k = len(rows[0]) if rows else 0
    a = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [v / piv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    if any(all(v == 0 for v in a[i][:k]) and a[i][k] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        x[c] = a[i][k]
    return x


def brute_force_feasible(constraints, nvars):
    """Decide {a.x + c REL 0} by enumerating minimal faces.

    Strict rows are relaxed to a.x + c >= t; we maximise t over the system
    (with t <= 1).  t is constant on every minimal face, and every minimal
    face is the solution set of some subset of at most nvars+1 constraints
    taken as equalities, so checking one point per subset suffices.
    """
    rows = []  # (coeffs over x..., t), const, rel ; meaning expr >= 0 or = 0
    for coeffs, const, rel in constraints:
        if rel == ">":
            rows.append((list(coeffs) + [-1], const, ">="))
        else:
            rows.append((list(coeffs) + [0], const, rel))
    rows.append(([0] * nvars + [-1], 1, ">="))  # 1 - t >= 0
    has_strict = any(rel == ">" for _, _, rel in constraints)
    eq_rows = [r for r in rows if r[2] == "="]
    ineq_rows = [r for r in rows if r[2] != "="]
    dim = nvars + 1
    best = None
    for size in range(0, dim + 1):
        for subset in itertools.combinations(ineq_rows, size):
            active = eq_rows + list(subset)
            if active:
                x = solve_particular([r[0] for r in active], [-Fraction(r[1]) for r in active])
            else:
                x = [Fraction(0)] * dim
            if x is None:
                continue
            ok = all(
                (sum(Fraction(c) * v for c, v in zip(r[0], x)) + r[1]) == 0 if r[2] == "="
                else (sum(Fraction(c) * v for c, v in zip(r[0], x)) + r[1]) >= 0
                for r in rows
            )
            if ok:
                if not has_strict:
                    return True
                t = x[-1]
                best = t if best is None else max(best, t)
    return best is not None and best > 0


def ci_chern_series(n, degrees):
    """(c1, c2) coefficients of (1+h)^(n+1) / prod(1 + d h), truncated."""
    from math import comb

    num = [comb(n + 1, i) for i in range(3)]
    ser = [1, 0, 0]
    for d in degrees:
        inv = [1, -d, d * d]
        ser = [sum(ser[i] * inv[k - i] for i in range(k + 1)) for k in range(3)]
    tot = [sum(num[i] * ser[k - i] for i in range(k + 1)) for k in range(3)]
    return tot[1], tot[2]
