import random
from fractions import Fraction
from math import comb

import pytest

from blowchow.linear_feasibility import ConstraintSystem, LinExpr, eq, forces_zero, gt, is_feasible
from blowchow.property_a import remark2_check
from blowchow.theorem3 import (
    DEG,
    build_constraints,
    case_constraints,
    case_of,
    decide_deg_zero,
    line_configuration,
    random_solution,
    remark2_inputs,
    zeta_numbers,
)


def _sb(n):
    return LinExpr.of({f"b{l}": 1 for l in range(1, n + 1)})


@pytest.mark.parametrize("n, lhs", [(10, 51), (4, 12), (2, 7)])
def test_first_equation(n, lhs):
    e1 = build_constraints(n).constraints[0]
    assert e1.rel == "="
    # lhs*deg - (n-1)*sum b = 0 up to normalization
    expr = e1.expr
    scale = expr.coeff(DEG) / lhs
    assert all(expr.coeff(f"b{l}") == -(n - 1) * scale for l in range(1, n + 1))


@pytest.mark.parametrize("n, case", [(1, "degenerate"), (2, "4"), (3, "4"), (4, "3"), (5, "3"), (6, "2"), (9, "2"), (10, "1"), (30, "1")])
def test_case_of(n, case):
    assert case_of(n) == case


def test_case_constraints_examples():
    assert len(case_constraints(12).constraints) == 0
    (c,) = case_constraints(8).constraints
    assert c.holds({DEG: 2, **{f"b{l}": Fraction(1) for l in range(1, 9)}})
    assert not c.holds({DEG: 1, **{f"b{l}": Fraction(1) for l in range(1, 9)}})
    assert len(case_constraints(7, raw=True).constraints) == comb(7, 6)


@pytest.mark.parametrize("n", range(1, 31))
def test_deg_forced(n):
    dec = decide_deg_zero(n)
    assert dec.forced and dec.case == case_of(n)
    assert dec.trace.flags["forced"]


@pytest.mark.parametrize("n", range(6, 10))
def test_averaged_bound_is_implied_by_raw(n):
    raw = case_constraints(n, raw=True)
    sys_ = raw + ConstraintSystem.of([gt(_sb(n), LinExpr.var(DEG) * Fraction(n, 2)), eq(LinExpr.var(DEG), 1)])
    assert not is_feasible(sys_)
    assert decide_deg_zero(n, raw_constraints=True).forced


@pytest.mark.parametrize("n", range(10, 16))
def test_c1_squared_equation_redundant_for_many_points(n):
    assert forces_zero(build_constraints(n), DEG)
    no_e2 = ConstraintSystem.of([c for i, c in enumerate(build_constraints(n).constraints) if i != 1])
    assert forces_zero(no_e2, DEG)


def test_case_bounds_needed_below_ten():
    assert not forces_zero(build_constraints(9), DEG)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_model_cross_check(n):
    conf = line_configuration(n)
    rng = random.Random(n)
    for _ in range(3):
        deg, betas, alphas = random_solution(n, rng)
        c2, c1sq = zeta_numbers(conf, deg, betas, alphas)
        assert c2 == 0 and c1sq == 0


@pytest.mark.parametrize("n", range(2, 14))
def test_remark2_agrees_with_sum_bound(n):
    ok, _ = remark2_check(**remark2_inputs(n))
    assert ok == (Fraction(6 + comb(n, 2), n - 1) > Fraction(11, 2))
    assert ok == forces_zero(build_constraints(n), DEG)


def test_build_constraints_rejects_small():
    with pytest.raises(ValueError):
        build_constraints(1)
