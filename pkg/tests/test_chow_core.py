import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blowchow.chow_core import (
    CurveCenterSpec,
    ModelMismatchError,
    blow_up_curve,
    blow_up_point,
    center_gamma,
    intersect,
    mul_divisors,
    p3_model,
    pairing,
    pullback,
    pushforward,
    strict_transform,
    triple,
    zero_section_class,
)

from strategies import curves, divisors, models, random_center, rationals


@pytest.fixture
def p3():
    return p3_model()


@pytest.fixture
def line_blowup(p3):
    return blow_up_curve(p3, CurveCenterSpec(p3.curve("L"), genus=0, decomposable=True, tau=-2))


@pytest.fixture
def point_blowup(p3):
    return blow_up_point(p3)


# --- P^3 -------------------------------------------------------------------


def test_p3_data(p3):
    assert triple(p3, "H", "H", "H") == 1
    assert str(mul_divisors(p3, p3.divisor("H"), p3.divisor("H"))) == "L"
    assert intersect(p3, p3.c1, p3.c2) == 24
    assert p3.c2["L"] == 6


def test_p3_chern_from_total_class(p3):
    # (1+h)^4 = 1 + 4h + 6h^2 + 4h^3
    assert p3.c1["H"] == 4
    assert p3.c2["L"] == 6


# --- point blowup ----------------------------------------------------------


def test_point_blowup_rules(point_blowup):
    X = point_blowup
    assert X.divisor_basis == ("H", "E1") and X.curve_basis == ("L", "l1")
    assert triple(X, "E1", "E1", "E1") == 1
    assert triple(X, "H", "E1", "E1") == 0
    assert triple(X, "H", "H", "E1") == 0
    assert pairing(X, X.divisor("E1"), X.curve("l1")) == -1
    assert str(mul_divisors(X, X.divisor("E1"), X.divisor("E1"))) == "-l1"
    assert intersect(X, X.c1, X.c1, X.c1) == 56
    assert str(X.c1) == "4*H - 2*E1"
    assert str(X.c2) == "6*L"


def test_point_blowup_c1_cubed_by_hand():
    # (4H - 2E)^3 with H^3 = 1, E^3 = 1 and mixed terms 0: 64 - 8 per point
    m = p3_model()
    for k in range(1, 6):
        m = blow_up_point(m)
        assert intersect(m, m.c1, m.c1, m.c1) == 64 - 8 * k


# --- curve blowup ----------------------------------------------------------


def test_line_blowup_rules(line_blowup, p3):
    X = line_blowup
    F = X.divisor("E1")
    rec = X.provenance[-1]
    assert rec.gamma == 2
    assert intersect(X, F, F, F) == -2
    assert pushforward(X, mul_divisors(X, F, F)) == -p3.curve("L")
    assert pushforward(X, F).is_zero()
    assert pushforward(X, X.curve("f1")).is_zero()
    assert intersect(X, X.c1, X.c1, X.c1) == 54
    assert pairing(X, F, X.curve("f1")) == -1
    assert intersect(X, X.divisor("H"), F, F) == -1


def test_c1_squared_on_line_blowup(line_blowup):
    X = line_blowup
    # (4H - F)^2 = 16 L - 8 (H.C) f + F^2 = 16L - 8f - L + 2f
    assert str(mul_divisors(X, X.c1, X.c1)) == "15*L - 6*f1"


def test_c2_of_curve_blowup(line_blowup):
    # pi^*c2 + pi^*C - (c1.C) f = 6L + L - 4f
    assert str(line_blowup.c2) == "7*L - 4*f1"


def test_curve_blowup_general_rules():
    rng = random.Random(5)
    for _ in range(30):
        m = blow_up_point(p3_model()) if rng.random() < 0.5 else p3_model()
        center = random_center(m, rng)
        X = blow_up_curve(m, center)
        g = center_gamma(m, center)
        F = X.divisor(X.divisor_basis[-1])
        assert intersect(X, F, F, F) == -g
        for name in m.divisor_basis:
            a = m.divisor(name)
            assert intersect(X, pullback(X, a), F, F) == -pairing(m, a, center.curve)
        assert pushforward(X, mul_divisors(X, F, F)) == -center.curve


def test_center_gamma_values(p3):
    assert center_gamma(p3, CurveCenterSpec(p3.curve("L"))) == 2
    assert center_gamma(p3, CurveCenterSpec(p3.curve(L=2))) == 6
    X = blow_up_curve(p3, CurveCenterSpec(p3.curve("L"), decomposable=True))
    fiber = CurveCenterSpec(X.curve("f1"))
    assert pairing(X, X.c1, fiber.curve) == 1
    assert center_gamma(X, fiber) == -1


def test_center_gamma_rejects_nonintegral(p3):
    with pytest.raises(ValueError):
        center_gamma(p3, CurveCenterSpec(p3.curve(L=Fraction(1, 3))))


def test_bad_tau_rejected(p3):
    with pytest.raises(ValueError):
        blow_up_curve(p3, CurveCenterSpec(p3.curve("L"), tau=-1))  # gamma = 2, odd tau
    with pytest.raises(ValueError):
        blow_up_curve(p3, CurveCenterSpec(p3.curve("L"), tau=2))


def test_mul_dimension_mismatch(p3, point_blowup):
    with pytest.raises(ModelMismatchError):
        mul_divisors(point_blowup, p3.divisor("H"), point_blowup.divisor("H"))


def test_intersect_wrong_degree(p3):
    H, L = p3.divisor("H"), p3.curve("L")
    with pytest.raises(ValueError):
        intersect(p3, H, H)
    with pytest.raises(ValueError):
        intersect(p3, H, L, H)


# --- strict transforms and zero sections ------------------------------------


def test_strict_transform_line_through_two_points(p3):
    X1 = blow_up_point(p3)
    D = strict_transform(X1, p3.curve("L"), 1)
    X2 = blow_up_point(X1)
    D = strict_transform(X2, D, 1)
    assert str(D) == "L - l1 - l2"
    assert pairing(X2, X2.c1, D) == 0


def test_strict_transform_against_curve(p3):
    X = blow_up_curve(p3, CurveCenterSpec(p3.curve("L")))
    D = strict_transform(X, p3.curve("L"), 3)
    assert pairing(X, X.c1, D) == 4 - 3
    assert strict_transform(X, p3.curve("L"), 0) == pullback(X, p3.curve("L"))
    with pytest.raises(ValueError):
        strict_transform(X, p3.curve("L"), -1)


def test_zero_section(line_blowup):
    X = line_blowup
    rec = X.provenance[-1]
    c0 = zero_section_class(X, rec, -2)
    assert str(c0) == "L - 2*f1"
    with pytest.raises(ValueError):
        zero_section_class(X, rec, -1)


@pytest.mark.parametrize("tau", [0, -2, -4, -6])
def test_zero_section_against_ruled_surface(line_blowup, tau):
    # on the ruled surface F|_F = -C0 + (tau+gamma)/2 f, C0^2 = tau, C0.f = 1
    X = line_blowup
    rec = X.provenance[-1]
    g = rec.gamma
    c0 = zero_section_class(X, rec, tau)
    k = Fraction(tau + g, 2)
    assert intersect(X, X.divisor("E1"), c0) == -tau + k
    assert pushforward(X, c0) == rec.center.curve  # section: degree one over C


# --- properties --------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(models)
def test_triple_symmetric(m):
    n = len(m.divisor_basis)
    for i, j, k in itertools.combinations_with_replacement(range(n), 3):
        names = [m.divisor_basis[t] for t in (i, j, k)]
        vals = {triple(m, *p) for p in itertools.permutations(names)}
        assert len(vals) == 1


@settings(max_examples=60, deadline=None)
@given(models)
def test_c1c2_is_24(m):
    assert intersect(m, m.c1, m.c2) == 24


@settings(max_examples=40, deadline=None)
@given(models, st.data())
def test_projection_formula(m, data):
    if m.parent is None:
        return
    parent = m.parent
    a = data.draw(divisors(parent))
    x = data.draw(curves(m))
    assert intersect(m, pullback(m, a), x) == intersect(parent, a, pushforward(m, x))
    b = data.draw(divisors(m))
    c = data.draw(divisors(parent))
    lhs = intersect(m, pullback(m, a), b, pullback(m, c))
    assert pushforward(m, mul_divisors(m, pullback(m, a), pullback(m, c))) == mul_divisors(parent, a, c)
    assert lhs == pairing(m, b, pullback(m, mul_divisors(parent, a, c)))


@settings(max_examples=40, deadline=None)
@given(models, st.data())
def test_pushforward_pullback_identity(m, data):
    if m.parent is None:
        return
    a = data.draw(divisors(m.parent))
    z = data.draw(curves(m.parent))
    assert pushforward(m, pullback(m, a)) == a
    assert pushforward(m, pullback(m, z)) == z


@settings(max_examples=40, deadline=None)
@given(models, st.data())
def test_pullback_preserves_triples(m, data):
    if m.parent is None:
        return
    p = m.parent
    a, b, c = (data.draw(divisors(p)) for _ in range(3))
    assert intersect(m, pullback(m, a), pullback(m, b), pullback(m, c)) == intersect(p, a, b, c)


@settings(max_examples=50, deadline=None)
@given(rationals(), rationals(1, 6))
def test_zeta_square_identity(xi_coef, alpha):
    p3 = p3_model()
    X = blow_up_curve(p3, CurveCenterSpec(p3.curve("L")))
    xi = p3.divisor(H=xi_coef)
    zeta = pullback(X, xi) - alpha * X.divisor("E1")
    zz = mul_divisors(X, zeta, zeta)
    gamma = X.provenance[-1].gamma
    xi_c = pairing(p3, xi, p3.curve("L"))
    assert zz["f1"] == alpha**2 * gamma - 2 * alpha * xi_c
    if zz.is_zero():
        assert xi_c == alpha * gamma / 2
