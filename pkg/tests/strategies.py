"""Hypothesis strategies and random builders for blowup models."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from blowchow.chow_core import CurveCenterSpec, blow_up_curve, blow_up_point, p3_model


def random_center(model, rng: random.Random) -> CurveCenterSpec:
    coeffs = {name: rng.randint(-2, 2) for name in model.curve_basis}
    coeffs[model.curve_basis[0]] = rng.randint(1, 3)
    return CurveCenterSpec(model.curve(coeffs), genus=rng.randint(0, 3), decomposable=rng.random() < 0.5)


def random_model(rng: random.Random, depth: int):
    m = p3_model()
    for _ in range(depth):
        m = blow_up_point(m) if rng.random() < 0.5 else blow_up_curve(m, random_center(m, rng))
    return m


def rationals(lo=-6, hi=6, max_den=4):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, max_den))


models = st.builds(random_model, st.randoms(use_true_random=False), st.integers(0, 4))


@st.composite
def divisors(draw, model):
    return model.divisor({n: draw(rationals()) for n in model.divisor_basis})


@st.composite
def curves(draw, model):
    return model.curve({n: draw(rationals()) for n in model.curve_basis})
