"""Property A evaluation and the blowup-stability checks built on it.

Nefness, movability and disjointness of centers are always caller
assertions; nothing here tries to compute a nef cone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .chow_core import (
    CurveCenterSpec,
    CurveClass,
    DivisorClass,
    ThreefoldModel,
    blow_up_curve,
    blow_up_point,
    check_tau,
    intersect,
    mul_divisors,
    pairing,
    pullback,
    pushforward,
    zero_section_class,
)
from .rational import RationalLike, as_integer, fmt, to_fraction
from .trace import DeductionTrace


# --------------------------------------------------------------------------
# Property A hypotheses


@dataclass(frozen=True)
class PropertyAReport:
    zeta_sq: CurveClass
    zeta_c1_sq: Fraction
    zeta_c2: Fraction

    @property
    def hypotheses_met(self) -> bool:
        return self.zeta_sq.is_zero() and self.zeta_c1_sq >= 0 and self.zeta_c2 <= 0


def property_a_report(model: ThreefoldModel, zeta: DivisorClass) -> PropertyAReport:
    """Exact zeta^2, zeta.c1^2 and zeta.c2 for a (caller-asserted nef) class."""
    return PropertyAReport(
        zeta_sq=mul_divisors(model, zeta, zeta),
        zeta_c1_sq=intersect(model, zeta, model.c1, model.c1),
        zeta_c2=intersect(model, zeta, model.c2),
    )


# --------------------------------------------------------------------------
# stability under one blowup


class Reason(str, enum.Enum):
    POINT_CENTER = "point-center"
    ODD_DEGREE_AND_DECOMPOSABLE = "odd-degree-and-decomposable"
    FAILS_PARITY = "fails-parity"
    DECOMPOSABILITY_UNKNOWN = "decomposability-unknown"


@dataclass(frozen=True)
class Theorem1Verdict:
    applicable: bool
    reason: Reason
    c1_degree: Optional[int] = None
    decomposable_by: Optional[str] = None  # "asserted" | "rational curve"


def theorem1_check(
    model_parent: ThreefoldModel, center: Union[CurveCenterSpec, str, None]
) -> Theorem1Verdict:
    """Does blowing up ``center`` preserve Property A (parent assumed to have it)?

    Curve centers need odd c1.C and a split normal bundle; smooth rational
    curves always have a split normal bundle.
    """
    if center is None or center == "point":
        return Theorem1Verdict(True, Reason.POINT_CENTER)
    deg = as_integer(pairing(model_parent, model_parent.c1, center.curve), "c1.C")
    if deg % 2 == 0:
        return Theorem1Verdict(False, Reason.FAILS_PARITY, deg)
    if center.decomposable:
        return Theorem1Verdict(True, Reason.ODD_DEGREE_AND_DECOMPOSABLE, deg, "asserted")
    if center.genus == 0:
        return Theorem1Verdict(True, Reason.ODD_DEGREE_AND_DECOMPOSABLE, deg, "rational curve")
    return Theorem1Verdict(False, Reason.DECOMPOSABILITY_UNKNOWN, deg)


@dataclass(frozen=True)
class TauRange:
    """Admissible degrees of the normalized bundle: tau <= upper, tau = gamma mod 2."""

    gamma: int
    upper: Optional[int]

    def __contains__(self, tau: int) -> bool:
        if (tau - self.gamma) % 2:
            return False
        return self.upper is None or tau <= self.upper

    def first(self, k: int) -> list[int]:
        if self.upper is None:
            raise ValueError("unbounded range has no largest element")
        return [self.upper - 2 * i for i in range(k)]

    def __str__(self) -> str:
        par = "odd" if self.gamma % 2 else "even"
        if self.upper is None:
            return f"tau {par}"
        return f"tau <= {self.upper}, tau {par}"


def tau_admissible(gamma: int, decomposable: bool = True) -> TauRange:
    if not decomposable:
        return TauRange(gamma, None)
    return TauRange(gamma, -1 if gamma % 2 else 0)


def subcase22_certificate(
    model_after: ThreefoldModel, xi: DivisorClass, alpha: RationalLike, tau: int
) -> DeductionTrace:
    """Evaluate zeta.C0 for zeta = pi^*xi - alpha F over the last (curve) blowup.

    Requires xi.C = alpha*gamma/2, which is what zeta^2 = 0 forces when
    alpha != 0.  The result is alpha*tau/2, negative whenever tau < 0, so
    zeta cannot be nef.
    """
    alpha = to_fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if not model_after.provenance or model_after.provenance[-1].kind != "curve":
        raise ValueError("last blowup of model_after must be along a curve")
    rec = model_after.provenance[-1]
    parent = model_after.parent
    center = rec.center
    gamma = rec.gamma
    check_tau(gamma, tau)

    tr = DeductionTrace(f"zero-section test over {model_after.divisor_basis[rec.exceptional_index]}")
    tr.add("gamma", gamma)
    xi_c = tr.add("xi.C", pairing(parent, xi, center.curve))
    need = alpha * gamma / 2
    if xi_c != need:
        raise ValueError(f"precondition xi.C = alpha*gamma/2 fails: {fmt(xi_c)} != {fmt(need)}")
    F = model_after.exceptional(rec)
    zeta = pullback(model_after, xi) - alpha * F
    tr.add("zeta", zeta)
    zz = mul_divisors(model_after, zeta, zeta)
    tr.add("zeta^2", zz, "zero" if zz.is_zero() else "nonzero")
    c0 = tr.add("C0", zero_section_class(model_after, rec, tau))
    tr.add("C0.f (pushforward of C0 is C)", pushforward(model_after, c0) == center.curve)
    val = intersect(model_after, zeta, c0)
    tr.add("zeta.C0", val, "< 0, contradicts nefness" if val < 0 else ">= 0, no contradiction")
    expected = tr.add("alpha*tau/2", alpha * tau / 2)
    tr.flags["matches"] = val == expected
    tr.flags["contradiction"] = val < 0
    return tr


# --------------------------------------------------------------------------
# point blowups followed by disjoint curve blowups


@dataclass
class BlowupStack:
    """X0 <- X1 (points) <- X2 (disjoint curves D_j given on X1)."""

    x0: ThreefoldModel
    x1: ThreefoldModel
    x2: ThreefoldModel
    centers: tuple[CurveCenterSpec, ...]
    curve_models: tuple[ThreefoldModel, ...] = field(default=())  # model right after each D_j

    @property
    def exceptionals(self) -> list[DivisorClass]:
        recs = self.x2.provenance[self.x1.depth:]
        return [self.x2.exceptional(r) for r in recs]


def build_blowup_stack(
    x0: ThreefoldModel, n_points: int, centers: Sequence[CurveCenterSpec]
) -> BlowupStack:
    """Blow up ``n_points`` points, then each center (given on X1) in turn.

    Centers are assumed pairwise disjoint, so each is carried to later
    models by plain pullback.
    """
    x1 = x0
    for _ in range(n_points):
        x1 = blow_up_point(x1)
    m = x1
    after = []
    for c in centers:
        if c.curve.basis != x1.curve_basis:
            raise ValueError("centers must be curve classes on X1")
        cls = c.curve if m is x1 else pullback(m, c.curve)
        m = blow_up_curve(m, CurveCenterSpec(cls, c.genus, c.decomposable, c.tau))
        after.append(m)
    return BlowupStack(x0, x1, m, tuple(centers), tuple(after))


def stack_from_model(model: ThreefoldModel) -> BlowupStack:
    """Split a model's history into leading point blowups and trailing curve blowups."""
    kinds = [r.kind for r in model.provenance]
    n_pts = 0
    while n_pts < len(kinds) and kinds[n_pts] == "point":
        n_pts += 1
    if "point" in kinds[n_pts:]:
        raise ValueError("point blowups must all precede curve blowups")
    chain = list(reversed(model.ancestors()))
    x0, x1 = chain[0], chain[n_pts]
    centers = []
    for i in range(n_pts, len(kinds)):
        c = model.provenance[i].center
        # chain[i] is the model the i-th center was blown up on
        cls = c.curve if i == n_pts else pushforward(chain[i], c.curve, to=x1)
        centers.append(CurveCenterSpec(cls, c.genus, c.decomposable, c.tau))
    return BlowupStack(x0, x1, model, tuple(centers), tuple(chain[n_pts + 1:]))


HYPOTHESES_NOTE = "hypotheses consumed: zeta^2 = 0, zeta.c1(X2) = 0 (as a curve class), zeta.c2(X2) <= 0"


def theorem2_chain(
    stack: BlowupStack,
    xi: DivisorClass,
    alphas: Sequence[RationalLike],
    part: int = 1,
    x0_c2_positive: Optional[bool] = None,
) -> DeductionTrace:
    """Follow the c2 inequality chain for zeta = pi2^*xi - sum alpha_j F_j.

    Flags in the returned trace:
      applicable        part 2 genus condition holds (always true for part 1)
      hypotheses_met    the three vanishing/sign hypotheses hold for zeta
      consistent        every alpha_j obeys its dichotomy branch
      terms_nonnegative every xi.D_j - alpha_j c1(X1).D_j >= 0
      xi_c2_nonpositive xi.c2(X1) <= 0 is forced
      pushforward_vanishes  (pi1)_*xi must be 0 by c2-positivity on X0
    """
    if part not in (1, 2):
        raise ValueError("part must be 1 or 2")
    x0, x1, x2 = stack.x0, stack.x1, stack.x2
    alphas = [to_fraction(a) for a in alphas]
    if len(alphas) != len(stack.centers):
        raise ValueError(f"{len(stack.centers)} curves but {len(alphas)} alphas")
    if any(a < 0 for a in alphas):
        raise ValueError("alphas must be non-negative")
    if x0_c2_positive is None and x0.name == "P3" and x0.depth == 0:
        x0_c2_positive = True

    tr = DeductionTrace(f"c2 chain, part {part}, {len(stack.centers)} curve(s)")
    tr.notes.append(HYPOTHESES_NOTE)
    tr.notes.append("nefness of zeta is asserted by the caller")

    c1_degs = [as_integer(pairing(x1, x1.c1, c.curve), "c1.D") for c in stack.centers]
    applicable = True
    if part == 2:
        for j, (c, d) in enumerate(zip(stack.centers, c1_degs), 1):
            ok = d <= 2 * c.genus - 2
            tr.add(f"c1(X1).D{j} <= 2g{j}-2", f"{d} <= {2 * c.genus - 2}", "ok" if ok else "violated")
            applicable &= ok
    tr.flags["applicable"] = applicable
    if not applicable:
        return tr

    zeta = pullback(x2, xi) if xi.basis != x2.divisor_basis else xi
    for a, F in zip(alphas, stack.exceptionals):
        zeta = zeta - a * F
    tr.add("zeta", zeta)
    zz = tr.add("zeta^2", mul_divisors(x2, zeta, zeta))
    zc1 = tr.add("zeta.c1(X2)", mul_divisors(x2, zeta, x2.c1))
    zc2 = tr.add("zeta.c2(X2)", intersect(x2, zeta, x2.c2))
    tr.flags["hypotheses_met"] = zz.is_zero() and zc1.is_zero() and zc2 <= 0

    consistent = True
    terms = []
    for j, (c, a, d) in enumerate(zip(stack.centers, alphas, c1_degs), 1):
        xd = tr.add(f"xi.D{j}", pairing(x1, xi, c.curve))
        term = xd - a * d
        if a == 0:
            ok = xd >= 0
            tr.add(f"term{j}", term, "alpha=0: equals zeta.D'_j >= 0" if ok else "alpha=0 but zeta.D'_j < 0")
        elif part == 1:
            ok = xd == a * d == a * (2 * c.genus - 2)
            tr.add(f"term{j}", term, "xi.D = alpha c1.D = alpha(2g-2)" if ok else "inconsistent branch")
        else:
            ok = term == a / 2 * ((2 * c.genus - 2) - d)
            tr.add(f"term{j}", term, "alpha/2 ((2g-2) - c1.D)" if ok else "inconsistent branch")
        consistent &= ok
        terms.append(term)
    tr.flags["consistent"] = consistent

    xc2 = tr.add("xi.c2(X1)", intersect(x1, xi, x1.c2))
    tr.add("identity zeta.c2(X2) = xi.c2(X1) + sum terms", zc2 == xc2 + sum(terms, Fraction(0)))
    nonneg = all(t >= 0 for t in terms)
    tr.flags["terms_nonnegative"] = nonneg
    forced = nonneg and zc2 <= 0
    tr.flags["xi_c2_nonpositive"] = forced
    if forced:
        tr.steps[-1].conclusion = "xi.c2(X1) <= zeta.c2(X2) <= 0"

    u = pushforward(x1, xi, to=x0)
    tr.add("(pi1)_* xi", u)
    uc2 = tr.add("(pi1)_* xi . c2(X0)", intersect(x0, u, x0.c2))
    tr.flags["x0_c2_positive_asserted"] = bool(x0_c2_positive)
    tr.flags["pushforward_vanishes"] = bool(forced and x0_c2_positive)
    if forced and x0_c2_positive:
        tr.add("(pi1)_* xi forced to 0", u.is_zero(), "holds" if u.is_zero() else "zeta cannot be nef")
    return tr


# --------------------------------------------------------------------------
# generalized point+curve inequalities


def remark2_check(
    incidence: Sequence[Sequence[int]],
    degrees: Sequence[int],
    genera: Sequence[int],
    c1_degrees: Sequence[RationalLike],
    lam: RationalLike,
) -> tuple[bool, DeductionTrace]:
    """Check the three sufficient inequalities for points+curves in P^3.

    ``incidence[l][j]`` is E_l.D_j; ``degrees[j]`` the degree of the image of
    D_j in P^3.
    """
    lam = to_fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    m = len(degrees)
    if not (len(genera) == len(c1_degrees) == m):
        raise ValueError("degrees, genera and c1_degrees must have equal length")
    if any(len(row) != m for row in incidence):
        raise ValueError("incidence rows must have one entry per curve")
    tr = DeductionTrace(f"point/curve inequalities, lambda = {fmt(lam)}")
    gamma = tr.add("gamma = sum deg", sum(degrees))
    rows = [sum(r) for r in incidence]
    a = all(s <= lam for s in rows)
    tr.add("max_l sum_j E_l.D_j", max(rows, default=0), "<= lambda" if a else "> lambda")
    ratio = tr.add("(6+gamma)/lambda", (6 + gamma) / lam)
    b = ratio > Fraction(11, 2)
    tr.steps[-1].conclusion = "> 11/2" if b else "<= 11/2"
    c = True
    for j, (g, d) in enumerate(zip(genera, c1_degrees), 1):
        lhs = (Fraction(1, 2) + 1 / lam) * to_fraction(d)
        rhs = Fraction(g - 1, 2)
        ok = lhs >= rhs
        c &= ok
        tr.add(f"curve {j}: (1/2+1/lambda) c1.D - (g-1)/2", lhs - rhs, "ok" if ok else "violated")
    tr.flags.update({"rows": a, "ratio": b, "genus": c, "passed": a and b and c})
    return a and b and c, tr


def example3_parity(degree: int, m: int, fiber: bool = False) -> tuple[int, bool]:
    """c1(X1).D for a smooth rational D after blowing up curves in P^3, and whether it is odd."""
    if fiber:
        # 2 - 2g + F.D with g = 0, F.D = -1
        return 1, True
    if degree < 1 or m < 0:
        raise ValueError("need degree >= 1 and m >= 0")
    c1 = 4 * degree - m
    return c1, c1 % 2 == 1
