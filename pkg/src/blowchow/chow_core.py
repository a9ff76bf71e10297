"""Even-degree intersection ring of a smooth projective threefold and its blowups.

A :class:`ThreefoldModel` stores a basis of H^2 (divisors), a basis of H^4
(curves), the pairing H^2 x H^4 -> Q and the cup product H^2 x H^2 -> H^4.
Blowing up a point or a smooth curve appends one exceptional divisor and one
new curve class (a line ``l`` in the exceptional plane, or a fiber ``f`` of
the exceptional ruled surface).  Because bases only ever grow by appending,
the pullback of a class from any ancestor model is zero-padding and the
pushforward to an ancestor is truncation.

All arithmetic is exact (``fractions.Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .rational import RationalLike, as_integer, fmt, format_combination, to_fraction

__all__ = [
    "BlowupRecord",
    "CurveCenterSpec",
    "CurveClass",
    "DivisorClass",
    "ModelMismatchError",
    "ThreefoldModel",
    "blow_up_curve",
    "blow_up_point",
    "center_gamma",
    "ci_model",
    "intersect",
    "mul_divisors",
    "p3_model",
    "pairing",
    "pullback",
    "pushforward",
    "strict_transform",
    "triple",
    "zero_section_class",
]


class ModelMismatchError(ValueError):
    """A class was used with a model whose basis it does not belong to."""


# --------------------------------------------------------------------------
# classes


@dataclass(frozen=True)
class _Class:
    basis: tuple[str, ...]
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.basis) != len(self.coeffs):
            raise ValueError(
                f"{len(self.coeffs)} coefficients for a basis of size {len(self.basis)}"
            )
        object.__setattr__(self, "coeffs", tuple(to_fraction(c) for c in self.coeffs))

    def _check(self, other: "_Class") -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.basis != self.basis:
            raise ModelMismatchError("classes live on different models")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.basis, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return type(self)(self.basis, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar: RationalLike):
        if isinstance(scalar, _Class):
            return NotImplemented
        s = to_fraction(scalar)
        return type(self)(self.basis, tuple(s * a for a in self.coeffs))

    __rmul__ = __mul__

    def __getitem__(self, name: str) -> Fraction:
        return self.coeffs[self.basis.index(name)]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def items(self):
        return zip(self.basis, self.coeffs)

    def __str__(self) -> str:
        return format_combination(self.items())


class DivisorClass(_Class):
    """A class in H^2, coordinates over the model's divisor basis."""


class CurveClass(_Class):
    """A class in H^4, coordinates over the model's curve basis."""


# --------------------------------------------------------------------------
# centers and records


@dataclass(frozen=True)
class CurveCenterSpec:
    """A smooth curve to blow up.

    ``tau`` is the degree of the normalized rank-2 bundle of the exceptional
    ruled surface (the self-intersection of its zero section); it is only
    ever supplied by the caller.
    """

    curve: CurveClass
    genus: int = 0
    decomposable: bool = False
    tau: Optional[int] = None

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")


@dataclass(frozen=True)
class BlowupRecord:
    kind: str  # "point" | "curve"
    exceptional_index: int
    new_curve_index: int
    center: Optional[CurveCenterSpec] = None
    gamma: Optional[int] = None


def check_tau(gamma: int, tau: int) -> None:
    if tau > 0:
        raise ValueError(f"tau must be <= 0, got {tau}")
    if (tau - gamma) % 2:
        raise ValueError(f"tau={tau} and gamma={gamma} have different parity")


# --------------------------------------------------------------------------
# the model


Sparse = Mapping[int, Fraction]


@dataclass(frozen=True, eq=False)
class ThreefoldModel:
    """Even-cohomology skeleton of a threefold.

    ``pairing`` maps ``(divisor index, curve index)`` to a rational and
    ``mult`` maps ``(i, j)`` with ``i <= j`` to a sparse curve vector; absent
    keys are zero.  Treat both as read-only.
    """

    name: str
    divisor_basis: tuple[str, ...]
    curve_basis: tuple[str, ...]
    pairing: Mapping[tuple[int, int], Fraction]
    mult: Mapping[tuple[int, int], Sparse]
    c1: DivisorClass
    c2: CurveClass
    provenance: tuple[BlowupRecord, ...] = ()
    parent: Optional["ThreefoldModel"] = field(default=None, repr=False)

    # construction helpers -------------------------------------------------

    def divisor(self, spec: Union[str, Mapping[str, RationalLike], None] = None, **coeffs) -> DivisorClass:
        """``model.divisor("H")`` or ``model.divisor(H=4, E1=-2)``."""
        return DivisorClass(self.divisor_basis, _coords(self.divisor_basis, spec, coeffs))

    def curve(self, spec: Union[str, Mapping[str, RationalLike], None] = None, **coeffs) -> CurveClass:
        return CurveClass(self.curve_basis, _coords(self.curve_basis, spec, coeffs))

    def divisor_unit(self, i: int) -> DivisorClass:
        return self.divisor({self.divisor_basis[i]: 1})

    def curve_unit(self, k: int) -> CurveClass:
        return self.curve({self.curve_basis[k]: 1})

    @property
    def depth(self) -> int:
        return len(self.provenance)

    def ancestors(self) -> list["ThreefoldModel"]:
        """``[self, parent, grandparent, ..., base]``."""
        out, m = [], self
        while m is not None:
            out.append(m)
            m = m.parent
        return out

    def exceptional(self, record: BlowupRecord) -> DivisorClass:
        return self.divisor_unit(record.exceptional_index)

    def new_curve(self, record: BlowupRecord) -> CurveClass:
        return self.curve_unit(record.new_curve_index)

    def owns(self, x: _Class) -> bool:
        basis = self.divisor_basis if isinstance(x, DivisorClass) else self.curve_basis
        return x.basis == basis

    def describe(self) -> str:
        return describe_model(self)


def _coords(basis, spec, coeffs) -> tuple[Fraction, ...]:
    if isinstance(spec, str):
        spec = {spec: 1}
    data = dict(spec or {})
    data.update(coeffs)
    out = [Fraction(0)] * len(basis)
    for name, c in data.items():
        try:
            out[basis.index(name)] = to_fraction(c)
        except ValueError:
            raise KeyError(f"unknown basis element {name!r}") from None
    return tuple(out)


def _require(model: ThreefoldModel, x: _Class) -> None:
    if not model.owns(x):
        raise ModelMismatchError(
            f"{type(x).__name__} with basis {x.basis} does not belong to model {model.name}"
        )


# --------------------------------------------------------------------------
# base models


def p3_model() -> ThreefoldModel:
    """Projective 3-space: H^2 = <H>, H^4 = <L>, H.H = L, H.L = 1."""
    div, cur = ("H",), ("L",)
    return ThreefoldModel(
        name="P3",
        divisor_basis=div,
        curve_basis=cur,
        pairing={(0, 0): Fraction(1)},
        mult={(0, 0): {0: Fraction(1)}},
        c1=DivisorClass(div, (Fraction(4),)),
        c2=CurveClass(cur, (Fraction(6),)),
    )


def ci_model(n: int, degrees: Sequence[int]) -> ThreefoldModel:
    """Complete-intersection threefold in P^n with Picard group generated by h.

    Basis H (hyperplane) and L = H^2, so H.L is the degree of the threefold.
    """
    from .ci_chern import CISpec, chern_classes_ci

    spec = CISpec(n, tuple(degrees))
    c1, c2 = chern_classes_ci(spec)
    deg = 1
    for d in spec.degrees:
        deg *= d
    div, cur = ("H",), ("L",)
    return ThreefoldModel(
        name=f"CI({n};{','.join(map(str, spec.degrees))})",
        divisor_basis=div,
        curve_basis=cur,
        pairing={(0, 0): Fraction(deg)},
        mult={(0, 0): {0: Fraction(1)}},
        c1=DivisorClass(div, (Fraction(c1),)),
        c2=CurveClass(cur, (Fraction(c2),)),
    )


# --------------------------------------------------------------------------
# products


def _pair_raw(model: ThreefoldModel, d: Sequence[Fraction], z: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for (i, k), v in model.pairing.items():
        if d[i] and z[k]:
            total += d[i] * z[k] * v
    return total


def pairing(model: ThreefoldModel, d: DivisorClass, z: CurveClass) -> Fraction:
    """The degree of ``d . z``."""
    _require(model, d)
    _require(model, z)
    return _pair_raw(model, d.coeffs, z.coeffs)


def mul_divisors(model: ThreefoldModel, a: DivisorClass, b: DivisorClass) -> CurveClass:
    _require(model, a)
    _require(model, b)
    out = [Fraction(0)] * len(model.curve_basis)
    for (i, j), vec in model.mult.items():
        w = a.coeffs[i] * b.coeffs[j]
        if i != j:
            w += a.coeffs[j] * b.coeffs[i]
        if w:
            for k, v in vec.items():
                out[k] += w * v
    return CurveClass(model.curve_basis, tuple(out))


def intersect(model: ThreefoldModel, *factors: Union[DivisorClass, CurveClass]) -> Fraction:
    """Degree of a product of total codimension 3: three divisors, or a divisor and a curve."""
    divs = [x for x in factors if isinstance(x, DivisorClass)]
    curves = [x for x in factors if isinstance(x, CurveClass)]
    if len(divs) + len(curves) != len(factors):
        raise TypeError("factors must be DivisorClass or CurveClass")
    if len(divs) + 2 * len(curves) != 3:
        raise ValueError(
            f"product of {len(divs)} divisor(s) and {len(curves)} curve(s) is not of degree 6"
        )
    if curves:
        return pairing(model, divs[0], curves[0])
    a, b, c = divs
    return pairing(model, c, mul_divisors(model, a, b))


def triple(model: ThreefoldModel, a: str, b: str, c: str) -> Fraction:
    """Triple intersection of three named basis divisors."""
    return intersect(model, model.divisor(a), model.divisor(b), model.divisor(c))


# --------------------------------------------------------------------------
# pullback / pushforward


def _pad(x: _Class, basis: tuple[str, ...]) -> _Class:
    if basis[: len(x.basis)] != x.basis:
        raise ModelMismatchError("class does not come from an ancestor of this model")
    extra = (Fraction(0),) * (len(basis) - len(x.basis))
    return type(x)(basis, x.coeffs + extra)


def pullback(model_after: ThreefoldModel, x: _Class) -> _Class:
    """Pull a class back from the parent (or any ancestor) of ``model_after``."""
    basis = model_after.divisor_basis if isinstance(x, DivisorClass) else model_after.curve_basis
    if x.basis == basis:
        raise ModelMismatchError("class already lives on model_after")
    return _pad(x, basis)


def pushforward(
    model_after: ThreefoldModel, x: _Class, to: Optional[ThreefoldModel] = None
) -> _Class:
    """Push a class down to the parent of ``model_after`` (or to ancestor ``to``).

    Exceptional divisors and exceptional curves push forward to zero, so this
    just drops their coordinates.
    """
    _require(model_after, x)
    target = to if to is not None else model_after.parent
    if target is None:
        raise ModelMismatchError(f"model {model_after.name} has no parent")
    basis = target.divisor_basis if isinstance(x, DivisorClass) else target.curve_basis
    if x.basis[: len(basis)] != basis:
        raise ModelMismatchError("target is not an ancestor of model_after")
    return type(x)(basis, x.coeffs[: len(basis)])


# --------------------------------------------------------------------------
# blowups


def center_gamma(model: ThreefoldModel, center: CurveCenterSpec) -> int:
    """Degree of the normal bundle, c1(Y).C + 2g - 2."""
    deg = pairing(model, model.c1, center.curve)
    return as_integer(deg, "c1.C") + 2 * center.genus - 2


def _extend(model: ThreefoldModel, div_name: str, cur_name: str):
    div = model.divisor_basis + (div_name,)
    cur = model.curve_basis + (cur_name,)
    return div, cur, dict(model.pairing), dict(model.mult)


def blow_up_point(model: ThreefoldModel) -> ThreefoldModel:
    k = model.depth + 1
    div, cur, pair, mult = _extend(model, f"E{k}", f"l{k}")
    e, l = len(div) - 1, len(cur) - 1
    pair[(e, l)] = Fraction(-1)
    mult[(e, e)] = {l: Fraction(-1)}
    E = DivisorClass(div, (Fraction(0),) * e + (Fraction(1),))
    c1 = _pad(model.c1, div) - 2 * E
    c2 = _pad(model.c2, cur)
    rec = BlowupRecord("point", e, l)
    return ThreefoldModel(
        name=f"{model.name}+pt",
        divisor_basis=div,
        curve_basis=cur,
        pairing=pair,
        mult=mult,
        c1=c1,
        c2=c2,
        provenance=model.provenance + (rec,),
        parent=model,
    )


def blow_up_curve(model: ThreefoldModel, center: CurveCenterSpec) -> ThreefoldModel:
    """Blow up a smooth curve; disjointness from earlier centers is the caller's claim."""
    _require(model, center.curve)
    gamma = center_gamma(model, center)
    if center.tau is not None:
        check_tau(gamma, center.tau)
    c1_dot_c = pairing(model, model.c1, center.curve)

    k = model.depth + 1
    div, cur, pair, mult = _extend(model, f"E{k}", f"f{k}")
    F, f = len(div) - 1, len(cur) - 1
    pair[(F, f)] = Fraction(-1)
    # pi^*a . F = (a.C) f
    for i in range(F):
        a_dot_c = _pair_raw(model, model.divisor_unit(i).coeffs, center.curve.coeffs)
        if a_dot_c:
            mult[(i, F)] = {f: a_dot_c}
    # F . F = -pi^*C + gamma f
    ff = {k2: -c for k2, c in enumerate(center.curve.coeffs) if c}
    if gamma:
        ff[f] = Fraction(gamma)
    mult[(F, F)] = ff

    Fcls = DivisorClass(div, (Fraction(0),) * F + (Fraction(1),))
    fcls = CurveClass(cur, (Fraction(0),) * f + (Fraction(1),))
    c1 = _pad(model.c1, div) - Fcls
    c2 = _pad(model.c2, cur) + _pad(center.curve, cur) - c1_dot_c * fcls
    rec = BlowupRecord("curve", F, f, center, gamma)
    return ThreefoldModel(
        name=f"{model.name}+crv",
        divisor_basis=div,
        curve_basis=cur,
        pairing=pair,
        mult=mult,
        c1=c1,
        c2=c2,
        provenance=model.provenance + (rec,),
        parent=model,
    )


def strict_transform(model_after: ThreefoldModel, z: CurveClass, m: int) -> CurveClass:
    """pi^*z minus ``m`` copies of the new exceptional curve of the last blowup.

    ``m`` is the multiplicity of the curve at the blown-up point, or the number
    of points (with multiplicity) where it meets the blown-up curve.
    """
    if m < 0:
        raise ValueError("multiplicity must be non-negative")
    if model_after.parent is None:
        raise ModelMismatchError("model_after is not a blowup")
    if z.basis == model_after.curve_basis:
        raise ModelMismatchError("z must be a class on the parent model")
    rec = model_after.provenance[-1]
    return pullback(model_after, z) - m * model_after.new_curve(rec)


def zero_section_class(model: ThreefoldModel, record: BlowupRecord, tau: int) -> CurveClass:
    """Class of the zero section C0 of the exceptional ruled surface: -F.F + (tau+gamma)/2 f."""
    if record.kind != "curve":
        raise ValueError("zero section only exists for curve blowups")
    gamma = record.gamma
    if (tau - gamma) % 2:
        raise ValueError(f"tau={tau} and gamma={gamma} differ in parity; C0 would not be integral")
    F = model.exceptional(record)
    f = model.new_curve(record)
    return -mul_divisors(model, F, F) + Fraction(tau + gamma, 2) * f


# --------------------------------------------------------------------------
# reporting


def describe_model(model: ThreefoldModel) -> str:
    lines = [
        f"model {model.name}",
        f"  divisors: {' '.join(model.divisor_basis)}",
        f"  curves:   {' '.join(model.curve_basis)}",
        f"  c1 = {model.c1}",
        f"  c2 = {model.c2}",
        "  products:",
    ]
    for (i, j), vec in sorted(model.mult.items()):
        z = CurveClass(model.curve_basis, tuple(vec.get(k, Fraction(0)) for k in range(len(model.curve_basis))))
        if not z.is_zero():
            lines.append(f"    {model.divisor_basis[i]}.{model.divisor_basis[j]} = {z}")
    lines.append("  pairing:")
    for (i, k), v in sorted(model.pairing.items()):
        if v:
            lines.append(f"    {model.divisor_basis[i]}.{model.curve_basis[k]} = {fmt(v)}")
    return "\n".join(lines)


def model_to_dict(model: ThreefoldModel) -> dict:
    from .rational import as_pair

    return {
        "name": model.name,
        "divisor_basis": list(model.divisor_basis),
        "curve_basis": list(model.curve_basis),
        "c1": [as_pair(c) for c in model.c1.coeffs],
        "c2": [as_pair(c) for c in model.c2.coeffs],
        "blowups": [
            {"kind": r.kind, "gamma": r.gamma, "exceptional": model.divisor_basis[r.exceptional_index]}
            for r in model.provenance
        ],
    }


def iter_basis_triples(model: ThreefoldModel) -> Iterable[tuple[int, int, int]]:
    n = len(model.divisor_basis)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                yield i, j, k
