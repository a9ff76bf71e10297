"""Exact Fourier-Motzkin elimination over the rationals.

Constraints are stored as ``expr REL 0`` with ``REL`` one of ``=``, ``>=``,
``>``.  Strict inequalities stay strict through elimination, so feasibility
is decided exactly for mixed systems.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .rational import RationalLike, fmt, to_fraction

RELATIONS = ("=", ">=", ">")


@dataclass(frozen=True)
class LinExpr:
    """sum(coeff * var) + const, with zero coefficients never stored."""

    terms: tuple[tuple[str, Fraction], ...] = ()
    const: Fraction = Fraction(0)

    @classmethod
    def of(cls, coeffs: Optional[Mapping[str, RationalLike]] = None, const: RationalLike = 0) -> "LinExpr":
        items = {}
        for v, c in (coeffs or {}).items():
            c = to_fraction(c)
            if c:
                items[v] = items.get(v, Fraction(0)) + c
        return cls(tuple(sorted((v, c) for v, c in items.items() if c)), to_fraction(const))

    @classmethod
    def var(cls, name: str) -> "LinExpr":
        return cls.of({name: 1})

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.terms)

    def coeff(self, var: str) -> Fraction:
        for v, c in self.terms:
            if v == var:
                return c
        return Fraction(0)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.terms)

    def __add__(self, other: "LinExpr | RationalLike") -> "LinExpr":
        if not isinstance(other, LinExpr):
            other = LinExpr.of(const=other)
        d = self.as_dict()
        for v, c in other.terms:
            d[v] = d.get(v, Fraction(0)) + c
        return LinExpr.of(d, self.const + other.const)

    def __neg__(self) -> "LinExpr":
        return self * -1

    __radd__ = __add__

    def __sub__(self, other: "LinExpr | RationalLike") -> "LinExpr":
        if not isinstance(other, LinExpr):
            other = LinExpr.of(const=other)
        return self + (-other)

    def __rsub__(self, other: RationalLike) -> "LinExpr":
        return LinExpr.of(const=other) - self

    def __mul__(self, s: RationalLike) -> "LinExpr":
        s = to_fraction(s)
        return LinExpr.of({v: s * c for v, c in self.terms}, s * self.const)

    __rmul__ = __mul__

    def substitute(self, var: str, expr: "LinExpr") -> "LinExpr":
        c = self.coeff(var)
        if not c:
            return self
        rest = LinExpr.of({v: k for v, k in self.terms if v != var}, self.const)
        return rest + c * expr

    def evaluate(self, values: Mapping[str, RationalLike]) -> Fraction:
        return self.const + sum((c * to_fraction(values[v]) for v, c in self.terms), Fraction(0))

    def __str__(self) -> str:
        parts: list[str] = []
        for v, c in self.terms:
            mag = abs(c)
            body = v if mag == 1 else f"{fmt(mag)}*{v}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        if self.const or not parts:
            if not parts:
                parts.append(fmt(self.const))
            else:
                parts.append(("+ " if self.const > 0 else "- ") + fmt(abs(self.const)))
        return " ".join(parts)


@dataclass(frozen=True)
class Constraint:
    expr: LinExpr
    rel: str

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")

    @property
    def is_ground(self) -> bool:
        return not self.expr.terms

    def holds(self, values: Optional[Mapping[str, RationalLike]] = None) -> bool:
        v = self.expr.evaluate(values or {})
        if self.rel == "=":
            return v == 0
        if self.rel == ">=":
            return v >= 0
        return v > 0

    def normalized(self) -> "Constraint":
        """Scale to primitive integer coefficients (positive factor for inequalities)."""
        vals = [c for _, c in self.expr.terms] + ([self.expr.const] if self.expr.const else [])
        if not vals:
            return self
        if self.is_ground:
            c = self.expr.const
            return Constraint(LinExpr((), Fraction((c > 0) - (c < 0))), self.rel)
        lcm = 1
        for q in vals:
            lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
        ints = [int(q * lcm) for q in vals]
        g = 0
        for i in ints:
            g = math.gcd(g, i)
        scale = Fraction(lcm, g)
        if self.rel == "=" and self.expr.terms[0][1] < 0:
            scale = -scale
        return Constraint(self.expr * scale, self.rel)

    def __str__(self) -> str:
        return f"{self.expr} {self.rel} 0"


def ge(lhs: LinExpr, rhs: Optional[LinExpr] = None) -> Constraint:
    return Constraint(lhs - (rhs or LinExpr()), ">=")


def gt(lhs: LinExpr, rhs: Optional[LinExpr] = None) -> Constraint:
    return Constraint(lhs - (rhs or LinExpr()), ">")


def eq(lhs: LinExpr, rhs: Optional[LinExpr] = None) -> Constraint:
    return Constraint(lhs - (rhs or LinExpr()), "=")


@dataclass(frozen=True)
class ConstraintSystem:
    constraints: tuple[Constraint, ...] = ()

    @classmethod
    def of(cls, constraints: Iterable[Constraint]) -> "ConstraintSystem":
        return cls(tuple(constraints))

    def __iter__(self):
        return iter(self.constraints)

    def __len__(self):
        return len(self.constraints)

    def __add__(self, other: "ConstraintSystem") -> "ConstraintSystem":
        return ConstraintSystem(self.constraints + tuple(other))

    def with_constraints(self, *cs: Constraint) -> "ConstraintSystem":
        return ConstraintSystem(self.constraints + cs)

    @property
    def variables(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for c in self.constraints:
            for v in c.expr.variables:
                seen.setdefault(v)
        return tuple(seen)

    @property
    def is_homogeneous(self) -> bool:
        return all(c.expr.const == 0 for c in self.constraints)

    def holds(self, values: Mapping[str, RationalLike]) -> bool:
        return all(c.holds(values) for c in self.constraints)

    def to_text(self) -> str:
        return "\n".join(str(c) for c in self.constraints)

    __str__ = to_text

    @classmethod
    def from_text(cls, text: str) -> "ConstraintSystem":
        cs = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                cs.append(parse_constraint(line))
        return cls(tuple(cs))


# --------------------------------------------------------------------------
# text form

_TERM_RE = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*(?:\*\s*([A-Za-z_][A-Za-z0-9_']*))?|([A-Za-z_][A-Za-z0-9_']*))"
)


def parse_linexpr(text: str) -> LinExpr:
    """Parse ``3/2*d - b1 + 2`` style rational linear combinations."""
    coeffs: dict[str, Fraction] = {}
    const = Fraction(0)
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty expression")
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse expression at {text[pos:]!r}")
        sign, num, name_after, bare = m.groups()
        if num is not None and num.endswith("/0"):
            raise ValueError(f"zero denominator in {num!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator before {text[pos:m.end()].strip()!r}")
        s = -1 if sign == "-" else 1
        if bare is not None:
            coeffs[bare] = coeffs.get(bare, Fraction(0)) + s
        elif name_after is not None:
            coeffs[name_after] = coeffs.get(name_after, Fraction(0)) + s * Fraction(num)
        else:
            const += s * Fraction(num)
        pos = m.end()
        first = False
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return LinExpr.of(coeffs, const)


def parse_constraint(text: str) -> Constraint:
    for rel in (">=", "<=", ">", "<", "="):
        if rel in text:
            lhs, rhs = text.split(rel, 1)
            left, right = parse_linexpr(lhs), parse_linexpr(rhs)
            if rel == ">=":
                return ge(left, right)
            if rel == ">":
                return gt(left, right)
            if rel == "<=":
                return ge(right, left)
            if rel == "<":
                return gt(right, left)
            return eq(left, right)
    raise ValueError(f"no relation in constraint {text!r}")


# --------------------------------------------------------------------------
# elimination


def _tidy(constraints: Iterable[Constraint]) -> list[Constraint]:
    """Normalize, drop duplicates and inequalities dominated by a parallel one."""
    eqs: dict[tuple, Constraint] = {}
    ineqs: dict[tuple, Constraint] = {}
    grounds: list[Constraint] = []
    for c in constraints:
        c = c.normalized()
        if c.is_ground:
            if not c.holds():
                return [c]
            continue
        key = c.expr.terms
        if c.rel == "=":
            eqs.setdefault((key, c.expr.const), c)
            continue
        old = ineqs.get(key)
        if old is None:
            ineqs[key] = c
        else:
            # a.x + k >= 0: smaller k is tighter; strict wins ties
            k_new, k_old = c.expr.const, old.expr.const
            if k_new < k_old or (k_new == k_old and c.rel == ">"):
                ineqs[key] = c
    return grounds + list(eqs.values()) + list(ineqs.values())


def eliminate_variable(system: ConstraintSystem, var: str) -> ConstraintSystem:
    """Project ``var`` out; the result is feasible iff the input is."""
    cons = list(system)
    for idx, c in enumerate(cons):
        if c.rel == "=" and c.expr.coeff(var):
            a = c.expr.coeff(var)
            # var = -(rest)/a
            rest = LinExpr.of({v: k for v, k in c.expr.terms if v != var}, c.expr.const)
            value = rest * (-1 / a)
            out = [Constraint(o.expr.substitute(var, value), o.rel) for j, o in enumerate(cons) if j != idx]
            return ConstraintSystem(tuple(_tidy(out)))

    pos, neg, keep = [], [], []
    for c in cons:
        a = c.expr.coeff(var)
        if a > 0:
            pos.append(c)
        elif a < 0:
            neg.append(c)
        else:
            keep.append(c)
    for p in pos:
        ap = p.expr.coeff(var)
        for q in neg:
            aq = -q.expr.coeff(var)
            combined = p.expr * (1 / ap) + q.expr * (1 / aq)
            rel = ">" if ">" in (p.rel, q.rel) else ">="
            keep.append(Constraint(combined, rel))
    return ConstraintSystem(tuple(_tidy(keep)))


def _pick_variable(system: ConstraintSystem) -> str:
    for c in system:
        if c.rel == "=" and c.expr.terms:
            return c.expr.terms[0][0]
    best, best_cost = None, None
    for v in system.variables:
        p = sum(1 for c in system if c.expr.coeff(v) > 0)
        n = sum(1 for c in system if c.expr.coeff(v) < 0)
        cost = p * n - p - n
        if best_cost is None or cost < best_cost:
            best, best_cost = v, cost
    return best


def is_feasible(system: ConstraintSystem, order: Optional[Iterable[str]] = None) -> bool:
    """Decide rational feasibility by eliminating every variable.

    ``order`` fixes the elimination order (variables not listed are handled
    afterwards by the default heuristic).
    """
    queue = list(order or [])
    current = ConstraintSystem(tuple(_tidy(system)))
    while True:
        if any(c.is_ground and not c.holds() for c in current):
            return False
        remaining = current.variables
        if not remaining:
            return True
        while queue and queue[0] not in remaining:
            queue.pop(0)
        var = queue.pop(0) if queue else _pick_variable(current)
        current = eliminate_variable(current, var)


def forces_zero(system: ConstraintSystem, var: str) -> bool:
    """True iff every solution of the homogeneous ``system`` has ``var = 0``."""
    if not system.is_homogeneous:
        raise ValueError("forces_zero needs a homogeneous system")
    if not any(c.rel in (">=", ">") and c.expr.terms == ((var, c.expr.coeff(var)),) and c.expr.coeff(var) > 0
               for c in system):
        raise ValueError(f"system must contain {var} >= 0")
    return not is_feasible(system.with_constraints(eq(LinExpr.var(var), LinExpr.of(const=1))))
