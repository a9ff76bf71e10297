"""Chern classes of complete-intersection threefolds in P^n and c2-positivity.

For X = V_1 cap ... cap V_{n-3} in P^n with deg V_j = d_j and hyperplane
class h::

    c1(X) = ((n+1) - sum d) h
    c2(X) = (n(n+1)/2 - e2(d) - (n+1) sum d + (sum d)^2) h^2

where e2 is the second elementary symmetric polynomial.  The h^2 coefficient
splits as ``first_bracket + g(sum d)`` with a Cauchy-Schwarz bracket that is
non-negative and a quadratic ``g`` that is positive at every admissible
integer, which is how positivity of c2 is certified.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional


@dataclass(frozen=True)
class CISpec:
    n: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if self.n < 4:
            raise ValueError("ambient dimension must be at least 4")
        if len(self.degrees) != self.n - 3:
            raise ValueError(f"need {self.n - 3} degrees for a threefold in P^{self.n}, got {len(self.degrees)}")
        if any(d < 1 for d in self.degrees):
            raise ValueError("degrees must be positive")


def _e2(ds) -> int:
    return sum(a * b for a, b in itertools.combinations(ds, 2))


def chern_classes_ci(spec: CISpec) -> tuple[int, int]:
    """(c1 coefficient of h, c2 coefficient of h^2)."""
    n, ds = spec.n, spec.degrees
    x = sum(ds)
    c1 = (n + 1) - x
    c2 = n * (n + 1) // 2 - _e2(ds) - (n + 1) * x + x * x
    return c1, c2


def g_value(n: int, x: int) -> Fraction:
    """g(x) = n(n+1)/2 - (n+1) x + (n-2)/(2(n-3)) x^2."""
    if n < 4:
        raise ValueError("g is only defined for n >= 4")
    return Fraction(n * (n + 1), 2) - (n + 1) * x + Fraction(n - 2, 2 * (n - 3)) * x * x


def first_bracket(spec: CISpec) -> Fraction:
    x = sum(spec.degrees)
    return Fraction(spec.n - 4, 2 * (spec.n - 3)) * x * x - _e2(spec.degrees)


def g_critical_point(n: int) -> Fraction:
    return Fraction((n + 1) * (n - 3), n - 2)


@dataclass
class SweepResult:
    n_max: int
    d_max: int
    checked: int = 0
    counterexample: Optional[dict] = None
    min_c2: Optional[int] = None
    details: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def check_spec(spec: CISpec) -> Optional[dict]:
    """Run certificate and direct checks on one spec; return a failure record or None."""
    _, c2 = chern_classes_ci(spec)
    fb = first_bracket(spec)
    gv = g_value(spec.n, sum(spec.degrees))
    cert = fb >= 0 and gv > 0
    direct = c2 > 0
    identity = fb + gv == c2
    if cert and direct and identity:
        return None
    return {
        "n": spec.n,
        "degrees": list(spec.degrees),
        "c2": c2,
        "first_bracket": fb,
        "g": gv,
        "certificate": cert,
        "direct": direct,
        "identity": identity,
    }


def verify_c2_positive(n_max: int = 8, d_max: int = 6) -> SweepResult:
    """Exhaustive c2 > 0 check over 4 <= n <= n_max, 1 <= d_j <= d_max.

    Degree tuples are enumerated as sorted multisets since every quantity
    involved is symmetric in the d_j.
    """
    if n_max < 4 or d_max < 1:
        raise ValueError("need n_max >= 4 and d_max >= 1")
    res = SweepResult(n_max, d_max)
    for n in range(4, n_max + 1):
        for ds in itertools.combinations_with_replacement(range(1, d_max + 1), n - 3):
            spec = CISpec(n, ds)
            res.checked += 1
            c2 = chern_classes_ci(spec)[1]
            res.min_c2 = c2 if res.min_c2 is None else min(res.min_c2, c2)
            bad = check_spec(spec)
            if bad is not None:
                res.counterexample = bad
                return res
    return res
