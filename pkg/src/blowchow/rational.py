"""Exact rational helpers shared by the engine, the constraint solver and the CLI."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def to_fraction(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction; strings must look like ``p`` or ``p/q``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"malformed rational {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in {value!r}") from None
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def as_integer(value: Fraction, what: str = "value") -> int:
    """Return ``value`` as an int, refusing to round."""
    q = to_fraction(value)
    if q.denominator != 1:
        raise ValueError(f"{what} must be an integer, got {fmt(q)}")
    return q.numerator


def fmt(q: RationalLike) -> str:
    q = to_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_pair(q: RationalLike) -> dict:
    q = to_fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def format_combination(terms) -> str:
    """Render ``[(name, coeff), ...]`` as ``2*H - E1 + 1/2*f2``; zero terms skipped."""
    parts: list[str] = []
    for name, c in terms:
        c = to_fraction(c)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = name if mag == 1 else f"{fmt(mag)}*{name}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0"
