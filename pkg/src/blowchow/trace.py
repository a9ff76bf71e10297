"""Step-by-step derivation records returned by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .rational import as_pair, fmt


@dataclass
class TraceStep:
    label: str
    value: Any
    conclusion: str = ""


@dataclass
class DeductionTrace:
    title: str
    steps: list[TraceStep] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    flags: dict[str, bool] = field(default_factory=dict)

    def add(self, label: str, value: Any, conclusion: str = "") -> Any:
        self.steps.append(TraceStep(label, value, conclusion))
        return value

    def value(self, label: str) -> Any:
        for s in self.steps:
            if s.label == label:
                return s.value
        raise KeyError(label)

    def labels(self) -> list[str]:
        return [s.label for s in self.steps]

    def render(self) -> str:
        out = [self.title]
        out += [f"  note: {n}" for n in self.notes]
        for s in self.steps:
            line = f"  {s.label} = {render_value(s.value)}"
            if s.conclusion:
                line += f"  [{s.conclusion}]"
            out.append(line)
        for k in sorted(self.flags):
            out.append(f"  {k}: {'yes' if self.flags[k] else 'no'}")
        return "\n".join(out)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "notes": list(self.notes),
            "steps": [
                {"label": s.label, "value": structured_value(s.value), "conclusion": s.conclusion}
                for s in self.steps
            ],
            "flags": dict(self.flags),
        }


def render_value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, Fraction)):
        return fmt(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(render_value(x) for x in v) + "]"
    return str(v)


def structured_value(v: Any) -> Any:
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, (int, Fraction)):
        return as_pair(v)
    if isinstance(v, (list, tuple)):
        return [structured_value(x) for x in v]
    if isinstance(v, dict):
        return {k: structured_value(x) for k, x in v.items()}
    if hasattr(v, "items") and hasattr(v, "coeffs"):
        return {name: as_pair(c) for name, c in v.items() if c}
    return str(v)
