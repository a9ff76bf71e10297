"""Line-oriented scenario files: a base threefold, blowups, named classes, queries.

Example::

    base p3
    blowup point
    class z = 4*H - 2*E1
    query intersect z z z expect=56

Basis names are generated in blowup order (E1, l1 for a point; E2, f2 for a
curve; ...).  A class defined before a blowup is pulled back automatically
when used afterwards.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from . import chow_core as cc
from .chow_core import CurveCenterSpec, CurveClass, DivisorClass, ThreefoldModel
from .linear_feasibility import parse_linexpr
from .property_a import (
    property_a_report,
    stack_from_model,
    subcase22_certificate,
    theorem1_check,
    theorem2_chain,
)
from .rational import as_pair, fmt, format_combination, to_fraction
from .trace import structured_value

Expr = tuple[tuple[str, Fraction], ...]


class ScenarioError(Exception):
    def __init__(self, line: int, token: str, message: str):
        self.line, self.token, self.message = line, token, message
        super().__init__(f"line {line}: {message} (at {token!r})")


# --------------------------------------------------------------------------
# directives


@dataclass(frozen=True)
class Base:
    kind: str = "p3"
    n: Optional[int] = None
    degrees: tuple[int, ...] = ()
    line: int = field(default=0, compare=False)

    def to_text(self) -> str:
        if self.kind == "p3":
            return "base p3"
        return f"base ci {self.n} {','.join(map(str, self.degrees))}"


@dataclass(frozen=True)
class BlowupPoint:
    line: int = field(default=0, compare=False)

    def to_text(self) -> str:
        return "blowup point"


@dataclass(frozen=True)
class BlowupCurve:
    curve: Expr
    genus: int = 0
    decomposable: bool = False
    tau: Optional[int] = None
    mult_with_prior: tuple[int, ...] = ()
    line: int = field(default=0, compare=False)

    def to_text(self) -> str:
        parts = ["blowup curve", f"class={_expr_token(self.curve)}", f"genus={self.genus}"]
        if self.decomposable:
            parts.append("decomposable")
        if self.tau is not None:
            parts.append(f"tau={self.tau}")
        if self.mult_with_prior:
            parts.append("mult-with-prior=" + ",".join(map(str, self.mult_with_prior)))
        return " ".join(parts)


@dataclass(frozen=True)
class ClassDef:
    name: str
    expr: Expr
    degree: str = "divisor"  # or "curve"
    line: int = field(default=0, compare=False)

    def to_text(self) -> str:
        kw = "class" if self.degree == "divisor" else "curve"
        return f"{kw} {self.name} = {format_combination(self.expr)}"


@dataclass(frozen=True)
class Query:
    kind: str
    args: tuple[str, ...] = ()
    options: tuple[tuple[str, str], ...] = ()
    line: int = field(default=0, compare=False)

    def option(self, key: str, default: Any = None) -> Any:
        for k, v in self.options:
            if k == key:
                return v
        return default

    def to_text(self) -> str:
        opts = [k if v == "" else f"{k}={v}" for k, v in self.options]
        return " ".join(["query", self.kind, *self.args, *opts])


Directive = Union[Base, BlowupPoint, BlowupCurve, ClassDef, Query]


@dataclass(frozen=True)
class Scenario:
    directives: tuple[Directive, ...] = ()

    @property
    def base(self) -> Optional[Base]:
        return next((d for d in self.directives if isinstance(d, Base)), None)

    @property
    def blowups(self) -> list[Directive]:
        return [d for d in self.directives if isinstance(d, (BlowupPoint, BlowupCurve))]

    @property
    def definitions(self) -> list[ClassDef]:
        return [d for d in self.directives if isinstance(d, ClassDef)]

    @property
    def queries(self) -> list[Query]:
        return [d for d in self.directives if isinstance(d, Query)]

    def to_text(self) -> str:
        return "\n".join(d.to_text() for d in self.directives) + "\n"


def _expr_token(expr: Expr) -> str:
    return format_combination(expr).replace(" ", "")


# --------------------------------------------------------------------------
# parsing

QUERY_KINDS = (
    "intersect", "chern", "property_a", "theorem1", "subcase22", "theorem2", "strict", "model",
)


def _parse_expr(text: str, lineno: int) -> Expr:
    try:
        e = parse_linexpr(text)
    except ValueError as exc:
        raise ScenarioError(lineno, text.strip(), str(exc)) from None
    if e.const:
        raise ScenarioError(lineno, text, "class expressions cannot have a constant term")
    if not e.terms:
        raise ScenarioError(lineno, text, "empty class expression")
    return e.terms


def _int(tok: str, value: str, lineno: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ScenarioError(lineno, tok, f"expected an integer, got {value!r}") from None


def _rational(tok: str, value: str, lineno: int) -> Fraction:
    try:
        return to_fraction(value)
    except (ValueError, TypeError):
        raise ScenarioError(lineno, tok, f"malformed rational {value!r}") from None


def _split_opts(tokens: list[str]) -> tuple[list[str], list[tuple[str, str]]]:
    args, opts = [], []
    for t in tokens:
        if "=" in t:
            k, v = t.split("=", 1)
            opts.append((k, v))
        elif t in ("decomposable", "raw", "c2-positive"):
            opts.append((t, ""))
        else:
            args.append(t)
    return args, opts


def parse_scenario(text: str) -> Scenario:
    out: list[Directive] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(None, 1)[0]
        if head in ("class", "curve"):
            rest = line[len(head):]
            if "=" not in rest:
                raise ScenarioError(lineno, line, f"expected '{head} <name> = <expr>'")
            name, expr = rest.split("=", 1)
            name = name.strip()
            if not name.isidentifier():
                raise ScenarioError(lineno, name, "bad class name")
            out.append(ClassDef(name, _parse_expr(expr, lineno),
                                "divisor" if head == "class" else "curve", lineno))
            continue
        try:
            toks = shlex.split(line)
        except ValueError as exc:
            raise ScenarioError(lineno, line, str(exc)) from None
        if head == "base":
            if toks[1:] == ["p3"]:
                out.append(Base("p3", line=lineno))
            elif len(toks) == 4 and toks[1] == "ci":
                n = _int(toks[2], toks[2], lineno)
                ds = tuple(_int(toks[3], d, lineno) for d in toks[3].split(","))
                out.append(Base("ci", n, ds, lineno))
            else:
                raise ScenarioError(lineno, " ".join(toks[1:]), "unknown base (use 'p3' or 'ci <n> <d1,...>')")
        elif head == "blowup":
            if len(toks) < 2 or toks[1] not in ("point", "curve"):
                raise ScenarioError(lineno, line, "expected 'blowup point' or 'blowup curve ...'")
            if toks[1] == "point":
                if len(toks) > 2:
                    raise ScenarioError(lineno, toks[2], "unexpected token after 'blowup point'")
                out.append(BlowupPoint(lineno))
                continue
            args, opts = _split_opts(toks[2:])
            if args:
                raise ScenarioError(lineno, args[0], "unexpected token")
            d = dict(opts)
            if "class" not in d:
                raise ScenarioError(lineno, line, "curve blowup needs class=<curve-expr>")
            for k in d:
                if k not in ("class", "genus", "decomposable", "tau", "mult-with-prior"):
                    raise ScenarioError(lineno, k, "unknown blowup option")
            mults = ()
            if d.get("mult-with-prior"):
                mults = tuple(_int("mult-with-prior", m, lineno) for m in d["mult-with-prior"].split(","))
            out.append(BlowupCurve(
                _parse_expr(d["class"], lineno),
                _int("genus", d.get("genus", "0"), lineno),
                "decomposable" in d,
                _int("tau", d["tau"], lineno) if "tau" in d else None,
                mults,
                lineno,
            ))
        elif head == "query":
            if len(toks) < 2 or toks[1] not in QUERY_KINDS:
                raise ScenarioError(lineno, toks[1] if len(toks) > 1 else line, "unknown query")
            args, opts = _split_opts(toks[2:])
            out.append(Query(toks[1], tuple(args), tuple(opts), lineno))
        else:
            raise ScenarioError(lineno, head, "unknown directive")
    bases = [d for d in out if isinstance(d, Base)]
    if len(bases) > 1:
        raise ScenarioError(bases[1].line, "base", "more than one base declaration")
    if out and not isinstance(out[0], Base):
        raise ScenarioError(out[0].line, out[0].to_text().split()[0], "scenario must start with 'base'")
    return Scenario(tuple(out))


# --------------------------------------------------------------------------
# evaluation


@dataclass
class Record:
    line: int
    query: str
    text: str
    data: dict
    passed: Optional[bool] = None  # None when the query carries no expectation

    def to_dict(self) -> dict:
        d = {"line": self.line, "query": self.query, "result": self.data}
        if self.passed is not None:
            d["passed"] = self.passed
        return d


@dataclass
class RunResult:
    records: list[Record]
    model: Optional[ThreefoldModel]

    @property
    def ok(self) -> bool:
        return all(r.passed is not False for r in self.records)

    def render_text(self) -> str:
        return "".join(r.text + "\n" for r in self.records)

    def to_dict(self) -> dict:
        return {"records": [r.to_dict() for r in self.records], "ok": self.ok}


class Runner:
    def __init__(self):
        self.model: Optional[ThreefoldModel] = None
        self.names: dict[str, Union[DivisorClass, CurveClass]] = {}
        self.blowup_parents: list[tuple[ThreefoldModel, Directive]] = []

    # name resolution -------------------------------------------------------

    def _unit(self, name: str, lineno: int) -> Union[DivisorClass, CurveClass]:
        m = self.model
        if name in m.divisor_basis:
            return m.divisor(name)
        if name in m.curve_basis:
            return m.curve(name)
        if name == "c1":
            return m.c1
        if name == "c2":
            return m.c2
        if name in self.names:
            x = self.names[name]
            if x.basis in (m.divisor_basis, m.curve_basis):
                return x
            return cc.pullback(m, x)
        raise ScenarioError(lineno, name, "unknown name")

    def resolve(self, expr: Expr, lineno: int, want: Optional[str] = None):
        total = None
        for name, c in expr:
            u = self._unit(name, lineno)
            kind = "divisor" if isinstance(u, DivisorClass) else "curve"
            if want is not None and kind != want:
                raise ScenarioError(lineno, name, f"expected a {want} class, {name} is a {kind} class")
            if total is not None and type(total) is not type(u):
                raise ScenarioError(lineno, name, "mixes divisor and curve classes")
            total = c * u if total is None else total + c * u
        return total

    def resolve_token(self, tok: str, lineno: int, want: Optional[str] = None):
        return self.resolve(_parse_expr(tok, lineno), lineno, want)

    # directives -------------------------------------------------------------

    def run(self, scenario: Scenario) -> RunResult:
        records = []
        for d in scenario.directives:
            try:
                rec = self.step(d)
            except ScenarioError:
                raise
            except (ValueError, KeyError, TypeError) as exc:
                raise ScenarioError(d.line, d.to_text(), str(exc)) from None
            if rec is not None:
                records.append(rec)
        return RunResult(records, self.model)

    def step(self, d: Directive) -> Optional[Record]:
        if isinstance(d, Base):
            self.model = cc.p3_model() if d.kind == "p3" else cc.ci_model(d.n, d.degrees)
            return None
        if self.model is None:
            raise ScenarioError(d.line, d.to_text(), "no base declared")
        if isinstance(d, BlowupPoint):
            self.blowup_parents.append((self.model, d))
            self.model = cc.blow_up_point(self.model)
        elif isinstance(d, BlowupCurve):
            curve = self.resolve(d.curve, d.line, "curve")
            center = CurveCenterSpec(curve, d.genus, d.decomposable, d.tau)
            self.blowup_parents.append((self.model, d))
            self.model = cc.blow_up_curve(self.model, center)
        elif isinstance(d, ClassDef):
            self.names[d.name] = self.resolve(d.expr, d.line, d.degree)
        else:
            return self.query(d)
        return None

    def query(self, q: Query) -> Record:
        handler = getattr(self, f"_q_{q.kind}")
        text, data, value = handler(q)
        passed = None
        expect = q.option("expect")
        if expect is not None:
            passed = _matches(value, expect)
            first, _, rest = text.partition("\n")
            text = f"{first}  [expect {expect}: {'ok' if passed else 'FAILED'}]" + (f"\n{rest}" if rest else "")
        return Record(q.line, q.kind, f"[{q.line}] {text}", data, passed)

    def _q_model(self, q):
        return cc.describe_model(self.model), cc.model_to_dict(self.model), None

    def _q_intersect(self, q):
        if not q.args:
            raise ScenarioError(q.line, "intersect", "nothing to intersect")
        factors = [self.resolve_token(t, q.line) for t in q.args]
        try:
            val = cc.intersect(self.model, *factors)
        except ValueError as exc:
            raise ScenarioError(q.line, " ".join(q.args), str(exc)) from None
        return f"intersect {' '.join(q.args)} = {fmt(val)}", {"value": as_pair(val)}, val

    def _q_chern(self, q):
        which = q.args[0] if q.args else ""
        if which not in ("1", "2"):
            raise ScenarioError(q.line, which, "chern index must be 1 or 2")
        cls = self.model.c1 if which == "1" else self.model.c2
        return f"c{which} = {cls}", {"class": structured_value(cls)}, cls

    def _q_property_a(self, q):
        if len(q.args) != 1:
            raise ScenarioError(q.line, " ".join(q.args), "property_a takes one divisor")
        zeta = self.resolve_token(q.args[0], q.line, "divisor")
        rep = property_a_report(self.model, zeta)
        verdict = "met" if rep.hypotheses_met else "not met"
        text = (f"property_a {q.args[0]}: zeta^2 = {rep.zeta_sq}, zeta.c1^2 = {fmt(rep.zeta_c1_sq)}, "
                f"zeta.c2 = {fmt(rep.zeta_c2)}; hypotheses {verdict}")
        data = {
            "zeta_sq": structured_value(rep.zeta_sq),
            "zeta_c1_sq": as_pair(rep.zeta_c1_sq),
            "zeta_c2": as_pair(rep.zeta_c2),
            "hypotheses_met": rep.hypotheses_met,
        }
        return text, data, "met" if rep.hypotheses_met else "unmet"

    def _q_theorem1(self, q):
        ref = q.args[0] if q.args else ""
        if ref == "point":
            v = theorem1_check(self.model, "point")
        elif q.option("blowup") is not None:
            k = _int("blowup", q.option("blowup"), q.line)
            if not 1 <= k <= len(self.blowup_parents):
                raise ScenarioError(q.line, f"blowup={k}", "no such blowup")
            parent, d = self.blowup_parents[k - 1]
            if isinstance(d, BlowupPoint):
                v = theorem1_check(parent, "point")
            else:
                v = theorem1_check(parent, self.model.provenance[k - 1].center)
        elif ref:
            curve = self.resolve_token(ref, q.line, "curve")
            center = CurveCenterSpec(curve, _int("genus", q.option("genus", "0"), q.line),
                                     q.option("decomposable") is not None)
            v = theorem1_check(self.model, center)
        else:
            raise ScenarioError(q.line, "theorem1", "expected 'point', blowup=<k> or a curve")
        word = "applicable" if v.applicable else "inapplicable"
        target = ref or f"blowup={q.option('blowup')}"
        text = f"theorem1 {target}: {word} ({v.reason.value})"
        data = {"applicable": v.applicable, "reason": v.reason.value, "c1_degree": v.c1_degree}
        return text, data, word

    def _q_subcase22(self, q):
        m = self.model
        if m.parent is None or m.provenance[-1].kind != "curve":
            raise ScenarioError(q.line, "subcase22", "last blowup must be along a curve")
        for key in ("xi", "alpha", "tau"):
            if q.option(key) is None:
                raise ScenarioError(q.line, "subcase22", f"missing {key}=")
        xi = self.resolve_token(q.option("xi"), q.line, "divisor")
        if xi.basis == m.divisor_basis:
            if xi.coeffs[-1]:
                raise ScenarioError(q.line, q.option("xi"), "xi must be pulled back from the parent")
            xi = cc.pushforward(m, xi)
        alpha = _rational("alpha", q.option("alpha"), q.line)
        tau = _int("tau", q.option("tau"), q.line)
        tr = subcase22_certificate(m, xi, alpha, tau)
        val = tr.value("zeta.C0")
        word = "contradiction" if tr.flags["contradiction"] else "no contradiction"
        text = f"subcase22 xi={q.option('xi')} alpha={fmt(alpha)} tau={tau}: zeta.C0 = {fmt(val)}, {word}"
        return text + "\n" + _indent(tr.render()), tr.to_dict(), word

    def _q_theorem2(self, q):
        m = self.model
        stack = stack_from_model(m)
        xi = self.resolve_token(q.option("xi", "0*H"), q.line, "divisor")
        if any(xi.coeffs[len(stack.x1.divisor_basis):]):
            raise ScenarioError(q.line, q.option("xi"), "xi must live on the point blowup X1")
        xi = DivisorClass(stack.x1.divisor_basis, xi.coeffs[: len(stack.x1.divisor_basis)])
        raw = q.option("alphas", "")
        alphas = [_rational("alphas", a, q.line) for a in raw.split(",")] if raw else []
        if not alphas:
            alphas = [Fraction(0)] * len(stack.centers)
        part = _int("part", q.option("part", "1"), q.line)
        pos = True if q.option("c2-positive") is not None else None
        tr = theorem2_chain(stack, xi, alphas, part, pos)
        if not tr.flags["applicable"]:
            word = "inapplicable"
        elif not tr.flags.get("consistent", True):
            word = "inconsistent"
        elif tr.flags.get("pushforward_vanishes"):
            word = "forced"
        else:
            word = "not forced"
        return f"theorem2 part {part}: {word}\n" + _indent(tr.render()), tr.to_dict(), word

    def _q_strict(self, q):
        m = self.model
        if m.parent is None:
            raise ScenarioError(q.line, "strict", "no blowup yet")
        if len(q.args) != 1 or q.option("m") is None:
            raise ScenarioError(q.line, "strict", "usage: strict <curve> m=<int>")
        z = self.resolve_token(q.args[0], q.line, "curve")
        if z.basis == m.curve_basis:
            if z.coeffs[-1]:
                raise ScenarioError(q.line, q.args[0], "curve must come from before the last blowup")
            z = cc.pushforward(m, z)
        mult = _int("m", q.option("m"), q.line)
        if mult < 0:
            raise ScenarioError(q.line, q.option("m"), "multiplicity must be non-negative")
        st = cc.strict_transform(m, z, mult)
        deg = cc.pairing(m, m.c1, st)
        text = f"strict {q.args[0]} m={mult} = {st}; c1-degree {fmt(deg)}"
        return text, {"class": structured_value(st), "c1_degree": as_pair(deg)}, st


def _matches(value, expect: str) -> bool:
    if isinstance(value, (Fraction, int)):
        try:
            return to_fraction(value) == to_fraction(expect)
        except ValueError:
            return False
    if isinstance(value, (DivisorClass, CurveClass)):
        try:
            return parse_linexpr(expect).as_dict() == {k: c for k, c in value.items() if c}
        except ValueError:
            return False
    return str(value) == expect


def _indent(text: str) -> str:
    return "\n".join("    " + ln for ln in text.splitlines())


def run_scenario(scenario: Scenario) -> RunResult:
    return Runner().run(scenario)
