"""Command line entry point: ``blowchow <subcommand> ...``.

Exit status is 0 on success, 1 when a verdict or expectation fails and 2 on
malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .ci_chern import CISpec, chern_classes_ci, first_bracket, g_value, verify_c2_positive
from .property_a import remark2_check
from .rational import as_pair, fmt
from .scenario import ScenarioError, parse_scenario, run_scenario
from .theorem3 import decide_deg_zero, remark2_inputs
from .trace import structured_value


def _emit(args, text: str, data) -> None:
    if args.format == "structured":
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_run(args) -> int:
    with open(args.file) as fh:
        text = fh.read()
    try:
        result = run_scenario(parse_scenario(text))
    except ScenarioError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return 2
    _emit(args, result.render_text(), result.to_dict())
    return 0 if result.ok else 1


def cmd_theorem3(args) -> int:
    dec = decide_deg_zero(args.n, raw_constraints=args.raw_constraints)
    verdict = "forced" if dec.forced else "not forced"
    text = (
        f"n = {args.n}\nsystem:\n"
        + "\n".join("  " + ln for ln in dec.system.to_text().splitlines())
        + f"\ncase: {dec.case}\nverdict: deg {verdict}\n"
        + dec.trace.render()
    )
    data = {
        "n": args.n,
        "case": dec.case,
        "forced": dec.forced,
        "system": dec.system.to_text().splitlines(),
        "trace": dec.trace.to_dict(),
    }
    _emit(args, text, data)
    return 0 if dec.forced else 1


def cmd_ci(args) -> int:
    degrees = tuple(int(d) for d in args.degrees.split(","))
    spec = CISpec(args.n, degrees)
    c1, c2 = chern_classes_ci(spec)
    x = sum(degrees)
    fb, g = first_bracket(spec), g_value(args.n, x)
    text = (
        f"P^{args.n} degrees {','.join(map(str, degrees))}\n"
        f"c1 = {c1}*h\nc2 = {c2}*h^2\n"
        f"first bracket = {fmt(fb)}\ng({x}) = {fmt(g)}\n"
        f"c2 positive: {'yes' if c2 > 0 else 'no'}"
    )
    data = {"c1": c1, "c2": c2, "first_bracket": as_pair(fb), "g": as_pair(g), "positive": c2 > 0}
    _emit(args, text, data)
    return 0 if c2 > 0 else 1


def cmd_ci_sweep(args) -> int:
    res = verify_c2_positive(args.n_max, args.d_max)
    text = f"checked {res.checked} degree tuples (n <= {args.n_max}, d <= {args.d_max}); min c2 = {res.min_c2}\n"
    text += "no counterexample" if res.ok else f"counterexample: {res.counterexample}"
    data = {"checked": res.checked, "min_c2": res.min_c2, "ok": res.ok,
            "counterexample": structured_value(res.counterexample)}
    _emit(args, text, data)
    return 0 if res.ok else 1


def load_remark2_config(path: str) -> dict:
    with open(path) as fh:
        cfg = json.load(fh)
    if "lines" in cfg:
        data = remark2_inputs(int(cfg["lines"]))
        if "lambda" in cfg:
            data["lam"] = Fraction(str(cfg["lambda"]))
        return data
    return {
        "incidence": cfg["incidence"],
        "degrees": cfg["degrees"],
        "genera": cfg["genera"],
        "c1_degrees": [Fraction(str(c)) for c in cfg["c1_degrees"]],
        "lam": Fraction(str(cfg["lambda"])),
    }


def cmd_remark2(args) -> int:
    try:
        data = load_remark2_config(args.config)
    except (KeyError, ValueError) as exc:
        print(f"{args.config}: bad config: {exc}", file=sys.stderr)
        return 2
    ok, tr = remark2_check(**data)
    _emit(args, tr.render() + f"\nverdict: {'pass' if ok else 'fail'}", tr.to_dict())
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="blowchow", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("run", parents=[common], help="evaluate a scenario file")
    s.add_argument("file")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("theorem3", parents=[common], help="n points and all lines through them")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--raw-constraints", action="store_true", help="one twisted-cubic constraint per 6 points")
    s.set_defaults(func=cmd_theorem3)

    s = sub.add_parser("ci", parents=[common], help="Chern classes of a complete intersection")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--degrees", required=True)
    s.set_defaults(func=cmd_ci)

    s = sub.add_parser("ci-sweep", parents=[common], help="exhaustive c2 > 0 check")
    s.add_argument("--n-max", type=int, default=8)
    s.add_argument("--d-max", type=int, default=6)
    s.set_defaults(func=cmd_ci_sweep)

    s = sub.add_parser("remark2", parents=[common], help="point/curve inequalities from a JSON config")
    s.add_argument("--config", required=True)
    s.set_defaults(func=cmd_remark2)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "format"):
        args.format = "text"
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
