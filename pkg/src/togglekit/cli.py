"""Command-line front end.

Every subcommand reads JSON files and writes JSON to stdout (``--pretty``
indents it).  Exit status is 0 on success and 1 when something checked
fails: a property suite, polyomino validation, or an oracle comparison.
Usage errors and unusable inputs (bad JSON, illegal shifts) give 2.
"""

from __future__ import annotations

import argparse
import sys

from . import ehrhart as ehr
from .chains import OracleTooLarge, PathFamilySpec, brute_force_max_weight, max_weight
from .jsonio import (
    dumps,
    filling_from_json,
    filling_to_json,
    labeling_from_json,
    labeling_to_json,
    load,
    polyomino_from_json,
    polyomino_to_json,
    rect_from_json,
    rect_to_json,
)
from .maps import MapProgram
from .moon import (
    AXES,
    IllegalShift,
    MoonError,
    ShiftStep,
    omega_path,
    rect_chain_max,
    se_chain_max,
    shift_filling,
    straighten,
    validate,
    ne_chain_max,
)
from .poset import RectShape
from .realm import format_rational, realm_by_name
from .render import render
from .verify import REGISTRY, run_property


class UsageError(Exception):
    pass


def _ints(text: str, n: int, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must be {n} comma-separated integers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{what} must be {n} comma-separated integers, got {text!r}")
    return vals


def _out(args, obj) -> None:
    print(dumps(obj, pretty=args.pretty))


def cmd_apply(args) -> int:
    x = labeling_from_json(load(args.input))
    try:
        program = MapProgram.parse(args.map)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _out(args, labeling_to_json(program(x)))
    return 0


def cmd_chains(args) -> int:
    x = labeling_from_json(load(args.input))
    u1, v1, u2, v2 = _ints(args.rect, 4, "--rect")
    spec = PathFamilySpec(u1, v1, u2, v2, args.k)
    value = max_weight(x, spec)
    out = {"rect": [u1, v1, u2, v2], "k": args.k, "realm": x.realm.name, "value": format_rational(value)}
    status = 0
    if args.oracle:
        oracle = brute_force_max_weight(x, spec)
        out["oracle"] = format_rational(oracle)
        out["agree"] = oracle == value
        status = 0 if oracle == value else 1
    _out(args, out)
    return status


def _parse_step(text: str) -> ShiftStep:
    # "down:i1,i2,j1,j2" or "up^-1:i1,i2,j1,j2"
    try:
        head, rect = text.split(":", 1)
    except ValueError:
        raise UsageError(f"step must look like 'down:i1,i2,j1,j2', got {text!r}") from None
    inverse = head.endswith("^-1")
    axis = head[:-3] if inverse else head
    if axis not in AXES:
        raise UsageError(f"step axis must be one of {', '.join(AXES)}")
    return ShiftStep(rect_from_json(",".join(str(v) for v in _ints(rect, 4, "step rectangle"))), axis, inverse)


def cmd_moon(args) -> int:
    obj = load(args.input)
    if args.action == "validate":
        ok, reason = validate([tuple(c) for c in obj["cells"]])
        _out(args, {"valid": ok, "reason": reason})
        return 0 if ok else 1
    M = polyomino_from_json(obj)
    if args.action == "rects":
        _out(args, {"rectangles": [rect_to_json(R) for R in M.maximal_rectangles]})
    elif args.action == "straighten":
        steps, lam = straighten(M)
        _out(
            args,
            {
                "steps": [str(st) for st in steps],
                "partition": list(lam.row_lengths()),
                "straight": polyomino_to_json(lam),
            },
        )
    elif args.action == "map":
        x = filling_from_json(obj)
        if args.step:
            for text in args.step:
                x = shift_filling(x, _parse_step(text))
        if args.to:
            x = omega_path(x, polyomino_from_json(load(args.to)))
        _out(args, filling_to_json(x))
    elif args.action == "stats":
        x = filling_from_json(obj)
        per = [
            {"rect": rect_to_json(R), "value": format_rational(rect_chain_max(x, R, args.k))}
            for R in M.maximal_rectangles
        ]
        out = {"k": args.k, "per_rectangle": per}
        if x.realm.name == "PL":
            out["ne_chain_max"] = format_rational(ne_chain_max(x, args.k))
        out["se_chain_max"] = se_chain_max(x)
        _out(args, out)
    return 0


def cmd_ehrhart(args) -> int:
    M = polyomino_from_json(load(args.moon))
    counts = [ehr.count_dilate(M, k) for k in range(args.max_k + 1)]
    out: dict = {"cells": len(M), "counts": counts}
    status = 0
    if args.oracle:
        oracle = [ehr.count_dilate_oracle(M, k) for k in range(args.max_k + 1)]
        out["oracle_counts"] = oracle
        out["oracle_agrees"] = oracle == counts
        status |= oracle != counts
    d = len(M)
    if args.max_k >= d:
        poly = ehr.interpolate(enumerate(counts[: d + 1]))
        out["coefficients"] = [format_rational(c) for c in poly.coeffs]
    if args.check_collapse:
        rep = ehr.period_collapse_check(M, max(args.max_k, d + 3))
        out["period_collapse"] = {"ok": rep.ok, "mismatches": list(rep.mismatches), "quasi_checked": rep.quasi_checked}
        out.setdefault("coefficients", [format_rational(c) for c in rep.polynomial.coeffs])
        status |= not rep.ok
    if args.check_syt:
        ok, lhs, rhs = ehr.syt_volume_check(M)
        out["syt_volume"] = {"ok": ok, "normalized_leading": lhs, "tableaux": rhs}
        status |= not ok
    _out(args, out)
    return int(status)


def cmd_verify(args) -> int:
    if args.list or not args.property:
        _out(args, {name: p.summary for name, p in sorted(REGISTRY.items())})
        return 0
    names = sorted(REGISTRY) if args.property == "all" else [args.property]
    for name in names:
        if name not in REGISTRY:
            raise UsageError(f"unknown property {name!r}; use --list to see all")
    shape = RectShape(*_ints(args.shape, 2, "--shape")) if args.shape else None
    realms = [realm_by_name(args.realm)] if args.realm else None
    status = 0
    results = []
    for name in names:
        rep = run_property(name, args.trials, args.seed, shape, realms)
        entry = {"property": name, "seed": args.seed, "trials": args.trials, "runs": rep.runs, "ok": rep.ok}
        if not rep.ok:
            f = rep.minimal_failure()
            entry["failures"] = len(rep.failures)
            entry["counterexample"] = {
                "realm": f.realm,
                "trial": f.trial,
                "trial_seed": f.seed,
                "message": f.message,
                "witness": f.witness,
            }
            status = 1
        results.append(entry)
    _out(args, results[0] if len(results) == 1 else results)
    return status


def cmd_render(args) -> int:
    obj = load(args.input)
    if "shape" in obj:
        thing = labeling_from_json(obj)
    elif "values" in obj:
        thing = filling_from_json(obj)
    else:
        thing = polyomino_from_json(obj)
    print(render(thing, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="togglekit", description="Toggles, RSK and moon polyominoes with exact arithmetic.")
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("apply", help="apply a map program to a labeling")
    a.add_argument("--map", required=True, help="program such as 'rsk^-1.proP.rsk'")
    a.add_argument("--in", dest="input", required=True)
    a.set_defaults(func=cmd_apply)

    c = sub.add_parser("chains", help="path-family statistic of a box")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--rect", required=True, help="u1,v1,u2,v2")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--oracle", action="store_true", help="also run brute-force enumeration")
    c.set_defaults(func=cmd_chains)

    m = sub.add_parser("moon", help="moon polyomino tools")
    m.add_argument("action", choices=["validate", "rects", "straighten", "map", "stats"])
    m.add_argument("--in", dest="input", required=True)
    m.add_argument("--to", help="target polyomino for 'map'")
    m.add_argument("--step", action="append", help="explicit step for 'map', e.g. down:3,4,1,5")
    m.add_argument("--k", type=int, default=1)
    m.set_defaults(func=cmd_moon)

    e = sub.add_parser("ehrhart", help="lattice-point counts of dilates")
    e.add_argument("--moon", required=True)
    e.add_argument("--max-k", type=int, required=True)
    e.add_argument("--oracle", action="store_true")
    e.add_argument("--check-collapse", action="store_true")
    e.add_argument("--check-syt", action="store_true")
    e.set_defaults(func=cmd_ehrhart)

    v = sub.add_parser("verify", help="run a randomized property suite")
    v.add_argument("property", nargs="?", help="property name, or 'all'")
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--shape", help="r,s (random shapes up to 4x4 when omitted)")
    v.add_argument("--realm", help="PL or Birational (both when omitted)")
    v.add_argument("--list", action="store_true")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="draw a labeling, polyomino or filling")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--format", choices=["ascii", "tikz"], default="ascii")
    r.set_defaults(func=cmd_render)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (OSError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (MoonError, IllegalShift, OracleTooLarge, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
