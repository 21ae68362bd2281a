"""Command-line front end.

Exit status: 0 when the analysis ran and the property holds, 1 when it ran
and the property fails, 2 on usage or input errors, 3 when a resource cap
was hit.  JSON goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .automata import ResourceLimitError
from .conservation import charge_oracle, forbidden_nc_windows, is_distribution_nc, nc_sft
from .debruijn import build_debruijn, build_product
from .dynamics import classify
from .injectivity import is_distribution_injective, verify_witness
from .rules import NotLinearError, RuleFileError, load_rule_set
from .simulation import space_time
from .surjectivity import (
    DEFAULT_MAX_STATES,
    brute_force_pattern_surjective,
    is_distribution_surjective,
    is_pattern_surjective,
    unreachable_word,
)
from .words import parse_configuration, parse_distribution

SCHEMA = 1
HOLDS, FAILS, USAGE, CAPPED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(payload: dict, out) -> None:
    out.write(json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True) + "\n")


def _write(text: str, path: str | None, out) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def _rules(args):
    return load_rule_set(args.rules)


def _dist(args, rule_set):
    try:
        return parse_distribution(args.dist, rule_set)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad distribution literal: {exc}") from None


def _window(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        a, b = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like A..B, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError("window needs A <= B")
    return a, b


# -- subcommands ---------------------------------------------------------------


def cmd_rules_validate(args, out):
    rs = _rules(args)
    _emit(
        {
            "valid": True,
            "alphabet": rs.s,
            "radius": rs.radius,
            "rules": [
                {"name": f.name, "original_radius": f.original_radius, "linear": f.is_linear}
                for f in rs.rules
            ],
        },
        out,
    )
    return HOLDS


def cmd_graph(args, out):
    rs = _rules(args)
    g = build_debruijn(rs) if args.kind == "debruijn" else build_product(rs)
    if args.format == "dot":
        _write(g.to_dot(), args.output, out)
    elif args.format == "csv":
        _write(g.to_csv(), args.output, out)
    else:
        _emit({"graph": args.kind, "nodes": g.n_nodes, "edges": len(g.edges)}, out)
    return HOLDS


def cmd_surj_pattern(args, out):
    rs = _rules(args)
    try:
        psi = tuple(rs.index(n) for n in args.pattern.split())
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    if not psi:
        raise UsageError("empty pattern")
    onto = is_pattern_surjective(rs, psi)
    payload = {
        "verdict": "surjective" if onto else "not-surjective",
        "pattern": args.pattern.split(),
        "unreachable_word": None if onto else list(unreachable_word(rs, psi)),
    }
    if args.brute_force:
        payload["brute_force"] = brute_force_pattern_surjective(rs, psi)
    _emit(payload, out)
    return HOLDS if onto else FAILS


def cmd_surj_dist(args, out):
    rs = _rules(args)
    report = is_distribution_surjective(_dist(args, rs), max_states=args.max_states)
    _emit(report.as_dict(), out)
    return HOLDS if report.surjective else FAILS


def cmd_inj_dist(args, out):
    rs = _rules(args)
    theta = _dist(args, rs)
    report = is_distribution_injective(theta)
    payload = report.as_dict()
    if report.witness is not None:
        payload["witness_verified"] = verify_witness(theta, *report.witness)
    _emit(payload, out)
    return HOLDS if report.injective else FAILS


def cmd_nc_check(args, out):
    rs = _rules(args)
    theta = _dist(args, rs)
    report = is_distribution_nc(theta)
    payload = report.as_dict()
    if args.oracle is not None:
        check = charge_oracle(theta, args.oracle)
        payload["oracle"] = {
            "confirmed": check.confirmed,
            "checked": check.checked,
            "violation": check.violation.as_dict() if check.violation else None,
        }
    _emit(payload, out)
    return HOLDS if report.conserving else FAILS


def cmd_nc_sft(args, out):
    rs = _rules(args)
    sft = nc_sft(rs)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(sft.to_dot())
    _emit(
        {
            "vertices": len(sft.vertices),
            "edges": len(sft.edges),
            "empty": sft.is_empty,
        },
        out,
    )
    return FAILS if sft.is_empty else HOLDS


def cmd_nc_forbidden(args, out):
    rs = _rules(args)
    forbidden = forbidden_nc_windows(rs)
    _emit({"forbidden": forbidden.as_list(), "count": len(forbidden)}, out)
    return HOLDS


def cmd_dynamics(args, out):
    rs = _rules(args)
    theta = _dist(args, rs)
    try:
        report = classify(theta, args.nmax, empirical_steps=args.empirical)
    except NotLinearError as exc:
        raise UsageError(str(exc)) from None
    _emit(report.as_dict(), out)
    return HOLDS if report.equicontinuous else FAILS


def cmd_simulate(args, out):
    rs = _rules(args)
    theta = _dist(args, rs)
    try:
        x = parse_configuration(args.config, rs.s)
    except ValueError as exc:
        raise UsageError(f"bad configuration literal: {exc}") from None
    a, b = args.window
    diagram = space_time(theta, x, a, b, args.steps)
    if args.format == "pgm":
        _write(diagram.to_pgm(), args.output, out)
    elif args.format == "csv":
        _write(diagram.to_csv(), args.output, out)
    else:
        _emit({"window": [a, b], "steps": args.steps, "rows": diagram.rows.tolist()}, out)
    return HOLDS


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nuca", description="Analyze and simulate non-uniform cellular automata."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_rules(p):
        p.add_argument("--rules", required=True, help="rule-set file")
        return p

    def with_dist(p):
        with_rules(p)
        p.add_argument("--dist", required=True, help="distribution literal")
        return p

    rules = sub.add_parser("rules").add_subparsers(dest="action", required=True)
    with_rules(rules.add_parser("validate")).set_defaults(func=cmd_rules_validate)

    graph = sub.add_parser("graph").add_subparsers(dest="kind", required=True)
    for kind in ("debruijn", "product"):
        p = with_rules(graph.add_parser(kind))
        p.add_argument("--format", choices=("dot", "csv", "json"), default="dot")
        p.add_argument("--output", "-o")
        p.set_defaults(func=cmd_graph)

    surj = sub.add_parser("surjectivity").add_subparsers(dest="action", required=True)
    p = with_rules(surj.add_parser("pattern"))
    p.add_argument("--pattern", required=True, help="space-separated rule names")
    p.add_argument("--brute-force", action="store_true", help="also run the enumeration oracle")
    p.set_defaults(func=cmd_surj_pattern)
    p = with_dist(surj.add_parser("dist"))
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    p.set_defaults(func=cmd_surj_dist)

    inj = sub.add_parser("injectivity").add_subparsers(dest="action", required=True)
    with_dist(inj.add_parser("dist")).set_defaults(func=cmd_inj_dist)

    nc = sub.add_parser("conservation").add_subparsers(dest="action", required=True)
    p = with_dist(nc.add_parser("check"))
    p.add_argument("--oracle", type=int, metavar="W", help="also run the charge oracle at width W")
    p.set_defaults(func=cmd_nc_check)
    p = with_rules(nc.add_parser("sft"))
    p.add_argument("--dot", help="write the SFT graph to this DOT file")
    p.set_defaults(func=cmd_nc_sft)
    with_rules(nc.add_parser("forbidden")).set_defaults(func=cmd_nc_forbidden)

    dyn = sub.add_parser("dynamics").add_subparsers(dest="action", required=True)
    p = with_dist(dyn.add_parser("classify"))
    p.add_argument("--nmax", type=int)
    p.add_argument("--empirical", type=int, metavar="T", help="add perturbation probes of T steps")
    p.set_defaults(func=cmd_dynamics)

    p = with_dist(sub.add_parser("simulate"))
    p.add_argument("--config", required=True, help="configuration literal")
    p.add_argument("--steps", type=int, default=16)
    p.add_argument("--window", type=_window, default=(-16, 16), help="A..B")
    p.add_argument("--format", choices=("pgm", "csv", "json"), default="json")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_simulate)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else HOLDS
    try:
        return args.func(args, out)
    except ResourceLimitError as exc:
        err.write(f"nuca: resource cap exceeded: {exc}\n")
        return CAPPED
    except (RuleFileError, UsageError, OSError) as exc:
        err.write(f"nuca: {exc}\n")
        return USAGE


def main() -> None:
    sys.exit(run())
