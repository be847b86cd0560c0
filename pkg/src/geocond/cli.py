"""Command-line front end.

Exit codes: 0 success, 1 unreadable input or bad usage, 2 when an
operation's precondition fails for the given input.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import sys
from pathlib import Path

import numpy as np

from . import io
from .classical import (
    conjunctive_condition,
    credal_condition,
    dempster_condition,
    dempster_interval,
    disjunctive_condition,
    nested_chain_check,
    suppes_condition,
)
from .combination import conjunctive_combine, dempster_sum, disjunctive_combine
from .core import Frame, MassFunction, as_event, random_mass, validate
from .errors import BeliefError, DomainError, FormatError, FrameMismatch, InvalidMass, TooManyVertices
from .induced import conditioning_induced_combine
from .lp import (
    LinfPolytope,
    l1_condition,
    l2_condition,
    l2_condition_belief_space,
    linf_barycentre_belief_space,
    linf_condition,
)
from .oracle import sampled_nonimprovement
from .plot import ternary_scene

CONDITION_RULES = (
    "dempster",
    "credal",
    "suppes",
    "conjunctive",
    "disjunctive",
    "l1",
    "l2",
    "linf",
    "l2-belief",
    "linf-bary-belief",
)
COMBINE_RULES = ("dempster", "conjunctive", "disjunctive", "induced-l2", "induced-suppes")
COMPARE_COLUMNS = ("disjunctive", "credal", "dempster", "conjunctive", "suppes")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load(args, path=None):
    return io.read_mass_file(path or args.input, tolerance=args.tolerance)


def _event(m, args) -> int:
    return as_event(m.frame, args.event)


def _interval_doc(frame: Frame, lower, upper, decimals=io.DECIMALS) -> dict:
    return {frame.key(a): [io._fmt(lower[a], decimals), io._fmt(upper[a], decimals)] for a in range(1, frame.size)}


def _set_doc(result, samples: int, seed) -> dict:
    frame = result.frame
    doc = {"kind": result.kind, "distance": io._fmt(result.distance)}
    if isinstance(result, LinfPolytope):
        doc["vertex_count"] = result.vertex_count
        try:
            verts = [(None, v) for v in result.vertices]
        except TooManyVertices:
            verts = [(None, v) for v in result.sample_vertices(samples, seed=seed)]
            doc["sampled"] = True
    else:
        verts = list(zip(result.keys, result.vertices))
    doc["vertices"] = [
        {**({"key": frame.key(k)} if k is not None else {}), "admissible": v.is_admissible, "masses": io.masses_field(v)}
        for k, v in verts
    ]
    doc["barycenter"] = io.masses_field(result.barycenter)
    return doc


def cmd_condition(args) -> str:
    m = _load(args)
    A = _event(m, args)
    rule = args.rule
    head = {"rule": rule, "event": m.frame.key(A)}
    if rule == "dempster":
        out = dempster_condition(m, A)
        return io.dumps(io.mass_document(out, **head))
    if rule in ("credal", "suppes"):
        res = credal_condition(m, A) if rule == "credal" else suppes_condition(m, A)
        doc = {"frame": list(m.frame.names), "decimals": io.DECIMALS, **head}
        if res.mass is not None:
            doc["masses"] = io.masses_field(res.mass)
        doc["intervals"] = _interval_doc(m.frame, res.lower, res.upper)
        return io.dumps(doc)
    if rule in ("l1", "linf"):
        res = l1_condition(m, A) if rule == "l1" else linf_condition(m, A)
        doc = {"frame": list(m.frame.names), "decimals": io.DECIMALS, **head, **_set_doc(res, args.samples, args.seed)}
        return io.dumps(doc)
    op = {
        "conjunctive": conjunctive_condition,
        "disjunctive": disjunctive_condition,
        "l2": l2_condition,
        "l2-belief": l2_condition_belief_space,
        "linf-bary-belief": linf_barycentre_belief_space,
    }[rule]
    out = op(m, A)
    extra = {}
    if hasattr(out, "is_admissible"):
        extra["admissible"] = out.is_admissible
    return io.dumps(io.mass_document(out, **head, **extra))


def compare_table(m: MassFunction, A: int) -> dict:
    """Per-event (bel, pl) under each classical operator, "undefined" where a precondition fails."""
    frame = m.frame
    columns = {}
    makers = {
        "disjunctive": lambda: _bel_pl(disjunctive_condition(m, A)),
        "credal": lambda: _pair(credal_condition(m, A)),
        "dempster": lambda: _pair(dempster_interval(m, A)),
        "conjunctive": lambda: _bel_pl(conjunctive_condition(m, A)),
        "suppes": lambda: _pair(suppes_condition(m, A)),
    }
    reasons = {}
    for name in COMPARE_COLUMNS:
        try:
            columns[name] = makers[name]()
        except DomainError as exc:
            columns[name] = None
            reasons[name] = str(exc)
    rows = []
    for a in range(1, frame.size):
        row = {"event": frame.key(a)}
        for name in COMPARE_COLUMNS:
            col = columns[name]
            row[name] = "undefined" if col is None else [io._fmt(col[0][a]), io._fmt(col[1][a])]
        rows.append(row)
    try:
        report = nested_chain_check(m, A)
        chain = {
            "ok": report.ok,
            "worst_slack": report.worst_slack,
            "worst_link": report.worst_link,
            "worst_event": frame.key(report.worst_event),
        }
    except DomainError as exc:
        chain = {"ok": "undefined", "reason": str(exc)}
    doc = {"frame": list(frame.names), "event": frame.key(A), "columns": list(COMPARE_COLUMNS), "rows": rows, "chain": chain}
    if reasons:
        doc["undefined"] = reasons
    return doc


def _pair(res):
    return res.lower, res.upper


def _bel_pl(m):
    return m.belief().values, m.plausibility().values


def cmd_compare(args) -> str:
    m = _load(args)
    doc = compare_table(m, _event(m, args))
    if args.format == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("event", "rule", "bel", "pl"))
        for row in doc["rows"]:
            for name in COMPARE_COLUMNS:
                cell = row[name]
                w.writerow((row["event"], name, *(("undefined", "undefined") if cell == "undefined" else cell)))
        return buf.getvalue()
    return io.dumps(doc)


def cmd_plot_ternary(args) -> str:
    m = _load(args)
    scene = ternary_scene(m, args.event, belief_space=args.belief_space)
    if args.csv:
        Path(args.csv).write_text(scene.to_csv(), encoding="utf-8")
    if args.svg:
        Path(args.svg).write_text(scene.to_svg(), encoding="utf-8")
    return scene.to_svg() if args.format == "svg" else scene.to_csv()


def cmd_random(args) -> str:
    frame = Frame.of_size(args.n)
    return io.write_mass(random_mass(frame, args.k_focal, args.seed))


def cmd_combine(args) -> str:
    m1 = _load(args, args.input)
    m2 = _load(args, args.other)
    rule = args.rule
    if rule == "dempster":
        out, report = dempster_sum(m1, m2)
        return io.dumps(io.mass_document(out, rule=rule, conflict=io._fmt(report.kappa)))
    if rule == "conjunctive":
        out = conjunctive_combine(m1, m2)
    elif rule == "disjunctive":
        out = disjunctive_combine(m1, m2)
    else:
        out = conditioning_induced_combine(rule.split("-", 1)[1], m1, m2)
    return io.dumps(io.mass_document(out, rule=rule))


def cmd_check(args) -> str:
    doc = io.loads(Path(args.input).read_text(encoding="utf-8"))
    frame = io.parse_frame(doc)
    values = io._values(frame, doc.get("masses", {}))
    diag = validate(frame, values)
    return diag.describe(frame) + "\n"


def cmd_verify(args) -> str:
    """Probe the L1, L2 and L-inf conditionals of the input with the sampling oracle."""
    m = _load(args)
    A = _event(m, args)
    lines = []
    for p, cands in ((1, l1_condition(m, A)), (2, l2_condition(m, A)), (np.inf, linf_condition(m, A))):
        r = sampled_nonimprovement(m, A, p, cands, n_samples=args.samples, seed=args.seed)
        verdict = "pass" if r.ok else "FAIL"
        lines.append(f"L{p}: {verdict} claimed={r.claimed:.6f} worst_margin={r.worst_margin:.3e} checked={r.checked}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="geocond", description="Geometric and classical conditioning of belief functions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, event=True):
        p.add_argument("input", help="mass-function JSON document")
        if event:
            p.add_argument("--event", required=True, help='conditioning event, e.g. "x y"')
        p.add_argument("--tolerance", type=float, default=None, help="sum-to-one slack when reading input")

    p = sub.add_parser("condition", help="condition a mass function on an event")
    common(p)
    p.add_argument("--rule", required=True, choices=CONDITION_RULES)
    p.add_argument("--samples", type=int, default=1000, help="vertices to sample when a polytope is too large to list")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text",), default="text")
    p.set_defaults(func=cmd_condition)

    p = sub.add_parser("compare", help="table of classical conditionals and the nested-chain verdict")
    common(p)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("plot-ternary", help="ternary scene of the L1, L2 and L-inf conditionals")
    common(p)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--csv", help="also write the CSV here")
    p.add_argument("--svg", help="also write the SVG here")
    p.add_argument("--belief-space", action="store_true", help="add the belief-space L2 and L-inf barycentre points")
    p.set_defaults(func=cmd_plot_ternary)

    p = sub.add_parser("random", help="emit a random mass function")
    p.add_argument("n", type=int, help="frame size")
    p.add_argument("k_focal", type=int, help="number of focal elements")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text",), default="text")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("combine", help="combine two mass functions")
    p.add_argument("input")
    p.add_argument("other")
    p.add_argument("--rule", choices=COMBINE_RULES, default="dempster")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--format", choices=("text",), default="text")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("check", help="validate a mass-function document")
    p.add_argument("input")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="sampling check of the geometric conditionals")
    common(p)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except DomainError as exc:
        print(f"geocond: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (FormatError, InvalidMass, FrameMismatch, OSError, ValueError, BeliefError) as exc:
        print(f"geocond: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
