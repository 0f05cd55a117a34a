"""Command-line front end.

Every verb reads JSON files, runs one library operation and prints JSON
(or an aligned table with ``--table``).  Exit status: 0 on success, 1 when
the operation is undefined on the given inputs, 2 for unreadable or
invalid inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import io
from .errors import EvidenceError, InvalidInput, UndefinedOperation
from .frame import Frame, outer_reduction
from .mass import MassDistribution, project, tables, vacuous, vacuous_extension
from .rules import compatibility_to_matrix, is_irregular, rules_to_matrix, tweety
from .specialization import (
    apply,
    conditional_matrix,
    is_monotonic,
    is_specialization,
    revision_matrix,
    strong_inclusion,
    violates_monotonicity,
    witness_flow,
)
from .tolerance import DEFAULT_EPSILON, MAX_EPSILON, MIN_EPSILON, epsilon
from .updating import condition, revise


def _parse_label(token: str) -> Any:
    if token.startswith("["):
        return tuple(json.loads(token))
    return token


def _event(frame: Frame, tokens: list[str]) -> int:
    return frame.subset(_parse_label(t) for t in tokens)


def _mass(path: str) -> MassDistribution:
    return io.mass_from_json(io.load(path))


def _frame(path: str) -> Frame:
    obj = io.load(path)
    # accept a bare frame or any document that embeds one
    if isinstance(obj, dict) and "frame" in obj:
        obj = obj["frame"]
    return io.frame_from_json(obj)


def _triple(frame: Frame, triple: tuple[int, int, int] | None) -> dict | None:
    if triple is None:
        return None
    a, b, c = triple
    return {k: io.subset_to_json(frame, x) for k, x in zip("ABC", (a, b, c))}


# -- verbs --------------------------------------------------------------------


def cmd_tables(args) -> dict:
    return io.tables_to_json(tables(_mass(args.mass)))


def _update(args, op: Callable) -> dict:
    m = _mass(args.mass)
    out = op(m, _event(m.frame, args.event))
    doc = io.mass_to_json(out.result)
    doc["discarded"] = out.discarded
    if op is revise:
        doc["belief_vanishes"] = out.belief_vanishes
    return doc


def cmd_condition(args) -> dict:
    return _update(args, condition)


def cmd_revise(args) -> dict:
    return _update(args, revise)


def cmd_apply(args) -> dict:
    m = _mass(args.mass)
    v = io.matrix_from_json(io.load(args.matrix))
    out = apply(m, v)
    doc = io.mass_to_json(out.result)
    doc["consistency"] = out.consistency
    return doc


def cmd_make_c(args) -> dict:
    frame = _frame(args.frame)
    return io.matrix_to_json(conditional_matrix(frame, _event(frame, args.event)))


def cmd_make_r(args) -> dict:
    frame = _frame(args.frame)
    return io.matrix_to_json(revision_matrix(frame, _event(frame, args.event)))


def cmd_check_spec(args) -> dict:
    return {"specialization": is_specialization(_mass(args.s), _mass(args.t))}


def cmd_check_strong(args) -> dict:
    return {"strong_inclusion": strong_inclusion(_mass(args.s), _mass(args.t))}


def cmd_witness(args) -> dict:
    return io.flow_to_json(witness_flow(_mass(args.s), _mass(args.t)))


def cmd_check_monotonic(args) -> dict:
    v = io.matrix_from_json(io.load(args.matrix))
    report = is_monotonic(v)
    return {"monotonic": report.monotonic, "counterexample": _triple(v.frame, report.counterexample)}


def cmd_project(args) -> dict:
    r = io.refinement_from_json(io.load(args.refinement))
    return io.mass_to_json(project(r, io.mass_from_json(io.load(args.mass))))


def cmd_extend(args) -> dict:
    r = io.refinement_from_json(io.load(args.refinement))
    return io.mass_to_json(vacuous_extension(r, io.mass_from_json(io.load(args.mass))))


def cmd_compile_rules(args) -> dict:
    obj = io.load(args.rules)
    if args.frame:
        frame = _frame(args.frame)
    elif isinstance(obj, dict) and "frame" in obj:
        frame = io.frame_from_json(obj["frame"])
    else:
        raise InvalidInput("rules need a product frame: pass --frame or embed a 'frame' field")
    trigger = args.trigger or obj.get("trigger", "contains")
    return io.matrix_to_json(rules_to_matrix(frame, io.rules_from_json(obj), trigger=trigger))


def cmd_compile_compat(args) -> dict:
    r = io.relation_from_json(io.load(args.relation))
    doc = io.matrix_to_json(compatibility_to_matrix(r))
    irregular = is_irregular(r)
    doc["irregular"] = irregular.irregular
    if irregular.witness is not None:
        doc["irregularity_witness"] = [io.subset_to_json(r.x_frame, t) for t in irregular.witness]
    return doc


def cmd_tweety_demo(args) -> dict:
    tw = tweety()
    f = tw.fine
    birds = f.cylinder("animals", ["eagles", "penguins"])
    penguins = f.cylinder("animals", ["penguins"])
    fly = f.cylinder("flight", ["fly"])
    c, d = birds, birds & fly
    a, b = penguins, penguins & ~fly & f.full
    flows = []
    for src in (c, a):
        got = apply(MassDistribution(f, {src: 1.0}), tw.penguins_dont).result
        (dst,) = got.focal
        flows.append({"from": io.subset_to_json(f, src), "to": io.subset_to_json(f, dst), "mass": got[dst]})
    report = is_monotonic(tw.penguins_dont)
    return {
        "flows": flows,
        "monotonic": report.monotonic,
        "witness": {
            **_triple(f, (a, b, c)),
            "D": io.subset_to_json(f, d),
            "violates": violates_monotonicity(tw.penguins_dont, a, b, c),
        },
        "first_counterexample": _triple(f, report.counterexample),
        "coarse_monotonic": is_monotonic(tw.birds_fly).monotonic,
        "coarse_image_of_C": io.subset_to_json(tw.coarse, outer_reduction(tw.refinement, c)),
        "vacuous_fine_after_rules": io.mass_to_json(apply(vacuous(f), tw.penguins_dont).result)["masses"],
    }


VERBS: dict[str, tuple[Callable, str]] = {
    "tables": (cmd_tables, "dense Bel/Pl/Q tables of a mass distribution"),
    "condition": (cmd_condition, "condition a mass distribution on an event"),
    "revise": (cmd_revise, "revise a mass distribution on an event"),
    "apply": (cmd_apply, "apply a specialization matrix"),
    "make-c": (cmd_make_c, "build the conditioning matrix of an event"),
    "make-r": (cmd_make_r, "build the revision matrix of an event"),
    "check-spec": (cmd_check_spec, "is s a specialization of t"),
    "check-strong": (cmd_check_strong, "is s strongly included in t"),
    "witness": (cmd_witness, "flow plan turning t into s"),
    "check-monotonic": (cmd_check_monotonic, "monotonicity of a specialization matrix"),
    "project": (cmd_project, "project a fine mass distribution to the coarse frame"),
    "extend": (cmd_extend, "vacuous extension of a coarse mass distribution"),
    "compile-rules": (cmd_compile_rules, "compile prioritized rules to a matrix"),
    "compile-compat": (cmd_compile_compat, "compile a compatibility relation to a matrix"),
    "tweety-demo": (cmd_tweety_demo, "the birds and penguins example"),
}


def _epsilon_arg(text: str) -> float:
    value = float(text)
    if not MIN_EPSILON <= value <= MAX_EPSILON:
        raise argparse.ArgumentTypeError(f"must lie in [{MIN_EPSILON}, {MAX_EPSILON}]")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table", action="store_true", help="aligned text instead of JSON")
    common.add_argument("--epsilon", type=_epsilon_arg, default=DEFAULT_EPSILON)
    parser = argparse.ArgumentParser(prog="massflow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    for name, (func, help_text) in VERBS.items():
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(func=func)
        if name in ("tables", "condition", "revise", "apply", "project", "extend"):
            p.add_argument("--mass", required=True)
        if name in ("condition", "revise", "make-c", "make-r"):
            p.add_argument("--event", nargs="+", required=True, metavar="LABEL")
        if name in ("make-c", "make-r"):
            p.add_argument("--frame", required=True)
        if name in ("apply", "check-monotonic"):
            p.add_argument("--matrix", required=True)
        if name in ("check-spec", "check-strong", "witness"):
            p.add_argument("--s", required=True)
            p.add_argument("--t", required=True)
        if name in ("project", "extend"):
            p.add_argument("--refinement", required=True)
        if name == "compile-rules":
            p.add_argument("--rules", required=True)
            p.add_argument("--frame")
            p.add_argument("--trigger", choices=["contains", "meets"])
        if name == "compile-compat":
            p.add_argument("--relation", required=True)
    return parser


def _cell(x: Any) -> str:
    if isinstance(x, list):
        # a subset; its members are labels or label arrays (product cells)
        return "{" + ", ".join(
            "(" + ",".join(map(str, v)) + ")" if isinstance(v, list) else str(v) for v in x
        ) + "}"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def render_table(doc: dict) -> str:
    """Aligned plain-text view of a command result."""
    lines: list[str] = []
    for key, value in doc.items():
        if key == "frame":
            continue
        if isinstance(value, list) and value and isinstance(value[0], dict):
            header = list(value[0])
            body = [[_cell(row.get(h)) for h in header] for row in value]
            widths = [max(len(h), *(len(r[i]) for r in body)) for i, h in enumerate(header)]
            lines.append(f"{key}:")
            lines.append("  " + "  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
            for r in body:
                lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            for k, v in value.items():
                lines.append(f"  {k}: {_cell(v)}")
        else:
            lines.append(f"{key}: {_cell(value)}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with epsilon(args.epsilon):
            doc = args.func(args)
    except UndefinedOperation as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (EvidenceError, OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render_table(doc) if args.table else io.dumps(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
