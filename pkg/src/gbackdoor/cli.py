"""Command-line front end: ``gbackdoor <command> -g GRAPH ...``.

Exit codes: 0 when the criterion holds or a set was found, 1 when it fails
or no set exists, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .criterion import check_generalized_backdoor
from .gaussian import validate_seed
from .graph import GraphError, GraphKind, definite_status_paths, format_path, read_graph, serialize_graph
from .oracle import enumerate_cpdag_members
from .search import NoBackdoorSetError, construct_representative, find_backdoor_set, minimal_backdoor_sets
from .separation import d_sep_set
from .visibility import back_door_paths, visible_edges

SCHEMA = 1
EFFECT_TOL = 1e-8


class UsageError(Exception):
    pass


def fmt_set(s) -> str:
    return "{" + ", ".join(sorted(s)) + "}"


def _vertex_list(text: str) -> list:
    return [v.strip() for v in text.split(",") if v.strip()]


def _single(text: str, flag: str) -> str:
    vs = _vertex_list(text)
    if len(vs) != 1:
        raise UsageError(f"{flag} takes exactly one vertex")
    return vs[0]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, out):
    g = read_graph(args.graph)
    x, y, w = _vertex_list(args.x), _vertex_list(args.y), _vertex_list(args.w)
    rep = check_generalized_backdoor(g, x, y, w)
    doc = {"schema": SCHEMA, "x": sorted(x), "y": sorted(y), "w": sorted(w)}
    doc.update(rep.to_dict())
    out.write(_dump(doc) + "\n")
    return 0 if rep.verdict else 1


def cmd_find(args, out):
    g = read_graph(args.graph)
    x, y = _single(args.x, "-x"), _single(args.y, "-y")
    res = find_backdoor_set(g, x, y)
    minimal = None
    if args.minimal and res.exists:
        minimal = minimal_backdoor_sets(g, x, y)
    if args.json:
        rep = res.representative
        doc = {
            "schema": SCHEMA,
            "x": x,
            "y": y,
            "exists": res.exists,
            "set": sorted(res.backdoor_set) if res.exists else None,
            "failure": res.failure,
            "dsep": sorted(res.dsep),
            "possible_descendants": sorted(res.possible_descendants),
            "intersection": sorted(res.intersection),
            "R": serialize_graph(rep.R),
            "R_lower": serialize_graph(rep.R_lower),
        }
        if args.minimal:
            doc["minimal"] = [sorted(m) for m in minimal] if minimal is not None else None
        out.write(_dump(doc) + "\n")
    elif not res.exists:
        if res.failure == "adjacent":
            out.write(f"NONE (adjacent: {y} in adj({x}, R_lower))\n")
        else:
            out.write(f"NONE (intersection: {fmt_set(res.intersection)})\n")
    elif minimal is not None:
        for m in minimal:
            out.write(fmt_set(m) + "\n")
    else:
        out.write(fmt_set(res.backdoor_set) + "\n")
    return 0 if res.exists else 1


def cmd_dsep(args, out):
    g = read_graph(args.graph)
    x, y = _single(args.x, "-x"), _single(args.y, "-y")
    if args.lowered:
        g = construct_representative(g, x).R_lower
    elif g.kind in (GraphKind.CPDAG, GraphKind.PAG):
        raise UsageError("D-SEP needs a DAG or MAG; pass --lowered to use the representative")
    out.write(fmt_set(d_sep_set(g, x, y)) + "\n")
    return 0


def cmd_visible(args, out):
    g = read_graph(args.graph)
    for v in visible_edges(g):
        a, b = v.edge
        line = f"{a} --> {b}\t{'visible' if v.visible else 'invisible'}"
        if v.witness is not None:
            line += f"\twitness {v.witness}: {format_path(g, v.witness_path)}"
        out.write(line + "\n")
    return 0


def cmd_paths(args, out):
    g = read_graph(args.graph)
    x, y = _single(args.x, "-x"), _single(args.y, "-y")
    paths = back_door_paths(g, x, y) if args.backdoor else definite_status_paths(g, x, y)
    for p in paths:
        out.write(format_path(g, p) + "\n")
    return 0


def cmd_enumerate(args, out):
    g = read_graph(args.graph)
    if g.kind is not GraphKind.CPDAG:
        raise UsageError("enumerate needs a CPDAG")
    members = enumerate_cpdag_members(g)
    os.makedirs(args.output, exist_ok=True)
    for k, d in enumerate(members, 1):
        path = os.path.join(args.output, f"member_{k}.dag")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(serialize_graph(d))
        out.write(f"member_{k}.dag\n")
    return 0


def cmd_validate_gaussian(args, out):
    if args.seeds < 1:
        raise UsageError("--seeds must be positive")
    worst = 0.0
    for seed in range(args.start, args.start + args.seeds):
        r = validate_seed(args.kind, seed)
        worst = max(worst, r["max_deviation"])
        out.write(
            f"seed {seed}: n={r['n']} x={r['x']} y={r['y']} "
            f"valid_sets={r['valid_sets']} max_deviation={r['max_deviation']:.3e}\n"
        )
    ok = worst <= EFFECT_TOL
    out.write(f"{args.kind}: {args.seeds} seeds, max deviation {worst:.3e} ({'ok' if ok else 'FAIL'})\n")
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gbackdoor", description="Generalized back-door adjustment sets for causal graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, help, xy=True):
        s = sub.add_parser(name, help=help)
        s.add_argument("-g", "--graph", required=True, help="graph file")
        if xy:
            s.add_argument("-x", required=True, help="treatment vertex (comma-separated list for check)")
            s.add_argument("-y", required=True, help="outcome vertex")
        return s

    s = graph_cmd("check", "check the generalized back-door criterion (JSON)")
    s.add_argument("-w", default="", help="adjustment set, comma-separated; empty for none")
    s.set_defaults(func=cmd_check)

    s = graph_cmd("find", "construct a back-door set or explain why none exists")
    s.add_argument("--minimal", action="store_true", help="list inclusion-minimal sets instead")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_find)

    s = graph_cmd("dsep", "D-SEP(x, y) of a DAG or MAG")
    s.add_argument("--lowered", action="store_true", help="use the lowered representative graph")
    s.set_defaults(func=cmd_dsep)

    s = graph_cmd("visible", "classify every directed edge", xy=False)
    s.set_defaults(func=cmd_visible)

    s = graph_cmd("paths", "definite status paths between x and y")
    s.add_argument("--backdoor", action="store_true", help="only back-door paths")
    s.set_defaults(func=cmd_paths)

    s = graph_cmd("enumerate", "write the member DAGs of a CPDAG", xy=False)
    s.add_argument("-o", "--output", required=True, help="output directory")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("validate-gaussian", help="numeric check of the adjustment identity")
    s.add_argument("--kind", choices=["dag", "cpdag", "mag"], default="dag")
    s.add_argument("--seeds", type=int, default=20)
    s.add_argument("--start", type=int, default=0, help="first seed")
    s.set_defaults(func=cmd_validate_gaussian)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if getattr(args, "kind", None):
        args.kind = args.kind.upper()
    try:
        return args.func(args, out)
    except (GraphError, UsageError, NoBackdoorSetError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"gbackdoor {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
