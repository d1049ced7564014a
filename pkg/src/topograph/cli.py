"""``topograph`` command-line front end.

Exit codes: 0 success, 1 domain error (a violated precondition), 2 parse
or usage error.  With ``--json`` every command prints one JSON object that
carries a ``command`` field.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import graphio
from .core import Graph, GraphError, classify, validate
from .dual import dual, isomorphic, iterate, relative_dual
from .groupoid import GroupoidError, isotropy, orbit
from .ktheory import k_groups
from .paths import boundary_finite, enumerate_paths, format_path, lassos, parse_path
from .unital import check_y_compactness, is_unital
from .verify import GenConfig, run_suite


class UsageError(Exception):
    pass


def _read_graph(source: str | None, stdin) -> Graph:
    text = stdin.read() if source in (None, "-") else open(source, encoding="utf-8").read()
    g = graphio.loads(text)
    problems = validate(g)
    if problems:
        raise GraphError("invalid graph: " + "; ".join(str(p) for p in problems))
    return g


def _emit(args, payload: dict, text: str, out) -> None:
    if args.json:
        out.write(json.dumps({"command": args.command, **payload}, ensure_ascii=False, sort_keys=True) + "\n")
    else:
        out.write(text if text.endswith("\n") or not text else text + "\n")


def _k_text(k0, k1) -> str:
    return f"K0 = {k0}, K1 = {k1}"


def cmd_classify(args, g: Graph, out):
    c = classify(g)
    rows = [{"id": v, "class": c[v].value, "receivers": c.receivers[v].to_json()} for v in g.vertices]
    text = "\n".join(f"{v}: {c[v].value} (receives {c.receivers[v]})" for v in g.vertices)
    _emit(args, {"vertices": rows}, text, out)


def _map_payload(h: Graph, m) -> dict:
    return {"graph": graphio.dumps(h), "vertex_map": dict(sorted(m.vertex_map.items())),
            "edge_map": dict(sorted(m.edge_map.items()))}


def cmd_dual(args, g: Graph, out):
    h, m = dual(g) if g.relative is None else relative_dual(g, g.relative)
    _emit(args, _map_payload(h, m), graphio.dumps(h), out)


def cmd_iterate(args, g: Graph, out):
    if args.k < 0:
        raise UsageError("--k must be nonnegative")
    h, m = iterate(g, args.k, _relative(args, g))
    _emit(args, _map_payload(h, m), graphio.dumps(h), out)


def cmd_paths(args, g: Graph, out):
    found = [format_path(p) for n in range(args.max_len + 1) for p in enumerate_paths(g, n)]
    _emit(args, {"paths": found}, "\n".join(found), out)


def cmd_boundary(args, g: Graph, out):
    found = [format_path(p) for p in boundary_finite(g, args.max_len)]
    found += [format_path(x) for x in lassos(g, args.max_len, args.max_cycle)]
    _emit(args, {"paths": found}, "\n".join(found), out)


def cmd_orbit(args, g: Graph, out):
    x = parse_path(args.path, g)
    found = [format_path(y) for y in orbit(g, x, args.bound)]
    _emit(args, {"path": format_path(x), "orbit": found}, "\n".join(found), out)


def cmd_isotropy(args, g: Graph, out):
    x = parse_path(args.path, g)
    iso = isotropy(x)
    _emit(args, {"path": format_path(x), "period": iso.period}, str(iso), out)


def _relative(args, g: Graph):
    if getattr(args, "relative", None) is not None:
        return frozenset(v for v in args.relative.split(",") if v)
    return g.relative


def cmd_ktheory(args, g: Graph, out):
    if args.toeplitz and args.relative is not None:
        raise UsageError("--toeplitz and --relative are exclusive")
    u = frozenset() if args.toeplitz else _relative(args, g)
    k0, k1 = k_groups(g, u)
    _emit(args, {"K0": k0.to_json(), "K1": k1.to_json()}, _k_text(k0, k1), out)


def cmd_unital(args, g: Graph, out):
    if g.escape and not args.symbolic:
        raise GraphError("graph declares 'escape omega'; pass --symbolic to reason about it")
    ok, report = is_unital(g)
    lines = [str(report),
             f"  undefined edges: {report.undefined_edges}",
             f"  escaping ranges: {report.escaping}",
             f"  never received:  {report.never_received}",
             f"  verdict:         {report.verdict.value}"]
    payload = report.to_json()
    if not g.is_total:
        payload["y_compact"] = check_y_compactness(g)
        lines.append(f"  Y compact:       {str(payload['y_compact']).lower()}")
    _emit(args, payload, "\n".join(lines), out)


def cmd_iso(args, stdin, out):
    if args.a == "-" and args.b == "-":
        raise UsageError("only one of the two graphs can come from stdin")
    a, b = _read_graph(args.a, stdin), _read_graph(args.b, stdin)
    iso = isomorphic(a, b)
    payload = {"isomorphic": iso is not None}
    if iso is not None:
        payload["vertex_map"] = dict(sorted(iso.vertex_map.items()))
        payload["edge_map"] = dict(sorted(iso.edge_map.items()))
    _emit(args, payload, "isomorphic" if iso else "not isomorphic", out)


def cmd_check(args, out) -> int:
    cfg = GenConfig(seed=args.seed, max_vertices=args.max_vertices, max_edges=args.max_edges,
                    allow_partial=args.partial, allow_omega=args.omega, allow_relative=args.relative_sets)
    report = run_suite(cfg, args.cases, jobs=args.jobs, groupoid_bound=args.groupoid_bound)
    if args.json:
        out.write(json.dumps({"command": "check", **report.to_json()}, ensure_ascii=False, sort_keys=True) + "\n")
    else:
        out.write(report.render())
    return 0 if report.passed else 1


GRAPH_COMMANDS = {
    "classify": cmd_classify, "dual": cmd_dual, "iterate": cmd_iterate, "paths": cmd_paths,
    "boundary": cmd_boundary, "orbit": cmd_orbit, "isotropy": cmd_isotropy,
    "ktheory": cmd_ktheory, "unital": cmd_unital,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print JSON")
    common.add_argument("--input", metavar="FILE", default=argparse.SUPPRESS, help="graph file (default stdin)")

    parser = argparse.ArgumentParser(prog="topograph", parents=[common],
                                     description="Dual graphs, boundary paths, K-groups and unitality.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("classify", parents=[common], help="regular/singular vertices")
    sub.add_parser("dual", parents=[common], help="the dual graph, in the text format")
    p = sub.add_parser("iterate", parents=[common], help="the k-th dual")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--relative", metavar="V1,V2", help="iterate the relative dual for this U")
    p = sub.add_parser("paths", parents=[common], help="all paths up to a length")
    p.add_argument("--max-len", type=int, required=True)
    p = sub.add_parser("boundary", parents=[common], help="boundary paths within bounds")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--max-cycle", type=int, required=True)
    p = sub.add_parser("orbit", parents=[common], help="tail-equivalence class of a path")
    p.add_argument("path")
    p.add_argument("--bound", type=int, required=True)
    p = sub.add_parser("isotropy", parents=[common], help="isotropy group of a path")
    p.add_argument("path")
    p = sub.add_parser("ktheory", parents=[common], help="K0 and K1")
    p.add_argument("--relative", metavar="V1,V2", help="the set U (empty string for U = ∅)")
    p.add_argument("--toeplitz", action="store_true", help="use U = ∅")
    p = sub.add_parser("unital", parents=[common], help="decide unitality")
    p.add_argument("--symbolic", action="store_true", help="accept graphs declaring 'escape omega'")
    p = sub.add_parser("iso", parents=[common], help="graph isomorphism test")
    p.add_argument("a", help="graph file or -")
    p.add_argument("b", help="graph file or -")
    p = sub.add_parser("check", parents=[common], help="randomized property suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--partial", action="store_true")
    p.add_argument("--omega", action="store_true")
    p.add_argument("--relative-sets", action="store_true", help="attach random relative sets")
    p.add_argument("--max-vertices", type=int, default=6)
    p.add_argument("--max-edges", type=int, default=10)
    p.add_argument("--groupoid-bound", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.json = getattr(args, "json", False)
    args.input = getattr(args, "input", None)
    try:
        if args.command == "check":
            return cmd_check(args, out)
        if args.command == "iso":
            cmd_iso(args, stdin, out)
            return 0
        g = _read_graph(args.input, stdin)
        GRAPH_COMMANDS[args.command](args, g, out)
        return 0
    except (GraphError, GroupoidError) as exc:
        err.write(f"topograph: error: {exc}\n")
        return 1
    except (graphio.ParseError, UsageError, ValueError) as exc:
        err.write(f"topograph: parse error: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"topograph: error: {exc}\n")
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
