"""Command-line front end.

Exit codes: 0 success, 1 domain failure (invalid graph, metric below
``--fail-below``), 2 usage or parse error.  Results go to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

from .core import GraphError
from .dot import export_dot
from .maps import MapSpec, class_diagram, compose_closure, relabel
from .metrics import ALL_OTHERS, METRICS, evaluate_metric
from .query import QuerySyntaxError, eval_query, parse_query
from .textformat import parse_document, serialize_graph
from .views import ViewSpec, view

OK, DOMAIN_ERROR, USAGE_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _split(text):
    if text is None:
        return None
    return [part.strip() for part in text.split(",") if part.strip()]


def _pairs(text, option):
    """Parse ``a=b,c=d`` into a dict."""
    result = {}
    for item in _split(text) or []:
        lhs, sep, rhs = item.partition("=")
        if not sep or not lhs or not rhs:
            raise UsageError(f"{option}: expected KEY=VALUE, got {item!r}")
        result[lhs.strip()] = rhs.strip()
    return result


def _compositions(text):
    """Parse ``x,y=z;...`` style items; pairs are joined by commas, so the
    flag is split on ``=`` boundaries: ``depend,depend=depend``."""
    result = {}
    if not text:
        return result
    for item in text.split(";"):
        lhs, sep, rhs = item.partition("=")
        parts = [p.strip() for p in lhs.split(",")]
        if not sep or len(parts) != 2 or not all(parts) or not rhs.strip():
            raise UsageError(f"--compose: expected X,Y=Z, got {item!r}")
        result[tuple(parts)] = rhs.strip()
    return result


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text, source=path)


def _emit_graph(g, args, out):
    if getattr(args, "dot", False):
        out.write(export_dot(g, label_edges=not args.no_edge_labels, cluster_by=args.cluster_by))
    else:
        out.write(serialize_graph(g))


def cmd_validate(args, out, err):
    doc = _load(args.file)
    report = doc.validate()
    if report:
        for v in report:
            print(f"{args.file}: {v}", file=err)
        return DOMAIN_ERROR
    g = doc.to_graph()
    print(f"OK: {len(g.vertices)} vertices, {len(g.edges)} edges", file=out)
    return OK


def cmd_view(args, out, err):
    g = _load(args.file).to_graph()
    spec = ViewSpec(_split(args.artifacts) or (), _split(args.traces) or ())
    _emit_graph(view(g, spec), args, out)
    return OK


def cmd_map(args, out, err):
    g = _load(args.file).to_graph()
    if args.preset == "class-diagram":
        if args.relabel or args.compose:
            raise UsageError("--preset cannot be combined with --relabel/--compose")
        result = class_diagram(g)
    else:
        if not args.relabel and not args.compose:
            raise UsageError("map needs --preset or at least one of --relabel/--compose")
        spec = MapSpec(_pairs(args.relabel, "--relabel"), _compositions(args.compose))
        result = compose_closure(relabel(g, spec.relabels), spec.compositions)
    _emit_graph(result, args, out)
    return OK


def cmd_metric(args, out, err):
    g = _load(args.file).to_graph()
    params = {}
    if args.name == "count_by_type":
        params["a"] = args.type
    elif args.name == "coupling":
        params.update(v=args.vertex, direction=args.direction or "both",
                      attr_filter=_split(args.types), trace_filter=_split(args.traces))
    elif args.name == "coverage":
        params.update(source_type=args.source, target_type=args.target or ALL_OTHERS,
                      trace_filter=_split(args.traces))
    elif args.name == "reachable_from":
        params.update(sources=_split(args.vertex), trace_filter=_split(args.traces))
    if any(value is None for key, value in params.items() if not key.endswith("filter")):
        raise UsageError(f"missing arguments for metric {args.name}")
    result = evaluate_metric(g, args.name, **params)
    print(result.format(), file=out)
    if args.fail_below is not None and result.value < args.fail_below:
        print(f"{result.name} {result.value} is below {args.fail_below}", file=err)
        return DOMAIN_ERROR
    return OK


def cmd_query(args, out, err):
    g = _load(args.file).to_graph()
    for v in sorted(eval_query(g, parse_query(args.expr))):
        print(v, file=out)
    return OK


def cmd_export(args, out, err):
    g = _load(args.file).to_graph()
    _emit_graph(g, args, out)
    return OK


def _add_graph_output(p):
    p.add_argument("--dot", action="store_true", help="write Graphviz DOT instead of .sg")
    p.add_argument("--no-edge-labels", action="store_true", help="omit trace labels in DOT")
    p.add_argument("--cluster-by", metavar="TYPE", help="group vertices of TYPE in a DOT cluster")


def build_parser():
    parser = argparse.ArgumentParser(prog="softgraph", description="Software architecture graph tool.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a .sg file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("view", help="restrict to artifact and trace types")
    p.add_argument("file")
    p.add_argument("--artifacts", required=True, metavar="LIST")
    p.add_argument("--traces", required=True, metavar="LIST")
    _add_graph_output(p)
    p.set_defaults(func=cmd_view)

    p = sub.add_parser("map", help="relabel and compose edges")
    p.add_argument("file")
    p.add_argument("--preset", choices=["class-diagram"])
    p.add_argument("--relabel", metavar="A=B,...")
    p.add_argument("--compose", metavar="X,Y=Z;...")
    _add_graph_output(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("metric", help="evaluate a metric")
    p.add_argument("file")
    p.add_argument("name", choices=sorted(METRICS))
    p.add_argument("--type", help="artifact type (count_by_type)")
    p.add_argument("--vertex", help="vertex id (coupling) or comma list (reachable_from)")
    p.add_argument("--direction", choices=["out", "in", "both"])
    p.add_argument("--types", metavar="LIST", help="neighbour artifact-type filter (coupling)")
    p.add_argument("--traces", metavar="LIST", help="trace-type filter")
    p.add_argument("--source", help="source artifact type (coverage)")
    p.add_argument("--target", help=f"target artifact type or {ALL_OTHERS} (coverage)")
    p.add_argument("--fail-below", type=float, metavar="X", help="exit 1 when the value is below X")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("query", help="select vertices with a query expression")
    p.add_argument("file")
    p.add_argument("expr")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("export", help="write the graph in canonical form or DOT")
    p.add_argument("file")
    _add_graph_output(p)
    p.set_defaults(func=cmd_export)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except (UsageError, QuerySyntaxError, GraphError) as exc:
        # GraphError here means bad input: unknown types or vertices, malformed .sg
        print(f"error: {exc}", file=err)
        return USAGE_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
