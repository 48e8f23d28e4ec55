"""Line-oriented ``.sg`` interchange format.

::

    artifact-type IDENT          # extend the artifact types
    trace-type IDENT             # extend the trace types
    vertex ID TYPE [TYPE ...]
    edge SRC TRACE DST

``#`` starts a comment.  Declarations may come in any order; edges may name
vertices declared further down.  Every document starts from the default
dictionary and the header lines add to it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import (
    IDENT_RE,
    Edge,
    GraphError,
    SoftwareGraph,
    TypeDictionary,
    Violation,
    validate,
)

KEYWORDS = ("artifact-type", "trace-type", "vertex", "edge")


class GraphSyntaxError(GraphError):
    def __init__(self, message: str, line: int, source: Optional[str] = None):
        self.line = line
        self.source = source
        where = f"line {line} of {source}" if source else f"line {line}"
        super().__init__(f"{message} at {where}")


@dataclass
class GraphDocument:
    """Declarations of one ``.sg`` text, with the line each came from."""

    artifact_types: dict = field(default_factory=dict)  # name -> line
    trace_types: dict = field(default_factory=dict)
    vertices: dict = field(default_factory=dict)        # id -> (types, line)
    edges: list = field(default_factory=list)           # (Edge, line)
    duplicates: list = field(default_factory=list)      # (id, line)
    source: Optional[str] = None

    @property
    def dictionary(self) -> TypeDictionary:
        return TypeDictionary.default().extended(self.artifact_types, self.trace_types)

    def to_graph(self, check: bool = True) -> SoftwareGraph:
        """Build the graph; with ``check`` the first problem raises with its line number."""
        d = self.dictionary
        if not check:
            labels = {v: types for v, (types, _) in self.vertices.items()}
            return SoftwareGraph.from_parts(d, labels, [e for e, _ in self.edges], check=False)
        g = SoftwareGraph(d)
        if self.duplicates:
            vid, line = self.duplicates[0]
            raise GraphSyntaxError(f"duplicate vertex id {vid}", line, self.source)
        for vid, (types, line) in self.vertices.items():
            try:
                g.add_vertex(vid, types)
            except GraphError as exc:
                raise GraphSyntaxError(str(exc), line, self.source) from None
        for e, line in self.edges:
            for end in (e.src, e.dst):
                if end not in g:
                    raise GraphSyntaxError(f"unknown endpoint {end}", line, self.source)
            try:
                g.add_edge(*e)
            except GraphError as exc:
                raise GraphSyntaxError(str(exc), line, self.source) from None
        return g

    def validate(self) -> list:
        """All violations, each message suffixed with its line number."""
        lines = {v: line for v, (_, line) in self.vertices.items()}
        edge_lines = {}
        for e, line in self.edges:
            edge_lines.setdefault(e, line)
        report = [
            Violation("duplicate vertex", f"vertex {vid} already declared at line {line}", (vid,))
            for vid, line in self.duplicates
        ]
        for v in validate(self.to_graph(check=False)):
            subj = v.subject
            line = edge_lines.get(Edge(*subj)) if len(subj) == 3 else lines.get(subj[0])
            report.append(Violation(v.kind, f"{v.message} (line {line})", subj))
        return report


def parse_document(text: str, source: Optional[str] = None) -> GraphDocument:
    """Syntax-level parse; semantic checks are left to :meth:`GraphDocument.to_graph`."""
    doc = GraphDocument(source=source)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        kw, args = fields[0], fields[1:]
        if kw in ("artifact-type", "trace-type"):
            if len(args) != 1:
                raise GraphSyntaxError(f"{kw} takes exactly one identifier", lineno, source)
            if not IDENT_RE.match(args[0]):
                raise GraphSyntaxError(f"malformed type identifier {args[0]!r}", lineno, source)
            target = doc.artifact_types if kw == "artifact-type" else doc.trace_types
            target.setdefault(args[0], lineno)
        elif kw == "vertex":
            if not args:
                raise GraphSyntaxError("vertex needs an id", lineno, source)
            vid, types = args[0], args[1:]
            if vid in doc.vertices:
                doc.duplicates.append((vid, lineno))
                continue
            doc.vertices[vid] = (frozenset(types), lineno)
        elif kw == "edge":
            if len(args) != 3:
                raise GraphSyntaxError("edge takes SRC TRACE DST", lineno, source)
            doc.edges.append((Edge(*args), lineno))
        else:
            raise GraphSyntaxError(f"unknown declaration {kw!r}, expected one of {', '.join(KEYWORDS)}", lineno, source)
    return doc


def parse_graph_text(text: str, source: Optional[str] = None) -> SoftwareGraph:
    return parse_document(text, source).to_graph(check=True)


def load(path) -> SoftwareGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read(), source=str(path))


def serialize_graph(g: SoftwareGraph) -> str:
    """Canonical text: header extensions, then vertices and edges, all sorted.

    Types the default dictionary lacks become header lines.  A dictionary that
    drops default types (a narrowed view) cannot be expressed, so only the
    vertices, labels and edges of such a graph survive a round trip.
    """
    default = TypeDictionary.default()
    out = [f"# software graph: {len(g.vertices)} vertices, {len(g.edges)} edges"]
    out += [f"artifact-type {a}" for a in sorted(g.dictionary.artifact_types - default.artifact_types)]
    out += [f"trace-type {t}" for t in sorted(g.dictionary.trace_types - default.trace_types)]
    labels = g.label_map()
    out += [f"vertex {v} {' '.join(sorted(labels[v]))}" for v in sorted(labels)]
    out += [f"edge {e.src} {e.trace} {e.dst}" for e in sorted(g.edges)]
    return "\n".join(out) + "\n"


def save(g: SoftwareGraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_graph(g))
